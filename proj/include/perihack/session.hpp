#pragma once

#include <chrono>
#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "perihack/agents.hpp"
#include "perihack/rules.hpp"

namespace perihack {

// Failure of a session request. `code` is machine-readable and `status` is
// the HTTP status it maps to.
class SessionError : public std::runtime_error {
 public:
  SessionError(std::string code, int status, const std::string& message)
      : std::runtime_error(message), code_(std::move(code)), status_(status) {}
  const std::string& code() const { return code_; }
  int status() const { return status_; }

 private:
  std::string code_;
  int status_;
};

// Who sits in a seat: a human holding a token, or a machine policy.
struct Seat {
  bool human = true;
  PolicyDescriptor policy;

  bool operator==(const Seat&) const = default;
};

// "human" or a policy id. Throws SessionError(bad_request).
Seat parse_seat(std::string_view spec, Team team);

struct SessionSpec {
  std::shared_ptr<const ScenarioCatalog> catalog;
  GameConfig config;  // config.seed is used as given
  Seat red;
  Seat blue;
};

struct CreatedSession {
  std::string session_id;
  std::optional<std::string> red_token;
  std::optional<std::string> blue_token;
};

Json to_json(const CreatedSession& created);

struct EventPage {
  std::vector<Event> events;  // redacted for the requesting seat
  std::uint64_t last_seq = 0;
};

// In-memory game sessions. Every mutation goes through the engine; machine
// seats move inside the same call that hands them the turn.
//
// Thread-safe. Each session serializes writers behind its own lock; views
// and event reads share it.
class SessionManager {
 public:
  explicit SessionManager(std::shared_ptr<const ScenarioCatalog> catalog,
                          std::optional<std::filesystem::path> snapshot_dir = std::nullopt);
  ~SessionManager();

  // Body of POST /sessions: {catalog?: "default" | {...}, config?: {...},
  // seats: {red: "human" | policy, blue: ...}}. A missing seed is drawn at
  // random.
  CreatedSession create(const Json& request);
  CreatedSession create(SessionSpec spec);

  PlayerView view(const std::string& session_id, const std::string& token) const;

  // Applies `action` for the token's team, then lets machine seats reply.
  // Returns every event from this call, redacted for the submitter.
  std::vector<Event> submit(const std::string& session_id, const std::string& token,
                            const Action& action);

  // Events with seq > since. Blocks up to `wait` for new ones when none are
  // pending.
  EventPage events_since(const std::string& session_id, const std::string& token,
                         std::uint64_t since,
                         std::chrono::milliseconds wait = std::chrono::milliseconds{0}) const;

  // Unredacted transcript, as written to the snapshot directory.
  Json transcript(const std::string& session_id) const;

  const ScenarioCatalog& catalog() const { return *catalog_; }
  std::size_t size() const;

 private:
  struct Session;

  std::shared_ptr<Session> find(const std::string& session_id) const;
  static Team authorize(const Session& s, const std::string& token);
  static std::vector<Event> advance(Session& s);
  void snapshot(const Session& s) const;

  std::shared_ptr<const ScenarioCatalog> catalog_;
  std::optional<std::filesystem::path> snapshot_dir_;
  mutable std::shared_mutex mu_;
  std::unordered_map<std::string, std::shared_ptr<Session>> sessions_;
};

// Rebuilds the final state of a saved transcript through the engine. The
// transcript carries its own catalog.
GameState replay_transcript(const Json& transcript);

}  // namespace perihack
