#include "perihack/session.hpp"

#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <random>

namespace perihack {

namespace {

SessionError bad_request(const std::string& msg) { return {"bad_request", 400, msg}; }

std::string random_hex(int words) {
  static std::mutex mu;
  static std::random_device device;
  std::lock_guard lock(mu);
  std::string out;
  for (int i = 0; i < words; ++i) {
    char buf[9];
    std::snprintf(buf, sizeof buf, "%08x", static_cast<unsigned>(device()));
    out += buf;
  }
  return out;
}

std::uint64_t random_seed() {
  const std::string hex = random_hex(2);
  return std::stoull(hex, nullptr, 16);
}

std::string seat_name(const Seat& s) {
  return s.human ? "human" : std::string(to_string(s.policy.id));
}

SessionError engine_error(const RuleError& e) {
  switch (e.code()) {
    case RuleErrorCode::kMalformedAction: return {"malformed_action", 400, e.what()};
    case RuleErrorCode::kPhaseMismatch: return {"phase_mismatch", 409, e.what()};
    case RuleErrorCode::kIllegalAction: return {"illegal_action", 422, e.what()};
    default: return {std::string(to_string(e.code())), 422, e.what()};
  }
}

}  // namespace

Seat parse_seat(std::string_view spec, Team team) {
  if (spec == "human") return Seat{};
  auto policy = parse_policy(spec);
  if (!policy) throw bad_request("unknown policy '" + std::string(spec) + "'");
  if (!plays_team(policy->id, team)) {
    throw bad_request("policy '" + std::string(spec) + "' cannot play " + std::string(to_string(team)));
  }
  return Seat{false, *policy};
}

Json to_json(const CreatedSession& c) {
  Json seats = Json::object();
  if (c.red_token) seats["red_token"] = *c.red_token;
  if (c.blue_token) seats["blue_token"] = *c.blue_token;
  return {{"session_id", c.session_id}, {"seats", std::move(seats)}};
}

struct SessionManager::Session {
  std::string id;
  mutable std::shared_mutex mu;
  mutable std::condition_variable_any changed;
  GameState state;
  Seat red;
  Seat blue;
  std::string red_token;
  std::string blue_token;
  Rng red_rng;
  Rng blue_rng;

  const Seat& seat(Team t) const { return t == Team::kRed ? red : blue; }
  std::uint64_t last_seq() const { return state.event_log.empty() ? 0 : state.event_log.back().seq; }
};

SessionManager::SessionManager(std::shared_ptr<const ScenarioCatalog> catalog,
                               std::optional<std::filesystem::path> snapshot_dir)
    : catalog_(std::move(catalog)), snapshot_dir_(std::move(snapshot_dir)) {
  if (snapshot_dir_) std::filesystem::create_directories(*snapshot_dir_);
}

SessionManager::~SessionManager() = default;

CreatedSession SessionManager::create(const Json& request) {
  if (!request.is_object()) throw bad_request("request body must be a JSON object");
  for (const auto& [key, _] : request.items()) {
    if (key != "catalog" && key != "config" && key != "seats") {
      throw bad_request("unknown field '" + key + "'");
    }
  }
  SessionSpec spec;
  spec.catalog = catalog_;
  if (auto it = request.find("catalog"); it != request.end()) {
    if (it->is_string()) {
      if (*it != "default") throw bad_request("unknown catalog '" + it->get<std::string>() + "'");
    } else if (it->is_object()) {
      try {
        spec.catalog = std::make_shared<const ScenarioCatalog>(load_catalog(*it));
      } catch (const CatalogError& e) {
        throw SessionError("invalid_catalog", 400, std::string(e.what()) + " at " + e.path());
      }
    } else {
      throw bad_request("'catalog' must be \"default\" or a catalog document");
    }
  }
  const Json config = request.value("config", Json::object());
  try {
    spec.config = config_from_json(config);
  } catch (const std::exception& e) {
    throw SessionError("invalid_config", 400, e.what());
  }
  if (!config.contains("seed")) spec.config.seed = random_seed();

  const auto seats = request.find("seats");
  if (seats == request.end() || !seats->is_object()) {
    throw bad_request("'seats' must name a red and a blue seat");
  }
  for (const auto& [key, _] : seats->items()) {
    if (key != "red" && key != "blue") throw bad_request("unknown seat '" + key + "'");
  }
  auto seat_of = [&](const char* key, Team team) {
    auto it = seats->find(key);
    if (it == seats->end() || !it->is_string()) {
      throw bad_request(std::string("seat '") + key + "' must be \"human\" or a policy id");
    }
    return parse_seat(it->get<std::string>(), team);
  };
  spec.red = seat_of("red", Team::kRed);
  spec.blue = seat_of("blue", Team::kBlue);
  return create(std::move(spec));
}

CreatedSession SessionManager::create(SessionSpec spec) {
  if (!spec.catalog) spec.catalog = catalog_;
  if (!spec.red.human && !plays_team(spec.red.policy.id, Team::kRed)) {
    throw bad_request("red seat policy cannot play red");
  }
  if (!spec.blue.human && !plays_team(spec.blue.policy.id, Team::kBlue)) {
    throw bad_request("blue seat policy cannot play blue");
  }
  auto s = std::make_shared<Session>();
  try {
    s->state = new_game(spec.catalog, spec.config);
  } catch (const RuleError& e) {
    throw SessionError(e.code() == RuleErrorCode::kInvalidConfig ? "invalid_config" : "invalid_catalog",
                       400, e.what());
  }
  s->id = random_hex(4);
  s->red = spec.red;
  s->blue = spec.blue;
  if (s->red.human) s->red_token = random_hex(4);
  if (s->blue.human) s->blue_token = random_hex(4);
  s->red_rng = derived_rng(spec.config.seed, kRedPolicyStream);
  s->blue_rng = derived_rng(spec.config.seed, kBluePolicyStream);
  advance(*s);

  CreatedSession out{s->id, std::nullopt, std::nullopt};
  if (s->red.human) out.red_token = s->red_token;
  if (s->blue.human) out.blue_token = s->blue_token;
  {
    std::unique_lock lock(mu_);
    sessions_.emplace(s->id, s);
  }
  snapshot(*s);
  return out;
}

std::shared_ptr<SessionManager::Session> SessionManager::find(const std::string& id) const {
  std::shared_lock lock(mu_);
  auto it = sessions_.find(id);
  if (it == sessions_.end()) throw SessionError("not_found", 404, "no session '" + id + "'");
  return it->second;
}

Team SessionManager::authorize(const Session& s, const std::string& token) {
  if (!token.empty()) {
    if (token == s.red_token) return Team::kRed;
    if (token == s.blue_token) return Team::kBlue;
  }
  throw SessionError("forbidden", 403, "seat token not recognised for this session");
}

// Lets machine seats act, and deals the opening hand, until a human has the
// move or the game ends.
std::vector<Event> SessionManager::advance(Session& s) {
  std::vector<Event> out;
  while (s.state.phase != Phase::kFinished) {
    if (needs_deal(s.state)) {
      auto dealt = red_setup(s.state);
      out.insert(out.end(), dealt.begin(), dealt.end());
      continue;
    }
    const Team team = *to_move(s.state);
    const Seat& seat = s.seat(team);
    if (seat.human) break;
    Rng& rng = team == Team::kRed ? s.red_rng : s.blue_rng;
    const Action action = decide(player_view(s.state, team, false), seat.policy, rng);
    try {
      auto events = apply_action(s.state, action);
      out.insert(out.end(), events.begin(), events.end());
    } catch (const RuleError& e) {
      throw SessionError("internal", 500, std::string(to_string(team)) + " policy was refused: " + e.what());
    }
  }
  return out;
}

PlayerView SessionManager::view(const std::string& id, const std::string& token) const {
  auto s = find(id);
  std::shared_lock lock(s->mu);
  return player_view(s->state, authorize(*s, token));
}

std::vector<Event> SessionManager::submit(const std::string& id, const std::string& token,
                                          const Action& action) {
  auto s = find(id);
  std::vector<Event> out;
  Team team;
  {
    std::unique_lock lock(s->mu);
    team = authorize(*s, token);
    if (s->state.phase == Phase::kFinished) {
      throw SessionError("game_over", 409, "the game is over");
    }
    if (to_move(s->state) != team) {
      throw SessionError("wrong_turn", 409, "it is not " + std::string(to_string(team)) + "'s move");
    }
    try {
      out = apply_action(s->state, action);
    } catch (const RuleError& e) {
      throw engine_error(e);
    }
    auto replies = advance(*s);
    out.insert(out.end(), replies.begin(), replies.end());
    snapshot(*s);
  }
  s->changed.notify_all();
  for (auto& e : out) e = redact(e, team);
  return out;
}

EventPage SessionManager::events_since(const std::string& id, const std::string& token,
                                       std::uint64_t since, std::chrono::milliseconds wait) const {
  auto s = find(id);
  std::shared_lock lock(s->mu);
  const Team team = authorize(*s, token);
  if (wait.count() > 0) {
    s->changed.wait_for(lock, wait, [&] {
      return s->last_seq() > since || s->state.phase == Phase::kFinished;
    });
  }
  EventPage page;
  for (const auto& e : s->state.event_log) {
    if (e.seq > since) page.events.push_back(redact(e, team));
  }
  page.last_seq = s->last_seq();
  return page;
}

Json SessionManager::transcript(const std::string& id) const {
  auto s = find(id);
  std::shared_lock lock(s->mu);
  Json events = Json::array();
  for (const auto& e : s->state.event_log) events.push_back(to_json(e));
  return {{"session_id", s->id},
          {"seats", {{"red", seat_name(s->red)}, {"blue", seat_name(s->blue)}}},
          {"config", to_json(s->state.config)},
          {"catalog", to_json(*s->state.catalog)},
          {"events", std::move(events)}};
}

std::size_t SessionManager::size() const {
  std::shared_lock lock(mu_);
  return sessions_.size();
}

// Called with the session lock held, so the snapshot matches the state.
void SessionManager::snapshot(const Session& s) const {
  if (!snapshot_dir_) return;
  Json events = Json::array();
  for (const auto& e : s.state.event_log) events.push_back(to_json(e));
  const Json doc{{"session_id", s.id},
                 {"seats", {{"red", seat_name(s.red)}, {"blue", seat_name(s.blue)}}},
                 {"config", to_json(s.state.config)},
                 {"catalog", to_json(*s.state.catalog)},
                 {"events", std::move(events)}};
  const auto path = *snapshot_dir_ / (s.id + ".json");
  const auto tmp = *snapshot_dir_ / (s.id + ".json.tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    out << doc.dump(2) << '\n';
  }
  std::filesystem::rename(tmp, path);
}

GameState replay_transcript(const Json& transcript) {
  auto catalog = std::make_shared<const ScenarioCatalog>(load_catalog(transcript.at("catalog")));
  const GameConfig config = config_from_json(transcript.at("config"));
  std::vector<Event> events;
  for (const auto& e : transcript.at("events")) events.push_back(event_from_json(e));
  return replay_events(std::move(catalog), config, events);
}

}  // namespace perihack
