#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "perihack/agents.hpp"
#include "perihack/chains.hpp"
#include "perihack/rules.hpp"

namespace perihack {

struct MatchRecord {
  std::uint64_t seed = 0;
  Team winner = Team::kBlue;
  int rounds_played = 0;
  std::string chosen_win_condition;
  std::vector<SuccessRecord> declared_chain;
  std::vector<CardId> defenses_bought;
  std::vector<Event> events;
  std::uint64_t final_digest = 0;

  bool operator==(const MatchRecord&) const = default;
};

Json to_json(const MatchRecord& record);

// A policy produced an action the engine refused.
class MatchAborted : public std::runtime_error {
 public:
  MatchAborted(std::uint64_t seed, const std::string& message)
      : std::runtime_error("match with seed " + std::to_string(seed) + " aborted: " + message),
        seed_(seed) {}
  std::uint64_t seed() const { return seed_; }

 private:
  std::uint64_t seed_;
};

// Plays one full game. `seed` overrides config.seed; policy decisions draw
// from streams derived from the same seed.
MatchRecord run_match(std::shared_ptr<const ScenarioCatalog> catalog, GameConfig config,
                      const PolicyDescriptor& red, const PolicyDescriptor& blue,
                      std::uint64_t seed);

// Same, with arbitrary decision functions in place of named policies.
using DecisionFn = std::function<Action(const PlayerView&, Rng&)>;
MatchRecord run_match(std::shared_ptr<const ScenarioCatalog> catalog, GameConfig config,
                      const DecisionFn& red, const DecisionFn& blue, std::uint64_t seed);

// Re-applies a record's event log. Returns the reproduced winner after
// checking that the final state digest matches.
Team replay_match(std::shared_ptr<const ScenarioCatalog> catalog, GameConfig config,
                  const MatchRecord& record);

struct ConditionStats {
  int games = 0;
  int red_wins = 0;
  double red_win_rate() const { return games ? static_cast<double>(red_wins) / games : 0.0; }
  bool operator==(const ConditionStats&) const = default;
};

struct BalanceReport {
  int games = 0;
  int red_wins = 0;
  std::map<std::string, ConditionStats> per_condition;
  std::int64_t red_victory_rounds = 0;  // summed over red wins
  std::map<CardId, std::int64_t> attack_usage;
  std::map<CardId, std::int64_t> defense_purchases;
  GameConfig config;
  std::string red_policy;
  std::string blue_policy;
  std::uint64_t base_seed = 0;
  std::string catalog_digest;

  double red_win_rate() const { return games ? static_cast<double>(red_wins) / games : 0.0; }
  double mean_rounds_to_red_victory() const {
    return red_wins ? static_cast<double>(red_victory_rounds) / red_wins : 0.0;
  }
  void add(const MatchRecord& record);
  void merge(const BalanceReport& other);
  bool operator==(const BalanceReport&) const = default;
};

// Runs seeds base_seed .. base_seed + n - 1. The report does not depend on
// `threads` (0 picks the hardware concurrency).
BalanceReport run_batch(int n, std::shared_ptr<const ScenarioCatalog> catalog,
                        const GameConfig& config, const PolicyDescriptor& red,
                        const PolicyDescriptor& blue, std::uint64_t base_seed,
                        unsigned threads = 0);

Json to_json(const BalanceReport& report);
std::string format_text(const BalanceReport& report);
std::string attack_usage_csv(const BalanceReport& report);
std::string defense_purchases_csv(const BalanceReport& report);

std::string format_reachability(const ScenarioCatalog& catalog,
                                const std::vector<ReachabilityResult>& results);
std::string format_probability_table(int max_bonus);

}  // namespace perihack
