#include "perihack/sim.hpp"

#include <algorithm>
#include <exception>
#include <optional>
#include <stdexcept>
#include <thread>

namespace perihack {

namespace {

// Generous bound on decisions per game; a policy that never ends a round
// would otherwise spin forever.
constexpr int kMaxDecisions = 100'000;

}  // namespace

MatchRecord run_match(std::shared_ptr<const ScenarioCatalog> catalog, GameConfig config,
                      const PolicyDescriptor& red, const PolicyDescriptor& blue,
                      std::uint64_t seed) {
  if (!plays_team(red.id, Team::kRed)) {
    throw std::invalid_argument(std::string(to_string(red.id)) + " cannot play red");
  }
  if (!plays_team(blue.id, Team::kBlue)) {
    throw std::invalid_argument(std::string(to_string(blue.id)) + " cannot play blue");
  }
  return run_match(
      std::move(catalog), config,
      [&red](const PlayerView& v, Rng& rng) { return decide(v, red, rng); },
      [&blue](const PlayerView& v, Rng& rng) { return decide(v, blue, rng); }, seed);
}

MatchRecord run_match(std::shared_ptr<const ScenarioCatalog> catalog, GameConfig config,
                      const DecisionFn& red, const DecisionFn& blue, std::uint64_t seed) {
  config.seed = seed;
  GameState state = new_game(std::move(catalog), config);
  Rng red_rng = derived_rng(seed, kRedPolicyStream);
  Rng blue_rng = derived_rng(seed, kBluePolicyStream);

  for (int step = 0; state.phase != Phase::kFinished; ++step) {
    if (step > kMaxDecisions) throw MatchAborted(seed, "game did not terminate");
    if (needs_deal(state)) {
      try {
        red_setup(state);
      } catch (const RuleError& e) {
        throw MatchAborted(seed, e.what());
      }
      continue;
    }
    const Team team = *to_move(state);
    PlayerView view = player_view(state, team, false);
    Action action = team == Team::kRed ? red(view, red_rng) : blue(view, blue_rng);
    try {
      apply_action(state, action);
    } catch (const RuleError& e) {
      throw MatchAborted(seed, std::string(to_string(team)) + " policy chose '" +
                                   describe(action) + "': " + e.what());
    }
  }

  MatchRecord record;
  record.seed = seed;
  record.winner = *state.winner;
  record.rounds_played = std::min(state.round_index, state.config.rounds);
  record.chosen_win_condition = state.chosen_win_condition.value_or("");
  record.declared_chain = state.success_history;
  record.defenses_bought = state.gc_placements;
  for (const auto& [loc, placed] : state.ic_placements) {
    for (const auto& p : placed) record.defenses_bought.push_back(p.card);
  }
  record.final_digest = state_digest(state);
  record.events = std::move(state.event_log);
  return record;
}

Team replay_match(std::shared_ptr<const ScenarioCatalog> catalog, GameConfig config,
                  const MatchRecord& record) {
  config.seed = record.seed;
  GameState state = replay_events(std::move(catalog), config, record.events);
  if (state_digest(state) != record.final_digest) {
    throw RuleError(RuleErrorCode::kReplayMismatch, "final state digest differs");
  }
  if (!state.winner) throw RuleError(RuleErrorCode::kReplayMismatch, "replayed game is unfinished");
  return *state.winner;
}

void BalanceReport::add(const MatchRecord& r) {
  ++games;
  auto& cond = per_condition[r.chosen_win_condition];
  ++cond.games;
  if (r.winner == Team::kRed) {
    ++red_wins;
    ++cond.red_wins;
    red_victory_rounds += r.rounds_played;
  }
  for (const auto& e : r.events) {
    if (e.kind == "attack_resolved") ++attack_usage[e.data.at("card").get<std::string>()];
  }
  for (const auto& d : r.defenses_bought) ++defense_purchases[d];
}

void BalanceReport::merge(const BalanceReport& o) {
  games += o.games;
  red_wins += o.red_wins;
  red_victory_rounds += o.red_victory_rounds;
  for (const auto& [k, v] : o.per_condition) {
    per_condition[k].games += v.games;
    per_condition[k].red_wins += v.red_wins;
  }
  for (const auto& [k, v] : o.attack_usage) attack_usage[k] += v;
  for (const auto& [k, v] : o.defense_purchases) defense_purchases[k] += v;
}

BalanceReport run_batch(int n, std::shared_ptr<const ScenarioCatalog> catalog,
                        const GameConfig& config, const PolicyDescriptor& red,
                        const PolicyDescriptor& blue, std::uint64_t base_seed,
                        unsigned threads) {
  if (n < 1) throw std::invalid_argument("a batch needs at least one game");
  if (!plays_team(red.id, Team::kRed) || !plays_team(blue.id, Team::kBlue)) {
    throw std::invalid_argument("policy cannot play the requested side");
  }
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(n));

  std::vector<BalanceReport> partial(threads);
  std::vector<std::optional<MatchAborted>> failures(threads);
  auto work = [&](unsigned t) {
    for (int i = static_cast<int>(t); i < n; i += static_cast<int>(threads)) {
      try {
        partial[t].add(run_match(catalog, config, red, blue, base_seed + static_cast<std::uint64_t>(i)));
      } catch (const MatchAborted& e) {
        failures[t] = e;
        return;
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(work, t);
    for (auto& th : pool) th.join();
  }

  // Report the lowest failing seed so the error does not depend on scheduling.
  const MatchAborted* first = nullptr;
  for (const auto& f : failures) {
    if (f && (!first || f->seed() < first->seed())) first = &*f;
  }
  if (first) throw *first;

  BalanceReport report;
  for (const auto& p : partial) report.merge(p);
  report.config = config;
  report.config.seed = base_seed;
  report.red_policy = std::string(to_string(red.id));
  report.blue_policy = std::string(to_string(blue.id));
  report.base_seed = base_seed;
  report.catalog_digest = hex_digest(catalog_digest(*catalog));
  return report;
}

}  // namespace perihack
