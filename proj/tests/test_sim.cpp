#include <doctest.h>

#include <set>

#include "perihack/sim.hpp"
#include "support.hpp"

using namespace perihack;
using namespace perihack::testing;

namespace {

const PolicyDescriptor kGreedy{PolicyId::kGreedyRed};
const PolicyDescriptor kRandom{PolicyId::kRandom};
const PolicyDescriptor kBudget{PolicyId::kBudgetBlue};

std::set<std::string> keys(const Json& j) {
  std::set<std::string> out;
  for (const auto& [k, _] : j.items()) out.insert(k);
  return out;
}

}  // namespace

TEST_CASE("same seed, same record") {
  const auto a = run_match(shared_default(), GameConfig{}, kGreedy, kBudget, 42);
  const auto b = run_match(shared_default(), GameConfig{}, kGreedy, kBudget, 42);
  CHECK(a == b);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.seed == 42);
  const auto c = run_match(shared_default(), GameConfig{}, kGreedy, kBudget, 43);
  CHECK(a.events != c.events);
}

TEST_CASE("zero rounds is an immediate blue win") {
  GameConfig c;
  c.rounds = 0;
  const auto r = run_match(shared_default(), c, kGreedy, kBudget, 1);
  CHECK(r.winner == Team::kBlue);
  CHECK(r.rounds_played == 0);
  CHECK(r.declared_chain.empty());
}

TEST_CASE("scripted SQLi then declaration is a one-step red win") {
  // Red always goes for the database and plays SQLi the moment it holds one.
  DecisionFn red = [](const PlayerView& v, Rng&) -> Action {
    if (v.phase == Phase::kRedSetup) return ChooseWinCondition{"database_breach"};
    for (const auto& a : v.legal_actions) {
      if (std::holds_alternative<DeclareWin>(a)) return a;
    }
    for (const auto& a : v.legal_actions) {
      if (a == Action{PlayAttack{"sqli", "database"}}) return a;
    }
    return Pass{};
  };
  DecisionFn blue = [](const PlayerView&, Rng&) -> Action { return BlueSetup{}; };

  // Find a seed whose opening hand holds SQLi and whose first roll lands it.
  int found = 0;
  for (std::uint64_t seed = 0; seed < 400 && found < 5; ++seed) {
    const auto r = run_match(shared_default(), GameConfig{}, red, blue, seed);
    const auto first_attack = std::find_if(r.events.begin(), r.events.end(),
                                           [](const Event& e) { return e.kind == "attack_resolved"; });
    if (first_attack == r.events.end() || first_attack->round != 1 ||
        first_attack->data.at("success") != true) {
      continue;
    }
    ++found;
    CHECK(r.winner == Team::kRed);
    CHECK(r.rounds_played == 1);
    CHECK(r.chosen_win_condition == "database_breach");
    REQUIRE(r.declared_chain.size() == 1);
    CHECK(r.declared_chain[0] == SuccessRecord{"sqli", "database", 1});
    CHECK(r.events.back().kind == "game_finished");
    CHECK(r.events.back().data.at("condition") == "database_breach");
    CHECK(replay_match(shared_default(), GameConfig{}, r) == Team::kRed);
  }
  CHECK(found == 5);
}

TEST_CASE("a policy that breaks the rules aborts the match with its seed") {
  DecisionFn red = [](const PlayerView& v, Rng&) -> Action {
    if (v.phase == Phase::kRedSetup) return ChooseWinCondition{"spy"};
    return PlayAttack{"zero_day", "parking"};
  };
  DecisionFn blue = [](const PlayerView&, Rng&) -> Action { return BlueSetup{}; };
  try {
    run_match(shared_default(), GameConfig{}, red, blue, 31);
    FAIL("match finished");
  } catch (const MatchAborted& e) {
    CHECK(e.seed() == 31);
    CHECK(std::string(e.what()).find("zero_day") != std::string::npos);
  }
  CHECK_THROWS_AS(run_match(shared_default(), GameConfig{}, kBudget, kBudget, 1), std::invalid_argument);
  CHECK_THROWS_AS(run_batch(5, shared_default(), GameConfig{}, kGreedy, kGreedy, 1), std::invalid_argument);
}

TEST_CASE("replaying records reproduces winner and digest") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    const auto& red = seed % 2 ? kGreedy : kRandom;
    const auto& blue = seed % 3 ? kBudget : kRandom;
    GameConfig c;
    c.blue_midgame_purchases = seed % 5 == 0;
    const auto r = run_match(shared_default(), c, red, blue, seed);
    CHECK(replay_match(shared_default(), c, r) == r.winner);
  }
  auto r = run_match(shared_default(), GameConfig{}, kGreedy, kBudget, 9);
  r.final_digest ^= 1;
  CHECK_THROWS_AS(replay_match(shared_default(), GameConfig{}, r), RuleError);
}

TEST_CASE("a batch of one matches its record") {
  const auto record = run_match(shared_default(), GameConfig{}, kGreedy, kBudget, 500);
  const auto report = run_batch(1, shared_default(), GameConfig{}, kGreedy, kBudget, 500);
  CHECK(report.games == 1);
  CHECK(report.red_wins == (record.winner == Team::kRed ? 1 : 0));
  REQUIRE(report.per_condition.size() == 1);
  CHECK(report.per_condition.begin()->first == record.chosen_win_condition);
  std::int64_t plays = 0;
  for (const auto& [_, n] : report.attack_usage) plays += n;
  CHECK(plays == std::count_if(record.events.begin(), record.events.end(),
                               [](const Event& e) { return e.kind == "attack_resolved"; }));
  std::int64_t bought = 0;
  for (const auto& [_, n] : report.defense_purchases) bought += n;
  CHECK(bought == static_cast<std::int64_t>(record.defenses_bought.size()));
}

TEST_CASE("batch reports do not depend on thread count") {
  const auto one = run_batch(300, shared_default(), GameConfig{}, kGreedy, kBudget, 11, 1);
  const auto four = run_batch(300, shared_default(), GameConfig{}, kGreedy, kBudget, 11, 4);
  const auto seven = run_batch(300, shared_default(), GameConfig{}, kGreedy, kBudget, 11, 7);
  CHECK(one == four);
  CHECK(one == seven);
  CHECK(to_json(one).dump() == to_json(seven).dump());
}

TEST_CASE("merging partial reports is order independent") {
  BalanceReport a, b, c;
  for (std::uint64_t s = 0; s < 30; ++s) {
    auto r = run_match(shared_default(), GameConfig{}, kRandom, kRandom, s);
    (s % 3 == 0 ? a : s % 3 == 1 ? b : c).add(r);
  }
  BalanceReport x = a, y = c;
  x.merge(b);
  x.merge(c);
  y.merge(a);
  y.merge(b);
  CHECK(x == y);
}

TEST_CASE("report invariants and schema") {
  const auto r = run_batch(200, shared_default(), GameConfig{}, kGreedy, kBudget, 1000);
  int sum = 0, wins = 0;
  for (const auto& [_, s] : r.per_condition) {
    sum += s.games;
    wins += s.red_wins;
    CHECK(s.red_win_rate() >= 0.0);
    CHECK(s.red_win_rate() <= 1.0);
  }
  CHECK(sum == r.games);
  CHECK(wins == r.red_wins);
  CHECK(r.red_win_rate() >= 0.0);
  CHECK(r.red_win_rate() <= 1.0);
  CHECK(r.catalog_digest == hex_digest(catalog_digest(default_catalog())));

  // Another base seed changes the games but not the report's shape.
  const auto other = run_batch(200, shared_default(), GameConfig{}, kGreedy, kBudget, 77);
  CHECK_FALSE(other == r);
  CHECK(keys(to_json(other)) == keys(to_json(r)));

  const std::string text = format_text(r);
  CHECK(text.find("red win rate") != std::string::npos);
  CHECK(attack_usage_csv(r).rfind("attack,plays\n", 0) == 0);
  CHECK(defense_purchases_csv(r).rfind("defense,purchases\n", 0) == 0);
}

TEST_CASE("reachability and probability tables render") {
  const auto text = format_reachability(default_catalog(), reachability_check(default_catalog()));
  CHECK(text.find("tailgating@office -> rogue_ap@office -> mitm@firewall -> watering_hole@firewall") !=
        std::string::npos);
  CHECK(text.find("sqli@database") != std::string::npos);
  const auto table = format_probability_table(3);
  CHECK(table.find("0.50") != std::string::npos);
  CHECK(table.find("0.55") != std::string::npos);
}
