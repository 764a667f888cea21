#pragma once

// Shared fixtures and independent oracles for the test binaries. The oracles
// here deliberately avoid ChainPlanner and attack_success_probability so they
// can check them.

#include <algorithm>
#include <cstdint>
#include <deque>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_set>
#include <utility>
#include <vector>

#include "perihack/catalog.hpp"
#include "perihack/rules.hpp"

namespace perihack::testing {

inline std::shared_ptr<const ScenarioCatalog> shared_default() {
  static const auto catalog = std::make_shared<const ScenarioCatalog>(default_catalog());
  return catalog;
}

inline std::shared_ptr<const ScenarioCatalog> share(ScenarioCatalog c) {
  return std::make_shared<const ScenarioCatalog>(std::move(c));
}

// Die faces (out of 20) that satisfy roll + attack > 10 + defense (+1 on a
// repeat), by direct enumeration.
inline int winning_faces(int attack_bonus, int defense_bonus, bool repeat) {
  int n = 0;
  for (int roll = 1; roll <= 20; ++roll) {
    if (roll + attack_bonus > 10 + defense_bonus + (repeat ? 1 : 0)) ++n;
  }
  return n;
}

// Breadth-first search over sets of achieved (attack, location) successes.
// Every play of every attack card on every target is tried; the answer is the
// fewest plays after which some satisfier of `condition` holds, or -1.
inline int brute_force_chain_length(const ScenarioCatalog& cat, const WinConditionSpec& condition) {
  struct Pair {
    const AttackCardSpec* card;
    LocationId location;
  };
  std::vector<Pair> pairs;
  for (const auto& a : cat.attack_cards) {
    if (a.kind != AttackKind::kAttack || a.copies < 1) continue;
    for (const auto& t : a.targets) {
      if (cat.find_location(t)) pairs.push_back({&a, t});
    }
  }
  if (pairs.size() > 64) throw std::runtime_error("oracle supports at most 64 pairs");

  auto prereq_ok = [&](const Pair& p, std::uint64_t set) {
    if (!p.card->prerequisite) return true;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (!(set >> i & 1)) continue;
      const auto& any = p.card->prerequisite->any_of;
      if (std::find(any.begin(), any.end(), pairs[i].card->id) == any.end()) continue;
      if (!p.card->prerequisite->same_location || pairs[i].location == p.location) return true;
    }
    return false;
  };
  auto satisfied = [&](std::uint64_t set) {
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if ((set >> i & 1) && condition.satisfied_by(pairs[i].card->id, pairs[i].location)) return true;
    }
    return false;
  };

  std::deque<std::pair<std::uint64_t, int>> queue{{0, 0}};
  std::unordered_set<std::uint64_t> seen{0};
  while (!queue.empty()) {
    auto [set, depth] = queue.front();
    queue.pop_front();
    if (satisfied(set)) return depth;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (set >> i & 1) continue;
      if (!prereq_ok(pairs[i], set)) continue;
      std::uint64_t next = set | (std::uint64_t{1} << i);
      if (seen.insert(next).second) queue.push_back({next, depth + 1});
    }
  }
  return -1;
}

// Random small catalogs. Prerequisites only point at earlier cards, so the
// result is acyclic; reachability is not guaranteed.
inline ScenarioCatalog random_catalog(Rng& rng, int max_cards = 20) {
  auto pick = [&](int lo, int hi) { return lo + static_cast<int>(uniform_below(rng, hi - lo + 1)); };
  ScenarioCatalog cat;
  cat.name = "random";
  cat.gc_slots = pick(0, 3);
  const int n_loc = pick(1, 3);
  for (int i = 0; i < n_loc; ++i) {
    cat.locations.push_back({"l" + std::to_string(i), "Location " + std::to_string(i),
                             i % 2 ? LocationKind::kNetworkNode : LocationKind::kPhysicalPremise,
                             pick(0, 2)});
  }
  const int n_cards = pick(1, max_cards);
  std::vector<CardId> attacks;
  for (int i = 0; i < n_cards; ++i) {
    AttackCardSpec a;
    a.id = "a" + std::to_string(i);
    a.name = "Attack " + std::to_string(i);
    a.copies = pick(1, 3);
    if (pick(0, 9) == 0) {
      a.kind = AttackKind::kSwap;
      cat.attack_cards.push_back(a);
      continue;
    }
    a.attack_bonus = pick(-2, 5);
    std::vector<LocationId> locs;
    for (const auto& l : cat.locations) locs.push_back(l.id);
    shuffle(locs, rng);
    locs.resize(static_cast<std::size_t>(pick(1, std::min(2, n_loc))));
    a.targets = locs;
    if (!attacks.empty() && pick(0, 1) == 1) {
      Prerequisite p;
      const int k = pick(1, std::min<int>(2, static_cast<int>(attacks.size())));
      for (int j = 0; j < k; ++j) {
        const auto& id = attacks[uniform_below(rng, attacks.size())];
        if (std::find(p.any_of.begin(), p.any_of.end(), id) == p.any_of.end()) p.any_of.push_back(id);
      }
      p.same_location = pick(0, 2) == 0;
      a.prerequisite = p;
    }
    attacks.push_back(a.id);
    cat.attack_cards.push_back(a);
  }
  for (int i = 0; i < pick(0, 3); ++i) {
    DefenseCardSpec d;
    d.id = "d" + std::to_string(i);
    d.name = "Defense " + std::to_string(i);
    d.deck = pick(0, 1) ? DefenseDeck::kGlobal : DefenseDeck::kIndividual;
    d.copies = pick(1, 2);
    d.cost = pick(0, 3);
    if (d.deck == DefenseDeck::kIndividual) d.placements = {cat.locations[0].id};
    if (!attacks.empty()) d.counters.push_back({attacks[uniform_below(rng, attacks.size())], pick(1, 3)});
    cat.defense_cards.push_back(d);
  }
  if (!attacks.empty()) {
    for (int i = 0; i < pick(1, 3); ++i) {
      WinConditionSpec w;
      w.id = "w" + std::to_string(i);
      w.title = "Condition " + std::to_string(i);
      for (int s = 0; s < pick(1, 2); ++s) {
        const auto* a = cat.find_attack(attacks[uniform_below(rng, attacks.size())]);
        w.satisfiers.push_back({a->id, {a->targets.front()}});
      }
      cat.win_conditions.push_back(w);
    }
  }
  return cat;
}

// Moves cards between deck and hand so the hand is exactly `cards`, keeping
// card conservation intact.
inline void set_hand(GameState& s, const std::vector<CardId>& cards) {
  for (auto& c : s.red_hand) s.attack_deck.push_back(c);
  s.red_hand.clear();
  for (const auto& c : cards) {
    auto it = std::find(s.attack_deck.begin(), s.attack_deck.end(), c);
    if (it == s.attack_deck.end()) throw std::runtime_error("no copy of " + c + " left in deck");
    s.attack_deck.erase(it);
    s.red_hand.push_back(c);
  }
}

// A default-catalog game advanced to round 1 with a chosen hand and condition.
inline GameState game_in_round(std::vector<CardId> hand, const std::string& condition,
                               std::vector<Purchase> purchases = {}, GameConfig config = {},
                               std::shared_ptr<const ScenarioCatalog> catalog = shared_default()) {
  GameState s = new_game(std::move(catalog), config);
  blue_setup(s, std::move(purchases));
  red_setup(s);
  set_hand(s, hand);
  choose_win_condition(s, condition);
  return s;
}

inline bool has_action(const std::vector<Action>& actions, const Action& a) {
  return std::find(actions.begin(), actions.end(), a) != actions.end();
}

// Forces the next d20 to land on `face` by re-seeding until it does. Only the
// engine's RNG is touched, so the rest of the state stays put.
inline void force_next_roll(GameState& s, int face) {
  for (std::uint64_t seed = 1;; ++seed) {
    Rng probe(seed);
    if (roll_d20(probe) == face) {
      s.rng.seed(seed);
      return;
    }
  }
}

inline std::string signed_tag(int v) {
  return (v < 0 ? "m" : "p") + std::to_string(v < 0 ? -v : v);
}

// One location, one attack per bonus in [lo, hi] ("atk_p3", "atk_m2", ...) and
// one free companywide defense per nonzero bonus ("def_p3", ...) countering
// every attack by that amount.
inline ScenarioCatalog grid_catalog(int lo = -5, int hi = 10) {
  ScenarioCatalog c;
  c.name = "grid";
  c.gc_slots = 1;
  c.locations.push_back({"x", "X", LocationKind::kNetworkNode, 1});
  for (int a = lo; a <= hi; ++a) {
    c.attack_cards.push_back({"atk_" + signed_tag(a), "Attack", AttackKind::kAttack, 3, a, {"x"}, {}});
  }
  for (int d = lo; d <= hi; ++d) {
    if (d == 0) continue;
    DefenseCardSpec spec;
    spec.id = "def_" + signed_tag(d);
    spec.name = "Defense";
    spec.deck = DefenseDeck::kGlobal;
    spec.cost = 0;
    for (const auto& a : c.attack_cards) spec.counters.push_back({a.id, d});
    c.defense_cards.push_back(spec);
  }
  c.win_conditions.push_back({"w", "W", {{c.attack_cards.front().id, {"x"}}}});
  return c;
}

// A grid-catalog state in round 1 with `defense` companywide.
inline GameState grid_state(std::shared_ptr<const ScenarioCatalog> cat, int defense) {
  GameState s = new_game(std::move(cat), GameConfig{});
  std::vector<Purchase> buy;
  if (defense != 0) buy.push_back({"def_" + signed_tag(defense), std::nullopt});
  blue_setup(s, buy);
  red_setup(s);
  choose_win_condition(s, "w");
  return s;
}

// Arbitrary actions of every shape, most of them illegal, drawn from the ids
// a catalog mentions plus a few that do not exist.
inline Action random_action(const GameState& s, Rng& rng) {
  const auto& cat = *s.catalog;
  auto any_attack = [&]() -> CardId {
    if (cat.attack_cards.empty() || uniform_below(rng, 8) == 0) return "bogus";
    return cat.attack_cards[uniform_below(rng, cat.attack_cards.size())].id;
  };
  auto any_location = [&]() -> LocationId {
    if (cat.locations.empty() || uniform_below(rng, 8) == 0) return "nowhere";
    return cat.locations[uniform_below(rng, cat.locations.size())].id;
  };
  switch (uniform_below(rng, 7)) {
    case 0: {
      std::vector<Purchase> p;
      for (auto n = uniform_below(rng, 4); n > 0; --n) {
        if (cat.defense_cards.empty()) break;
        const auto& d = cat.defense_cards[uniform_below(rng, cat.defense_cards.size())];
        std::optional<LocationId> loc;
        if (uniform_below(rng, 3) != 0) loc = any_location();
        p.push_back({d.id, loc});
      }
      return BlueSetup{p};
    }
    case 1: {
      if (cat.win_conditions.empty() || uniform_below(rng, 5) == 0) return ChooseWinCondition{"bogus"};
      return ChooseWinCondition{cat.win_conditions[uniform_below(rng, cat.win_conditions.size())].id};
    }
    case 2: {
      if (!s.red_hand.empty() && uniform_below(rng, 2) == 0) {
        const auto& card = s.red_hand[uniform_below(rng, s.red_hand.size())];
        const auto* spec = cat.find_attack(card);
        if (spec && !spec->targets.empty()) {
          return PlayAttack{card, spec->targets[uniform_below(rng, spec->targets.size())]};
        }
      }
      return PlayAttack{any_attack(), any_location()};
    }
    case 3:
      if (!s.red_hand.empty() && uniform_below(rng, 2) == 0) {
        return SwapCard{s.red_hand[uniform_below(rng, s.red_hand.size())]};
      }
      return SwapCard{any_attack()};
    case 4: {
      BuyCards b;
      b.count = static_cast<int>(uniform_below(rng, 4));
      for (auto n = uniform_below(rng, 3); n > 0; --n) {
        if (!s.red_hand.empty() && uniform_below(rng, 3) != 0) {
          b.discards.push_back(s.red_hand[uniform_below(rng, s.red_hand.size())]);
        } else {
          b.discards.push_back(any_attack());
        }
      }
      return b;
    }
    case 5:
      return DeclareWin{};
    default:
      return Pass{};
  }
}

}  // namespace perihack::testing
