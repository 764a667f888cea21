#include "perihack/agents.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>

namespace perihack {

std::string_view to_string(PolicyId id) {
  switch (id) {
    case PolicyId::kRandom: return "random";
    case PolicyId::kGreedyRed: return "greedy-red";
    case PolicyId::kBudgetBlue: return "budget-blue";
  }
  return "unknown";
}

std::optional<PolicyDescriptor> parse_policy(std::string_view id) {
  for (PolicyId p : {PolicyId::kRandom, PolicyId::kGreedyRed, PolicyId::kBudgetBlue}) {
    if (to_string(p) == id) return PolicyDescriptor{p};
  }
  return std::nullopt;
}

bool plays_team(PolicyId id, Team team) {
  switch (id) {
    case PolicyId::kRandom: return true;
    case PolicyId::kGreedyRed: return team == Team::kRed;
    case PolicyId::kBudgetBlue: return team == Team::kBlue;
  }
  return false;
}

namespace {

Action pick_uniform(const std::vector<Action>& legal, Rng& rng) {
  if (legal.empty()) return Pass{};
  return legal[uniform_below(rng, legal.size())];
}

// ---------------------------------------------------------------------------
// greedy-red

class RedPlanner {
 public:
  explicit RedPlanner(const PlayerView& view)
      : view_(view), cat_(*view.catalog), planner_(cat_) {
    for (const auto& r : view.success_history) achieved_.push_back({r.attack, r.location});
  }

  Action choose_condition() const {
    const WinConditionSpec* best = nullptr;
    int best_score = INT_MAX;
    for (const auto& wc : cat_.win_conditions) {
      for (const auto& sat : wc.satisfiers) {
        for (const auto& loc : sat.locations) {
          auto chain = planner_.chain_to(sat.attack, loc);
          if (!chain) continue;
          std::vector<CardId> hand = *view_.hand;
          int missing = 0;
          for (const auto& step : *chain) {
            auto it = std::find(hand.begin(), hand.end(), step.attack);
            if (it == hand.end()) {
              ++missing;
            } else {
              hand.erase(it);
            }
          }
          const int score = 2 * missing + static_cast<int>(chain->size());
          if (score < best_score) {
            best_score = score;
            best = &wc;
          }
        }
      }
    }
    if (!best) return pick_first_legal();
    return ChooseWinCondition{best->id};
  }

  Action round_action() const {
    const auto& legal = view_.legal_actions;
    auto has = [&](const Action& a) {
      return std::find(legal.begin(), legal.end(), a) != legal.end();
    };
    if (has(DeclareWin{})) return DeclareWin{};

    const auto* cond = condition();
    if (!cond) return Pass{};
    const auto goals = goals_for(*cond);

    // Best progressing attack: shortest resulting path to some satisfier,
    // then likelier, then card id and location order.
    const PlayAttack* best = nullptr;
    int best_after = INT_MAX;
    double best_p = -1.0;
    for (const auto& a : legal) {
      const auto* play = std::get_if<PlayAttack>(&a);
      if (!play) continue;
      const int after = progress(goals, play->card, play->location);
      if (after == INT_MAX) continue;
      const double p = success_estimate(play->card, play->location);
      if (p <= 0.0) continue;
      bool better = after < best_after ||
                    (after == best_after &&
                     (p > best_p ||
                      (p == best_p && std::tie(play->card, play->location) <
                                          std::tie(best->card, best->location))));
      if (better) {
        best = play;
        best_after = after;
        best_p = p;
      }
    }
    if (best) return *best;

    if (!view_.progress.extra_used && !hand_can_progress(goals)) {
      if (auto swap = pick_swap(goals, legal)) return *swap;
      if (auto buy = pick_buy(goals, legal)) return *buy;
    }
    return Pass{};
  }

 private:
  // A satisfier (attack, location) and the plays still needed to land it.
  struct Goal {
    CardId attack;
    LocationId location;
    int distance = 0;
  };

  const WinConditionSpec* condition() const {
    if (!view_.chosen_win_condition) return nullptr;
    return cat_.find_win_condition(*view_.chosen_win_condition);
  }

  Action pick_first_legal() const {
    return view_.legal_actions.empty() ? Action{Pass{}} : view_.legal_actions.front();
  }

  std::vector<Goal> goals_for(const WinConditionSpec& cond) const {
    std::vector<Goal> out;
    for (const auto& sat : cond.satisfiers) {
      for (const auto& loc : sat.locations) {
        if (auto chain = planner_.chain_to(sat.attack, loc, achieved_)) {
          out.push_back({sat.attack, loc, static_cast<int>(chain->size())});
        }
      }
    }
    return out;
  }

  // Shortest remaining path to any satisfier that landing `card` on `loc`
  // brings closer; INT_MAX when it brings none closer.
  int progress(const std::vector<Goal>& goals, const CardId& card, const LocationId& loc) const {
    auto with = achieved_;
    with.push_back({card, loc});
    int best = INT_MAX;
    for (const auto& g : goals) {
      auto chain = planner_.chain_to(g.attack, g.location, with);
      if (chain && static_cast<int>(chain->size()) < g.distance) {
        best = std::min(best, static_cast<int>(chain->size()));
      }
    }
    return best;
  }

  // Defense red can see at `loc`: global cards plus revealed ICs.
  double success_estimate(const CardId& card, const LocationId& loc) const {
    const auto* spec = cat_.find_attack(card);
    int defense = 0;
    for (const auto& gc : view_.gc_placements) {
      if (const auto* d = cat_.find_defense(gc)) defense += d->bonus_against(card);
    }
    if (auto it = view_.ic_placements.find(loc); it != view_.ic_placements.end()) {
      for (const auto& placed : it->second) {
        if (!placed.card) continue;
        if (const auto* d = cat_.find_defense(*placed.card)) defense += d->bonus_against(card);
      }
    }
    auto played = view_.play_counts.find(card);
    const bool repeat = played != view_.play_counts.end() && played->second > 0;
    return attack_success_probability(spec ? spec->attack_bonus : 0, defense, repeat);
  }

  // Whether `card` lies on a shortest path to some satisfier.
  bool useful(const std::vector<Goal>& goals, const CardId& card) const {
    const auto* spec = cat_.find_attack(card);
    if (!spec || spec->kind != AttackKind::kAttack) return false;
    for (const auto& loc : spec->targets) {
      if (std::find(achieved_.begin(), achieved_.end(), ChainStep{card, loc}) != achieved_.end()) {
        continue;
      }
      auto reach = planner_.chain_to(card, loc, achieved_);
      if (!reach) continue;
      auto with = achieved_;
      with.insert(with.end(), reach->begin(), reach->end());
      for (const auto& g : goals) {
        auto rest = planner_.chain_to(g.attack, g.location, with);
        if (rest && static_cast<int>(reach->size() + rest->size()) <= g.distance) return true;
      }
    }
    return false;
  }

  // Whether some hand card could be played next round to make progress.
  bool hand_can_progress(const std::vector<Goal>& goals) const {
    for (const auto& card : *view_.hand) {
      const auto* spec = cat_.find_attack(card);
      if (!spec || spec->kind != AttackKind::kAttack) continue;
      for (const auto& loc : spec->targets) {
        if (!planner_.prerequisite_met(*spec, loc, achieved_)) continue;
        if (progress(goals, card, loc) != INT_MAX) return true;
      }
    }
    return false;
  }

  std::optional<Action> pick_swap(const std::vector<Goal>& goals,
                                  const std::vector<Action>& legal) const {
    std::optional<Action> pick;
    for (const auto& a : legal) {
      const auto* swap = std::get_if<SwapCard>(&a);
      if (!swap) continue;
      const auto* spec = cat_.find_attack(swap->card);
      if (!spec || spec->kind == AttackKind::kSwap) continue;
      if (useful(goals, swap->card)) continue;
      if (!pick || swap->card < std::get<SwapCard>(*pick).card) pick = a;
    }
    return pick;
  }

  std::optional<Action> pick_buy(const std::vector<Goal>& goals,
                                 const std::vector<Action>& legal) const {
    std::optional<Action> pick;
    int best_count = 0;
    for (const auto& a : legal) {
      const auto* buy = std::get_if<BuyCards>(&a);
      if (!buy) continue;
      bool discards_useless =
          std::all_of(buy->discards.begin(), buy->discards.end(),
                      [&](const CardId& c) { return !useful(goals, c); });
      if (!discards_useless) continue;
      if (buy->count > best_count) {
        best_count = buy->count;
        pick = a;
      }
    }
    return pick;
  }

  const PlayerView& view_;
  const ScenarioCatalog& cat_;
  ChainPlanner planner_;
  std::vector<ChainStep> achieved_;
};

// ---------------------------------------------------------------------------
// blue purchases

struct Board {
  const ScenarioCatalog& cat;
  int budget = 0;
  int gc_free = 0;
  std::map<LocationId, int> slots_free;
  std::map<CardId, int> copies_left;
  std::set<CardId> gc_covered;
  std::map<LocationId, std::set<CardId>> ic_covered;
  std::vector<Purchase> bought;

  Board(const PlayerView& v) : cat(*v.catalog), budget(v.blue_budget) {
    gc_free = cat.gc_slots - static_cast<int>(v.gc_placements.size());
    for (const auto& d : cat.defense_cards) copies_left[d.id] = d.copies;
    for (const auto& gc : v.gc_placements) {
      --copies_left[gc];
      if (const auto* d = cat.find_defense(gc)) {
        for (const auto& c : d->counters) gc_covered.insert(c.attack);
      }
    }
    for (const auto& loc : cat.locations) slots_free[loc.id] = loc.ic_slots;
    for (const auto& [loc, placed] : v.ic_placements) {
      slots_free[loc] -= static_cast<int>(placed.size());
      for (const auto& p : placed) {
        if (!p.card) continue;
        --copies_left[*p.card];
        if (const auto* d = cat.find_defense(*p.card)) {
          for (const auto& c : d->counters) ic_covered[loc].insert(c.attack);
        }
      }
    }
  }

  bool can_target(const CardId& attack, const LocationId& loc) const {
    const auto* a = cat.find_attack(attack);
    return a && std::find(a->targets.begin(), a->targets.end(), loc) != a->targets.end();
  }

  bool available(const DefenseCardSpec& d) const {
    if (copies_left.at(d.id) <= 0 || d.cost > budget) return false;
    return d.deck == DefenseDeck::kIndividual || gc_free > 0;
  }

  void take(const DefenseCardSpec& d, std::optional<LocationId> loc) {
    budget += (d.special == DefenseSpecial::kExtraBudget ? d.budget_grant : 0) - d.cost;
    --copies_left[d.id];
    if (d.deck == DefenseDeck::kGlobal) {
      --gc_free;
      for (const auto& c : d.counters) gc_covered.insert(c.attack);
    } else {
      --slots_free[*loc];
      for (const auto& c : d.counters) ic_covered[*loc].insert(c.attack);
    }
    bought.push_back({d.id, std::move(loc)});
  }
};

// Number of win-condition satisfier entries pointing at `loc`.
int location_stakes(const ScenarioCatalog& cat, const LocationId& loc) {
  int n = 0;
  for (const auto& wc : cat.win_conditions) {
    for (const auto& s : wc.satisfiers) {
      n += static_cast<int>(std::count(s.locations.begin(), s.locations.end(), loc));
    }
  }
  return n;
}

std::vector<Purchase> budget_blue(const PlayerView& view, const PolicyDescriptor& policy,
                                  bool setup) {
  Board board(view);
  const auto& cat = board.cat;

  struct Option {
    const DefenseCardSpec* card = nullptr;
    std::optional<LocationId> loc;
    double score = 0.0;
  };

  auto evaluate = [&](const DefenseCardSpec& d) -> Option {
    Option best{&d, std::nullopt, 0.0};
    if (d.special == DefenseSpecial::kExtraBudget && d.budget_grant > d.cost) {
      best.score = 1e9;  // pays for itself
      return best;
    }
    if (d.cost <= 0) return best;  // decoys are handled separately
    if (d.deck == DefenseDeck::kGlobal) {
      std::set<CardId> all;
      int fresh = 0;
      for (const auto& c : d.counters) {
        if (c.bonus <= 0 || !all.insert(c.attack).second) continue;
        if (!board.gc_covered.count(c.attack)) ++fresh;
      }
      best.score = (fresh + policy.bonus_weight * static_cast<double>(all.size())) / d.cost;
      return best;
    }
    for (const auto& loc : d.placements) {
      if (board.slots_free[loc] <= 0) continue;
      std::set<CardId> all;
      int fresh = 0;
      for (const auto& c : d.counters) {
        if (c.bonus <= 0 || !board.can_target(c.attack, loc) || !all.insert(c.attack).second) {
          continue;
        }
        if (!board.gc_covered.count(c.attack) && !board.ic_covered[loc].count(c.attack)) ++fresh;
      }
      const double stakes = 0.01 * location_stakes(cat, loc);
      const double score =
          (fresh + policy.bonus_weight * static_cast<double>(all.size()) + stakes) / d.cost;
      if (!all.empty() && score > best.score) {
        best.score = score;
        best.loc = loc;
      }
    }
    return best;
  };

  for (;;) {
    std::optional<Option> pick;
    for (const auto& d : cat.defense_cards) {
      if (!board.available(d)) continue;
      if (!setup && d.deck == DefenseDeck::kGlobal) continue;
      Option o = evaluate(d);
      if (o.score <= 0.0) continue;
      if (d.deck == DefenseDeck::kIndividual && !o.loc) continue;
      if (!pick || o.score > pick->score ||
          (o.score == pick->score && d.cost < pick->card->cost)) {
        pick = o;
      }
    }
    if (!pick) break;
    board.take(*pick->card, pick->loc);
  }

  // Free decoys go where nothing else was placed, most contested spots first.
  std::vector<const LocationSpec*> spots;
  for (const auto& loc : cat.locations) spots.push_back(&loc);
  std::stable_sort(spots.begin(), spots.end(), [&](const auto* a, const auto* b) {
    return location_stakes(cat, a->id) > location_stakes(cat, b->id);
  });
  for (const auto& d : cat.defense_cards) {
    if (d.deck != DefenseDeck::kIndividual || d.cost > 0 || !d.counters.empty()) continue;
    for (const auto* loc : spots) {
      if (!board.available(d)) break;
      if (std::find(d.placements.begin(), d.placements.end(), loc->id) == d.placements.end()) {
        continue;
      }
      if (board.slots_free[loc->id] <= 0 || board.slots_free[loc->id] < loc->ic_slots) continue;
      board.take(d, loc->id);
    }
  }
  return board.bought;
}

std::vector<Purchase> random_blue(const PlayerView& view, Rng& rng, bool setup) {
  Board board(view);
  std::vector<const DefenseCardSpec*> pool;
  for (const auto& d : board.cat.defense_cards) {
    if (!setup && d.deck == DefenseDeck::kGlobal) continue;
    for (int i = 0; i < board.copies_left[d.id]; ++i) pool.push_back(&d);
  }
  shuffle(pool, rng);
  for (const auto* d : pool) {
    if (uniform_below(rng, 2) == 0 || !board.available(*d)) continue;
    if (d->deck == DefenseDeck::kGlobal) {
      board.take(*d, std::nullopt);
      continue;
    }
    std::vector<LocationId> open;
    for (const auto& loc : d->placements) {
      if (board.slots_free[loc] > 0) open.push_back(loc);
    }
    if (open.empty()) continue;
    board.take(*d, open[uniform_below(rng, open.size())]);
  }
  return board.bought;
}

}  // namespace

Action decide_red(const PlayerView& view, const PolicyDescriptor& policy, Rng& rng) {
  if (view.legal_actions.empty()) return Pass{};
  if (policy.id != PolicyId::kGreedyRed || !view.hand) {
    return pick_uniform(view.legal_actions, rng);
  }
  if (policy.exploration > 0.0 && uniform_unit(rng) < policy.exploration) {
    return pick_uniform(view.legal_actions, rng);
  }
  RedPlanner planner(view);
  if (view.phase == Phase::kRedSetup) return planner.choose_condition();
  return planner.round_action();
}

Action decide_blue_setup(const PlayerView& view, const PolicyDescriptor& policy, Rng& rng) {
  const bool setup = view.phase == Phase::kBlueSetup;
  std::vector<Purchase> purchases = policy.id == PolicyId::kRandom
                                        ? random_blue(view, rng, setup)
                                        : budget_blue(view, policy, setup);
  if (!setup && purchases.empty()) return Pass{};
  return BlueSetup{std::move(purchases)};
}

Action decide(const PlayerView& view, const PolicyDescriptor& policy, Rng& rng) {
  if (view.team == Team::kBlue) return decide_blue_setup(view, policy, rng);
  return decide_red(view, policy, rng);
}

}  // namespace perihack
