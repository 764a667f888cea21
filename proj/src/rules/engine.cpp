#include <algorithm>
#include <set>

#include "perihack/rules.hpp"

namespace perihack {

std::string_view to_string(Team team) { return team == Team::kRed ? "red" : "blue"; }

std::optional<Team> team_from_string(std::string_view name) {
  if (name == "red") return Team::kRed;
  if (name == "blue") return Team::kBlue;
  return std::nullopt;
}

std::string_view to_string(Phase phase) {
  switch (phase) {
    case Phase::kBlueSetup: return "blue-setup";
    case Phase::kRedSetup: return "red-setup";
    case Phase::kRound: return "round";
    case Phase::kBlueReinforce: return "blue-reinforce";
    case Phase::kFinished: return "finished";
  }
  return "unknown";
}

std::string_view to_string(RuleErrorCode code) {
  switch (code) {
    case RuleErrorCode::kMalformedAction: return "malformed_action";
    case RuleErrorCode::kPhaseMismatch: return "phase_mismatch";
    case RuleErrorCode::kIllegalAction: return "illegal_action";
    case RuleErrorCode::kInvalidConfig: return "invalid_config";
    case RuleErrorCode::kInvalidCatalog: return "invalid_catalog";
    case RuleErrorCode::kDeckExhausted: return "deck_exhausted";
    case RuleErrorCode::kReplayMismatch: return "replay_mismatch";
  }
  return "unknown";
}

std::vector<std::string> config_problems(const GameConfig& c) {
  std::vector<std::string> out;
  if (c.rounds < 0) out.push_back("rounds must be >= 0");
  if (c.blue_budget < 0) out.push_back("blue_budget must be >= 0");
  if (c.red_budget < 0) out.push_back("red_budget must be >= 0");
  if (c.attack_card_price < 0) out.push_back("attack_card_price must be >= 0");
  if (c.hand_limit < 1) out.push_back("hand_limit must be >= 1");
  if (c.opening_hand < 1) out.push_back("opening_hand must be >= 1");
  if (c.opening_hand > c.hand_limit) out.push_back("opening_hand must not exceed hand_limit");
  if (c.max_buy < 1) out.push_back("max_buy must be >= 1");
  return out;
}

bool conservation_holds(const GameState& state) {
  std::map<CardId, int> seen;
  for (const auto& c : state.attack_deck) ++seen[c];
  for (const auto& c : state.red_hand) ++seen[c];
  for (const auto& c : state.discard) ++seen[c];
  int known = 0;
  for (const auto& a : state.catalog->attack_cards) {
    auto it = seen.find(a.id);
    if ((it == seen.end() ? 0 : it->second) != a.copies) return false;
    known += a.copies;
  }
  int total = 0;
  for (const auto& [_, n] : seen) total += n;
  return total == known;
}

std::vector<ChainStep> achieved_steps(const GameState& state) {
  std::vector<ChainStep> out;
  out.reserve(state.success_history.size());
  for (const auto& s : state.success_history) out.push_back({s.attack, s.location});
  return out;
}

double attack_success_probability(int attack_bonus, int defense_bonus, bool repeat) {
  const int need = kResolutionThreshold + defense_bonus + (repeat ? kRepeatPenalty : 0) -
                   attack_bonus;  // roll must exceed this
  const int faces = std::clamp(kDieFaces - need, 0, kDieFaces);
  return static_cast<double>(faces) / kDieFaces;
}

namespace {

[[noreturn]] void reject(RuleErrorCode code, const std::string& msg) {
  throw RuleError(code, msg);
}

[[noreturn]] void illegal(const std::string& msg) {
  reject(RuleErrorCode::kIllegalAction, msg);
}

bool contains(const std::vector<std::string>& v, std::string_view x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

int count_of(const std::vector<std::string>& v, std::string_view x) {
  return static_cast<int>(std::count(v.begin(), v.end(), x));
}

void remove_one(std::vector<CardId>& v, std::string_view x) {
  v.erase(std::find(v.begin(), v.end(), x));
}

CardId draw_top(GameState& s) {
  CardId c = s.attack_deck.front();
  s.attack_deck.erase(s.attack_deck.begin());
  return c;
}

bool is_swap(const GameState& s, std::string_view card) {
  const auto* spec = s.catalog->find_attack(card);
  return spec && spec->kind == AttackKind::kSwap;
}

int swaps_in_hand(const GameState& s) {
  int n = 0;
  for (const auto& c : s.red_hand) n += is_swap(s, c) ? 1 : 0;
  return n;
}

CardId first_swap_in_hand(const GameState& s) {
  for (const auto& c : s.red_hand) {
    if (is_swap(s, c)) return c;
  }
  return {};
}

Json success_list(const GameState& s) {
  Json chain = Json::array();
  for (const auto& r : s.success_history) {
    chain.push_back({{"attack", r.attack}, {"location", r.location}, {"round", r.round}});
  }
  return chain;
}

class Mutator {
 public:
  Mutator(GameState& s, std::vector<Event>& out) : s_(s), out_(out) {}

  void emit(std::string kind, Json data) {
    Event e{s_.event_log.size() + 1, s_.round_index, std::move(kind), std::move(data)};
    s_.event_log.push_back(e);
    out_.push_back(std::move(e));
  }

  void log_action(Team actor, const Action& action) {
    emit("action", {{"actor", to_string(actor)}, {"action", to_json(action)}});
  }

  void finish(Team winner) {
    s_.phase = Phase::kFinished;
    s_.winner = winner;
    Json data{{"winner", to_string(winner)}};
    if (winner == Team::kRed) data["condition"] = *s_.chosen_win_condition;
    data["chain"] = success_list(s_);
    data["rounds_played"] = std::min(s_.round_index, s_.config.rounds);
    emit("game_finished", std::move(data));
  }

  void start_round(int n) {
    s_.round_index = n;
    s_.progress = {};
    if (n > s_.config.rounds) {
      finish(Team::kBlue);
      return;
    }
    emit("round_started", {{"round", n}});
    s_.phase = (s_.config.blue_midgame_purchases && n >= 2) ? Phase::kBlueReinforce
                                                            : Phase::kRound;
  }

  void end_round() {
    emit("round_ended", {{"round", s_.round_index}});
    start_round(s_.round_index + 1);
  }

  // The round closes once both sub-actions are spent, unless red now holds a
  // satisfied condition and may still stop the game.
  void maybe_end_round() {
    if (s_.progress.attacked && s_.progress.extra_used && !condition_satisfied(s_)) {
      end_round();
    }
  }

  void purchase(const BlueSetup& a, bool setup) {
    const auto& cat = *s_.catalog;
    int cost = 0;
    int grant = 0;
    int new_gcs = 0;
    std::map<CardId, int> ic_bought;
    std::map<LocationId, int> slot_use;
    for (const auto& [loc, placed] : s_.ic_placements) {
      slot_use[loc] = static_cast<int>(placed.size());
      for (const auto& p : placed) ++ic_bought[p.card];
    }
    std::set<CardId> gcs(s_.gc_placements.begin(), s_.gc_placements.end());

    for (const auto& p : a.purchases) {
      const auto* spec = cat.find_defense(p.card);
      if (!spec) illegal("unknown defense card '" + p.card + "'");
      cost += spec->cost;
      if (spec->special == DefenseSpecial::kExtraBudget) {
        if (spec->cost > s_.blue_budget) {
          illegal("'" + p.card + "' cannot be paid for out of its own grant");
        }
        grant += spec->budget_grant;
      }
      if (spec->deck == DefenseDeck::kGlobal) {
        if (!setup) illegal("global cards cannot be placed after setup");
        if (p.location) illegal("global card '" + p.card + "' is companywide; no location");
        if (!gcs.insert(p.card).second) illegal("duplicate global card '" + p.card + "'");
        if (++new_gcs + static_cast<int>(s_.gc_placements.size()) > cat.gc_slots) {
          illegal("only " + std::to_string(cat.gc_slots) + " global card slots");
        }
      } else {
        if (!p.location) illegal("individual card '" + p.card + "' needs a location");
        if (!contains(spec->placements, *p.location)) {
          illegal("'" + p.card + "' cannot be placed at '" + *p.location + "'");
        }
        const auto* loc = cat.find_location(*p.location);
        if (++slot_use[*p.location] > loc->ic_slots) {
          illegal("no free slot at '" + *p.location + "'");
        }
        if (++ic_bought[p.card] > spec->copies) {
          illegal("no copies of '" + p.card + "' left");
        }
      }
    }
    const int available = s_.blue_budget + grant;
    if (cost > available) {
      illegal("purchase costs " + std::to_string(cost) + " but only " +
              std::to_string(available) + " coins are available");
    }

    log_action(Team::kBlue, a);
    for (const auto& p : a.purchases) {
      const auto* spec = cat.find_defense(p.card);
      Json data{{"card", p.card},
                {"deck", spec->deck == DefenseDeck::kGlobal ? "GC" : "IC"},
                {"location", p.location ? Json(*p.location) : Json(nullptr)},
                {"cost", spec->cost}};
      if (spec->deck == DefenseDeck::kGlobal) {
        s_.gc_placements.push_back(p.card);
      } else {
        s_.ic_placements[*p.location].push_back({p.card, false});
      }
      emit("defense_placed", std::move(data));
      if (spec->special == DefenseSpecial::kExtraBudget && spec->budget_grant > 0) {
        emit("budget_granted", {{"card", p.card}, {"amount", spec->budget_grant}});
      }
    }
    s_.blue_budget = available - cost;
    emit(setup ? "blue_setup_complete" : "blue_reinforced",
         {{"spent", cost}, {"granted", grant}, {"blue_budget", s_.blue_budget}});
    if (setup) {
      s_.phase = Phase::kRedSetup;
    } else {
      s_.phase = Phase::kRound;
    }
  }

  void choose(const ChooseWinCondition& a) {
    if (s_.chosen_win_condition) illegal("win condition already chosen");
    if (s_.phase != Phase::kRedSetup) {
      reject(RuleErrorCode::kPhaseMismatch, "win condition is chosen during red setup");
    }
    if (!s_.red_dealt) illegal("opening hand has not been dealt");
    if (!s_.catalog->find_win_condition(a.condition)) {
      illegal("unknown win condition '" + a.condition + "'");
    }
    log_action(Team::kRed, a);
    s_.chosen_win_condition = a.condition;
    emit("win_condition_chosen", {{"condition", a.condition}});
    start_round(1);
  }

  void play(const PlayAttack& a) {
    if (s_.progress.attacked) illegal("an attack was already played this round");
    if (!contains(s_.red_hand, a.card)) illegal("'" + a.card + "' is not in hand");
    const auto* spec = s_.catalog->find_attack(a.card);
    if (spec->kind != AttackKind::kAttack) illegal("'" + a.card + "' is not an attack card");
    if (!contains(spec->targets, a.location)) {
      illegal("'" + a.card + "' cannot target '" + a.location + "'");
    }
    auto achieved = achieved_steps(s_);
    if (!ChainPlanner(*s_.catalog).prerequisite_met(*spec, a.location, achieved)) {
      illegal("prerequisite for '" + a.card + "' has not succeeded");
    }

    log_action(Team::kRed, a);
    remove_one(s_.red_hand, a.card);
    s_.discard.push_back(a.card);
    const int roll = roll_d20(s_.rng);
    ResolutionOutcome out = resolve_attack(s_, a.card, a.location, roll);
    for (const auto& id : out.revealed) {
      for (auto& placed : s_.ic_placements[a.location]) {
        if (placed.card == id) placed.revealed = true;
      }
    }
    ++s_.play_counts[a.card];
    if (out.success) s_.success_history.push_back({a.card, a.location, s_.round_index});
    emit("attack_resolved", {{"card", a.card},
                             {"location", a.location},
                             {"roll", out.roll},
                             {"attack_bonus", out.attack_bonus},
                             {"attack_total", out.attack_total},
                             {"defense_bonus", out.defense_bonus},
                             {"repeat_penalty", out.repeat_penalty},
                             {"defense_total", out.defense_total},
                             {"success", out.success},
                             {"revealed", out.revealed}});
    if (out.honeypot) {
      emit("honeypot_triggered",
           {{"card", *out.honeypot}, {"location", a.location}, {"attack", a.card}});
    }
    s_.progress.attacked = true;
    maybe_end_round();
  }

  void swap(const SwapCard& a) {
    if (s_.progress.extra_used) illegal("a swap or purchase was already made this round");
    if (swaps_in_hand(s_) == 0) illegal("no swap card in hand");
    const int needed = is_swap(s_, a.card) ? 2 : 1;
    if (count_of(s_.red_hand, a.card) < needed) illegal("'" + a.card + "' is not in hand");
    if (s_.attack_deck.empty()) illegal("deck is exhausted");

    log_action(Team::kRed, a);
    const CardId swap_card = first_swap_in_hand(s_);
    remove_one(s_.red_hand, swap_card);
    remove_one(s_.red_hand, a.card);
    s_.discard.push_back(swap_card);
    s_.discard.push_back(a.card);
    // The deck is kept uniformly shuffled, so its top card is a uniform draw.
    CardId replacement = draw_top(s_);
    s_.red_hand.push_back(replacement);
    emit("card_swapped", {{"swap_card", swap_card},
                          {"swapped_out", a.card},
                          {"replacement", replacement}});
    s_.progress.extra_used = true;
    maybe_end_round();
  }

  void buy(const BuyCards& a) {
    if (s_.progress.extra_used) illegal("a swap or purchase was already made this round");
    if (a.count < 1 || a.count > s_.config.max_buy) {
      illegal("can buy between 1 and " + std::to_string(s_.config.max_buy) + " cards");
    }
    const int cost = a.count * s_.config.attack_card_price;
    if (cost > s_.red_budget) illegal("not enough coins");
    if (static_cast<int>(s_.attack_deck.size()) < a.count) illegal("deck is exhausted");
    const int hand = static_cast<int>(s_.red_hand.size());
    const int needed = std::max(0, hand + a.count - s_.config.hand_limit);
    if (static_cast<int>(a.discards.size()) != needed) {
      illegal("buying " + std::to_string(a.count) + " with " + std::to_string(hand) +
              " cards in hand requires exactly " + std::to_string(needed) + " discards");
    }
    std::vector<CardId> remaining = s_.red_hand;
    for (const auto& d : a.discards) {
      auto it = std::find(remaining.begin(), remaining.end(), d);
      if (it == remaining.end()) illegal("cannot discard '" + d + "': not in hand");
      remaining.erase(it);
    }

    log_action(Team::kRed, a);
    s_.red_hand = std::move(remaining);
    for (const auto& d : a.discards) s_.discard.push_back(d);
    s_.red_budget -= cost;
    Json drawn = Json::array();
    for (int i = 0; i < a.count; ++i) {
      CardId c = draw_top(s_);
      drawn.push_back(c);
      s_.red_hand.push_back(std::move(c));
    }
    emit("cards_bought", {{"count", a.count},
                          {"cost", cost},
                          {"drawn", drawn},
                          {"discarded", a.discards},
                          {"red_budget", s_.red_budget}});
    s_.progress.extra_used = true;
    maybe_end_round();
  }

  void declare(const DeclareWin& a) {
    if (!condition_satisfied(s_)) illegal("the chosen win condition is not satisfied");
    log_action(Team::kRed, a);
    finish(Team::kRed);
  }

  void pass(const Pass& a, Team actor) {
    log_action(actor, a);
    if (s_.phase == Phase::kBlueReinforce) {
      s_.phase = Phase::kRound;
    } else {
      end_round();
    }
  }

 private:
  GameState& s_;
  std::vector<Event>& out_;
};

bool is_setup_action(const Action& a) { return std::holds_alternative<BlueSetup>(a); }

void apply_in_place(GameState& s, const Action& action, std::vector<Event>& out) {
  Mutator m(s, out);
  switch (s.phase) {
    case Phase::kBlueSetup:
      if (!is_setup_action(action)) {
        reject(RuleErrorCode::kPhaseMismatch, "blue setup expects a purchase list");
      }
      m.purchase(std::get<BlueSetup>(action), true);
      return;
    case Phase::kBlueReinforce:
      if (is_setup_action(action)) {
        m.purchase(std::get<BlueSetup>(action), false);
      } else if (std::holds_alternative<Pass>(action)) {
        m.pass(std::get<Pass>(action), Team::kBlue);
      } else {
        reject(RuleErrorCode::kPhaseMismatch, "blue may only buy or pass now");
      }
      return;
    case Phase::kRedSetup:
      if (!std::holds_alternative<ChooseWinCondition>(action)) {
        reject(RuleErrorCode::kPhaseMismatch, "red must choose a win condition");
      }
      m.choose(std::get<ChooseWinCondition>(action));
      return;
    case Phase::kRound:
      std::visit(
          [&](const auto& a) {
            using T = std::decay_t<decltype(a)>;
            if constexpr (std::is_same_v<T, PlayAttack>) {
              m.play(a);
            } else if constexpr (std::is_same_v<T, SwapCard>) {
              m.swap(a);
            } else if constexpr (std::is_same_v<T, BuyCards>) {
              m.buy(a);
            } else if constexpr (std::is_same_v<T, DeclareWin>) {
              m.declare(a);
            } else if constexpr (std::is_same_v<T, Pass>) {
              m.pass(a, Team::kRed);
            } else if constexpr (std::is_same_v<T, ChooseWinCondition>) {
              m.choose(a);
            } else {
              reject(RuleErrorCode::kPhaseMismatch,
                     std::string(action_type(action)) + " is not allowed during a round");
            }
          },
          action);
      return;
    case Phase::kFinished:
      reject(RuleErrorCode::kPhaseMismatch, "the game is over");
  }
}

}  // namespace

GameState new_game(std::shared_ptr<const ScenarioCatalog> catalog, GameConfig config) {
  if (!catalog) reject(RuleErrorCode::kInvalidCatalog, "no catalog");
  if (auto report = validate_catalog(*catalog); !report.empty()) {
    reject(RuleErrorCode::kInvalidCatalog, CatalogError(report.front()).what());
  }
  if (auto problems = config_problems(config); !problems.empty()) {
    reject(RuleErrorCode::kInvalidConfig, problems.front());
  }
  GameState s;
  s.catalog = std::move(catalog);
  s.config = config;
  s.rng.seed(config.seed);
  for (const auto& a : s.catalog->attack_cards) {
    for (int i = 0; i < a.copies; ++i) s.attack_deck.push_back(a.id);
  }
  shuffle(s.attack_deck, s.rng);
  s.red_budget = config.red_budget;
  s.blue_budget = config.blue_budget;

  std::vector<Event> ignored;
  Json created = to_json(config);
  created.erase("seed");
  Mutator(s, ignored).emit("game_created", {{"config", std::move(created)},
                                            {"catalog", hex_digest(catalog_digest(*s.catalog))},
                                            {"deck_size", s.attack_deck.size()}});
  return s;
}

bool needs_deal(const GameState& s) { return s.phase == Phase::kRedSetup && !s.red_dealt; }

std::optional<Team> to_move(const GameState& s) {
  switch (s.phase) {
    case Phase::kBlueSetup:
    case Phase::kBlueReinforce:
      return Team::kBlue;
    case Phase::kRedSetup:
      return s.red_dealt ? std::optional<Team>(Team::kRed) : std::nullopt;
    case Phase::kRound:
      return Team::kRed;
    case Phase::kFinished:
      return std::nullopt;
  }
  return std::nullopt;
}

std::vector<Event> red_setup(GameState& state) {
  if (!needs_deal(state)) {
    reject(RuleErrorCode::kPhaseMismatch, "the opening hand is dealt once, after blue setup");
  }
  GameState next = state;
  std::vector<Event> out;
  std::vector<CardId> set_aside;
  while (static_cast<int>(next.red_hand.size()) < next.config.opening_hand) {
    if (next.attack_deck.empty()) {
      reject(RuleErrorCode::kDeckExhausted,
             "deck ran out before " + std::to_string(next.config.opening_hand) +
                 " playable cards were dealt");
    }
    CardId c = draw_top(next);
    if (is_swap(next, c)) {
      set_aside.push_back(std::move(c));
    } else {
      next.red_hand.push_back(std::move(c));
    }
  }
  for (auto& c : set_aside) {
    auto pos = uniform_below(next.rng, next.attack_deck.size() + 1);
    next.attack_deck.insert(next.attack_deck.begin() + static_cast<std::ptrdiff_t>(pos),
                            std::move(c));
  }
  next.red_dealt = true;
  Mutator(next, out).emit("hand_dealt", {{"cards", next.red_hand},
                                         {"skipped_swaps", set_aside.size()}});
  state = std::move(next);
  return out;
}

std::vector<Event> apply_action(GameState& state, const Action& action) {
  // The log is append-only, so it is lent to the working copy instead of
  // copied, and cut back to its old length if the action is refused.
  const std::size_t logged = state.event_log.size();
  std::vector<Event> log = std::move(state.event_log);
  state.event_log.clear();
  GameState next = state;
  next.event_log = std::move(log);
  std::vector<Event> out;
  try {
    apply_in_place(next, action, out);
  } catch (...) {
    next.event_log.resize(logged);
    state.event_log = std::move(next.event_log);
    throw;
  }
  state = std::move(next);
  return out;
}

std::vector<Event> blue_setup(GameState& state, std::vector<Purchase> purchases) {
  return apply_action(state, BlueSetup{std::move(purchases)});
}

std::vector<Event> choose_win_condition(GameState& state, const std::string& condition) {
  return apply_action(state, ChooseWinCondition{condition});
}

std::optional<std::string> check_action(const GameState& state, Team team,
                                        const Action& action) {
  auto mover = to_move(state);
  if (!mover) return "no move is expected now";
  if (*mover != team) return std::string("it is ") + std::string(to_string(*mover)) + "'s move";
  GameState scratch = state;
  std::vector<Event> ignored;
  try {
    apply_in_place(scratch, action, ignored);
  } catch (const RuleError& e) {
    return std::string(e.what());
  }
  return std::nullopt;
}

std::vector<Action> legal_actions(const GameState& s, Team team) {
  std::vector<Action> out;
  if (to_move(s) != team) return out;

  if (s.phase == Phase::kBlueReinforce) {
    out.push_back(Pass{});
    return out;
  }
  if (s.phase == Phase::kRedSetup) {
    if (!s.chosen_win_condition) {
      for (const auto& w : s.catalog->win_conditions) out.push_back(ChooseWinCondition{w.id});
    }
    return out;
  }
  if (s.phase != Phase::kRound) return out;

  const auto& cat = *s.catalog;
  const bool satisfied = condition_satisfied(s);
  if (s.progress.attacked && s.progress.extra_used) {
    if (satisfied) out.push_back(DeclareWin{});
    out.push_back(Pass{});
    return out;
  }

  // Distinct hand card ids, in catalog order.
  std::vector<CardId> distinct;
  for (const auto& a : cat.attack_cards) {
    if (contains(s.red_hand, a.id)) distinct.push_back(a.id);
  }

  if (!s.progress.attacked) {
    ChainPlanner planner(cat);
    auto achieved = achieved_steps(s);
    for (const auto& id : distinct) {
      const auto* spec = cat.find_attack(id);
      if (spec->kind != AttackKind::kAttack) continue;
      for (const auto& loc : spec->targets) {
        if (planner.prerequisite_met(*spec, loc, achieved)) out.push_back(PlayAttack{id, loc});
      }
    }
  }

  if (!s.progress.extra_used) {
    if (swaps_in_hand(s) > 0 && !s.attack_deck.empty()) {
      for (const auto& id : distinct) {
        if (count_of(s.red_hand, id) >= (is_swap(s, id) ? 2 : 1)) out.push_back(SwapCard{id});
      }
    }
    const int hand = static_cast<int>(s.red_hand.size());
    for (int count = 1; count <= s.config.max_buy; ++count) {
      if (count * s.config.attack_card_price > s.red_budget) break;
      if (count > static_cast<int>(s.attack_deck.size())) break;
      const int needed = std::max(0, hand + count - s.config.hand_limit);
      if (needed > hand) continue;
      // Distinct multisets of `needed` hand cards, in catalog order.
      std::vector<int> avail;
      for (const auto& id : distinct) avail.push_back(count_of(s.red_hand, id));
      std::vector<CardId> pick;
      auto rec = [&](auto&& self, std::size_t from) -> void {
        if (static_cast<int>(pick.size()) == needed) {
          out.push_back(BuyCards{count, pick});
          return;
        }
        for (std::size_t i = from; i < distinct.size(); ++i) {
          if (avail[i] == 0) continue;
          --avail[i];
          pick.push_back(distinct[i]);
          self(self, i);
          pick.pop_back();
          ++avail[i];
        }
      };
      rec(rec, 0);
    }
  }

  if (satisfied) out.push_back(DeclareWin{});
  out.push_back(Pass{});
  return out;
}

ResolutionOutcome resolve_attack(const GameState& s, const CardId& attack,
                                 const LocationId& location, int roll) {
  const auto& cat = *s.catalog;
  ResolutionOutcome out;
  out.attack = attack;
  out.location = location;
  out.roll = roll;
  if (const auto* spec = cat.find_attack(attack)) out.attack_bonus = spec->attack_bonus;
  out.attack_total = roll + out.attack_bonus;

  for (const auto& gc : s.gc_placements) {
    if (const auto* spec = cat.find_defense(gc)) out.defense_bonus += spec->bonus_against(attack);
  }
  std::optional<CardId> honeypot;
  if (auto it = s.ic_placements.find(location); it != s.ic_placements.end()) {
    for (const auto& placed : it->second) {
      const auto* spec = cat.find_defense(placed.card);
      if (!spec) continue;
      const int bonus = spec->bonus_against(attack);
      out.defense_bonus += bonus;
      if (bonus == 0) continue;
      if (!placed.revealed && !contains(out.revealed, placed.card)) {
        out.revealed.push_back(placed.card);
      }
      if (spec->special == DefenseSpecial::kHoneypot && !honeypot) honeypot = placed.card;
    }
  }
  auto played = s.play_counts.find(attack);
  out.repeat_penalty = (played != s.play_counts.end() && played->second > 0) ? kRepeatPenalty : 0;
  out.defense_total = kResolutionThreshold + out.defense_bonus + out.repeat_penalty;
  out.success = out.attack_total > out.defense_total;
  if (!out.success) out.honeypot = honeypot;
  return out;
}

bool condition_satisfied(const GameState& s) {
  if (!s.chosen_win_condition) return false;
  const auto* wc = s.catalog->find_win_condition(*s.chosen_win_condition);
  if (!wc) return false;
  for (const auto& r : s.success_history) {
    if (wc->satisfied_by(r.attack, r.location)) return true;
  }
  return false;
}

std::optional<Team> check_win(const GameState& s) {
  if (s.phase == Phase::kFinished) return s.winner;
  return std::nullopt;
}

}  // namespace perihack
