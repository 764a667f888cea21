#include <sstream>

#include "perihack/rules.hpp"

namespace perihack {

namespace {

[[noreturn]] void malformed(const std::string& msg) {
  throw RuleError(RuleErrorCode::kMalformedAction, msg);
}

std::string str_field(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) malformed(std::string("missing string field '") + key + "'");
  return it->get<std::string>();
}

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

std::string_view action_type(const Action& action) {
  return std::visit(Overloaded{
                        [](const BlueSetup&) { return "blue_setup"; },
                        [](const ChooseWinCondition&) { return "choose_win_condition"; },
                        [](const PlayAttack&) { return "play_attack"; },
                        [](const SwapCard&) { return "swap_card"; },
                        [](const BuyCards&) { return "buy_cards"; },
                        [](const DeclareWin&) { return "declare_win"; },
                        [](const Pass&) { return "pass"; },
                    },
                    action);
}

Json to_json(const Action& action) {
  Json j{{"type", action_type(action)}};
  std::visit(Overloaded{
                 [&](const BlueSetup& a) {
                   Json list = Json::array();
                   for (const auto& p : a.purchases) {
                     list.push_back({{"card", p.card},
                                     {"location", p.location ? Json(*p.location) : Json(nullptr)}});
                   }
                   j["purchases"] = std::move(list);
                 },
                 [&](const ChooseWinCondition& a) { j["condition"] = a.condition; },
                 [&](const PlayAttack& a) {
                   j["card"] = a.card;
                   j["location"] = a.location;
                 },
                 [&](const SwapCard& a) { j["card"] = a.card; },
                 [&](const BuyCards& a) {
                   j["count"] = a.count;
                   j["discards"] = a.discards;
                 },
                 [](const DeclareWin&) {},
                 [](const Pass&) {},
             },
             action);
  return j;
}

Action action_from_json(const Json& j) {
  if (!j.is_object()) malformed("action must be a JSON object");
  const std::string type = str_field(j, "type");
  if (type == "blue_setup") {
    BlueSetup a;
    auto it = j.find("purchases");
    if (it != j.end()) {
      if (!it->is_array()) malformed("'purchases' must be an array");
      for (const auto& p : *it) {
        if (!p.is_object()) malformed("each purchase must be an object");
        Purchase purchase{str_field(p, "card"), std::nullopt};
        auto loc = p.find("location");
        if (loc != p.end() && !loc->is_null()) {
          if (!loc->is_string()) malformed("purchase location must be a string or null");
          purchase.location = loc->get<std::string>();
        }
        a.purchases.push_back(std::move(purchase));
      }
    }
    return a;
  }
  if (type == "choose_win_condition") return ChooseWinCondition{str_field(j, "condition")};
  if (type == "play_attack") return PlayAttack{str_field(j, "card"), str_field(j, "location")};
  if (type == "swap_card") return SwapCard{str_field(j, "card")};
  if (type == "buy_cards") {
    BuyCards a;
    auto c = j.find("count");
    if (c == j.end() || !c->is_number_integer()) malformed("'count' must be an integer");
    a.count = static_cast<int>(std::clamp<std::int64_t>(c->get<std::int64_t>(), -1000, 1000));
    auto d = j.find("discards");
    if (d != j.end()) {
      if (!d->is_array()) malformed("'discards' must be an array");
      for (const auto& x : *d) {
        if (!x.is_string()) malformed("discards must be card ids");
        a.discards.push_back(x.get<std::string>());
      }
    }
    return a;
  }
  if (type == "declare_win") return DeclareWin{};
  if (type == "pass") return Pass{};
  malformed("unknown action type '" + type + "'");
}

std::string describe(const Action& action) {
  return std::visit(
      Overloaded{
          [](const BlueSetup& a) {
            std::string s = "blue setup:";
            if (a.purchases.empty()) s += " (nothing)";
            for (const auto& p : a.purchases) {
              s += " " + p.card + (p.location ? "@" + *p.location : std::string());
            }
            return s;
          },
          [](const ChooseWinCondition& a) { return "choose " + a.condition; },
          [](const PlayAttack& a) { return "play " + a.card + " on " + a.location; },
          [](const SwapCard& a) { return "swap out " + a.card; },
          [](const BuyCards& a) {
            std::string s = "buy " + std::to_string(a.count);
            for (const auto& d : a.discards) s += " discard " + d;
            return s;
          },
          [](const DeclareWin&) { return std::string("declare win"); },
          [](const Pass&) { return std::string("pass"); },
      },
      action);
}

Json to_json(const GameConfig& c) {
  return {{"rounds", c.rounds},
          {"blue_budget", c.blue_budget},
          {"red_budget", c.red_budget},
          {"attack_card_price", c.attack_card_price},
          {"hand_limit", c.hand_limit},
          {"opening_hand", c.opening_hand},
          {"max_buy", c.max_buy},
          {"blue_midgame_purchases", c.blue_midgame_purchases},
          {"seed", c.seed}};
}

GameConfig config_from_json(const Json& j, GameConfig c) {
  if (!j.is_object()) throw RuleError(RuleErrorCode::kInvalidConfig, "config must be an object");
  for (const auto& [key, value] : j.items()) {
    auto as_int = [&](int& out) {
      if (!value.is_number_integer()) {
        throw RuleError(RuleErrorCode::kInvalidConfig, "'" + key + "' must be an integer");
      }
      out = static_cast<int>(std::clamp<std::int64_t>(value.get<std::int64_t>(), -1'000'000, 1'000'000));
    };
    if (key == "rounds") as_int(c.rounds);
    else if (key == "blue_budget") as_int(c.blue_budget);
    else if (key == "red_budget") as_int(c.red_budget);
    else if (key == "attack_card_price") as_int(c.attack_card_price);
    else if (key == "hand_limit") as_int(c.hand_limit);
    else if (key == "opening_hand") as_int(c.opening_hand);
    else if (key == "max_buy") as_int(c.max_buy);
    else if (key == "blue_midgame_purchases") {
      if (!value.is_boolean()) {
        throw RuleError(RuleErrorCode::kInvalidConfig, "'blue_midgame_purchases' must be a boolean");
      }
      c.blue_midgame_purchases = value.get<bool>();
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !value.is_number_integer()) {
        throw RuleError(RuleErrorCode::kInvalidConfig, "'seed' must be an integer");
      }
      c.seed = value.get<std::uint64_t>();
    } else {
      throw RuleError(RuleErrorCode::kInvalidConfig, "unknown config field '" + key + "'");
    }
  }
  return c;
}

Json to_json(const Event& e) {
  return {{"seq", e.seq}, {"round", e.round}, {"kind", e.kind}, {"data", e.data}};
}

Event event_from_json(const Json& j) {
  Event e;
  e.seq = j.at("seq").get<std::uint64_t>();
  e.round = j.at("round").get<int>();
  e.kind = j.at("kind").get<std::string>();
  e.data = j.at("data");
  return e;
}

Json to_json(const GameState& s) {
  Json ic = Json::object();
  for (const auto& [loc, placed] : s.ic_placements) {
    Json list = Json::array();
    for (const auto& p : placed) list.push_back({{"card", p.card}, {"revealed", p.revealed}});
    ic[loc] = std::move(list);
  }
  Json history = Json::array();
  for (const auto& r : s.success_history) {
    history.push_back({{"attack", r.attack}, {"location", r.location}, {"round", r.round}});
  }
  Json events = Json::array();
  for (const auto& e : s.event_log) events.push_back(to_json(e));
  std::ostringstream rng;
  rng << s.rng;
  return {{"catalog", s.catalog ? hex_digest(catalog_digest(*s.catalog)) : ""},
          {"config", to_json(s.config)},
          {"phase", to_string(s.phase)},
          {"red_dealt", s.red_dealt},
          {"round_index", s.round_index},
          {"progress", {{"attacked", s.progress.attacked}, {"extra_used", s.progress.extra_used}}},
          {"winner", s.winner ? Json(to_string(*s.winner)) : Json(nullptr)},
          {"gc_placements", s.gc_placements},
          {"ic_placements", std::move(ic)},
          {"red_hand", s.red_hand},
          {"attack_deck", s.attack_deck},
          {"discard", s.discard},
          {"red_budget", s.red_budget},
          {"blue_budget", s.blue_budget},
          {"chosen_win_condition",
           s.chosen_win_condition ? Json(*s.chosen_win_condition) : Json(nullptr)},
          {"success_history", std::move(history)},
          {"play_counts", s.play_counts},
          {"events", std::move(events)},
          {"rng", rng.str()}};
}

std::uint64_t state_digest(const GameState& state) { return fnv1a(to_json(state).dump()); }

}  // namespace perihack
