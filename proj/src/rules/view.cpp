#include "perihack/rules.hpp"

namespace perihack {

namespace {

Json only(const Json& data, std::initializer_list<const char*> keys) {
  Json out = Json::object();
  for (const char* k : keys) {
    if (auto it = data.find(k); it != data.end()) out[k] = *it;
  }
  return out;
}

Json redact_action(const Json& action) {
  const std::string type = action.at("type").get<std::string>();
  if (type == "blue_setup") {
    return {{"type", type}, {"purchases", action.at("purchases").size()}};
  }
  if (type == "buy_cards") {
    return {{"type", type},
            {"count", action.at("count")},
            {"discards", action.at("discards").size()}};
  }
  if (type == "choose_win_condition" || type == "swap_card") return {{"type", type}};
  return action;
}

}  // namespace

// Everything red holds privately (hand, draws, discards, win condition) and
// everything blue holds privately (face-down IC identities) is stripped from
// the opposing team's copy. Sequence numbers are never removed, so both teams
// see a gap-free log.
Event redact(const Event& event, Team viewer) {
  Event out = event;
  const Json& d = event.data;
  if (event.kind == "action") {
    const auto actor = team_from_string(d.at("actor").get<std::string>());
    if (actor != viewer) out.data["action"] = redact_action(d.at("action"));
  } else if (event.kind == "defense_placed") {
    if (viewer == Team::kRed && d.at("deck") == "IC") out.data = only(d, {"deck", "location"});
  } else if (event.kind == "hand_dealt") {
    if (viewer == Team::kBlue) {
      out.data = {{"count", d.at("cards").size()}, {"skipped_swaps", d.at("skipped_swaps")}};
    }
  } else if (event.kind == "win_condition_chosen") {
    if (viewer == Team::kBlue) out.data = Json::object();
  } else if (event.kind == "card_swapped") {
    if (viewer == Team::kBlue) out.data = Json::object();
  } else if (event.kind == "cards_bought") {
    if (viewer == Team::kBlue) {
      out.data = only(d, {"count", "cost", "red_budget"});
      out.data["discarded"] = d.at("discarded").size();
    }
  } else if (event.kind == "game_finished") {
    if (viewer == Team::kBlue && d.at("winner") != "red") out.data.erase("condition");
  }
  return out;
}

PlayerView player_view(const GameState& s, Team team, bool with_events) {
  PlayerView v;
  v.team = team;
  v.catalog = s.catalog;
  v.config = s.config;
  v.config.seed = 0;
  v.phase = s.phase;
  v.red_dealt = s.red_dealt;
  v.round_index = s.round_index;
  v.progress = s.progress;
  v.to_move = to_move(s);
  v.winner = s.winner;
  v.gc_placements = s.gc_placements;
  for (const auto& [loc, placed] : s.ic_placements) {
    auto& out = v.ic_placements[loc];
    for (const auto& p : placed) {
      VisibleDefense vd;
      vd.revealed = p.revealed;
      if (team == Team::kBlue || p.revealed) vd.card = p.card;
      out.push_back(std::move(vd));
    }
  }
  if (team == Team::kRed) {
    v.hand = s.red_hand;
    v.discard = s.discard;
    v.chosen_win_condition = s.chosen_win_condition;
  } else if (s.winner == Team::kRed) {
    v.chosen_win_condition = s.chosen_win_condition;
  }
  v.hand_size = static_cast<int>(s.red_hand.size());
  v.deck_size = static_cast<int>(s.attack_deck.size());
  v.discard_size = static_cast<int>(s.discard.size());
  v.red_budget = s.red_budget;
  v.blue_budget = s.blue_budget;
  v.success_history = s.success_history;
  v.play_counts = s.play_counts;
  v.legal_actions = legal_actions(s, team);
  if (with_events) {
    v.events.reserve(s.event_log.size());
    for (const auto& e : s.event_log) v.events.push_back(redact(e, team));
  }
  return v;
}

Json to_json(const PlayerView& v) {
  Json ic = Json::object();
  for (const auto& [loc, placed] : v.ic_placements) {
    Json list = Json::array();
    for (const auto& p : placed) {
      list.push_back({{"card", p.card ? Json(*p.card) : Json(nullptr)}, {"revealed", p.revealed}});
    }
    ic[loc] = std::move(list);
  }
  Json history = Json::array();
  for (const auto& r : v.success_history) {
    history.push_back({{"attack", r.attack}, {"location", r.location}, {"round", r.round}});
  }
  Json legal = Json::array();
  for (const auto& a : v.legal_actions) legal.push_back(to_json(a));
  Json events = Json::array();
  for (const auto& e : v.events) events.push_back(to_json(e));
  Json config = to_json(v.config);
  config.erase("seed");

  Json j{{"team", to_string(v.team)},
         {"phase", to_string(v.phase)},
         {"red_dealt", v.red_dealt},
         {"round", v.round_index},
         {"rounds", v.config.rounds},
         {"progress", {{"attacked", v.progress.attacked}, {"extra_used", v.progress.extra_used}}},
         {"to_move", v.to_move ? Json(to_string(*v.to_move)) : Json(nullptr)},
         {"winner", v.winner ? Json(to_string(*v.winner)) : Json(nullptr)},
         {"config", std::move(config)},
         {"gc_placements", v.gc_placements},
         {"ic_placements", std::move(ic)},
         {"hand_size", v.hand_size},
         {"deck_size", v.deck_size},
         {"discard_size", v.discard_size},
         {"budgets", {{"red", v.red_budget}, {"blue", v.blue_budget}}},
         {"success_history", std::move(history)},
         {"play_counts", v.play_counts},
         {"legal_actions", std::move(legal)},
         {"events", std::move(events)}};
  if (v.hand) j["hand"] = *v.hand;
  if (v.discard) j["discard"] = *v.discard;
  if (v.chosen_win_condition) j["chosen_win_condition"] = *v.chosen_win_condition;
  return j;
}

GameState replay_events(std::shared_ptr<const ScenarioCatalog> catalog,
                        const GameConfig& config, const std::vector<Event>& events) {
  auto mismatch = [](std::size_t at, const std::string& why) {
    throw RuleError(RuleErrorCode::kReplayMismatch,
                    "replay diverged at event " + std::to_string(at + 1) + ": " + why);
  };
  auto check_prefix = [&](const GameState& s) {
    if (s.event_log.size() > events.size()) mismatch(events.size(), "engine produced extra events");
    for (std::size_t i = 0; i < s.event_log.size(); ++i) {
      if (!(s.event_log[i] == events[i])) mismatch(i, "event differs from the transcript");
    }
  };

  GameState s = new_game(std::move(catalog), config);
  check_prefix(s);
  while (s.event_log.size() < events.size()) {
    const std::size_t i = s.event_log.size();
    const Event& next = events[i];
    if (next.kind == "action") {
      apply_action(s, action_from_json(next.data.at("action")));
    } else if (next.kind == "hand_dealt") {
      red_setup(s);
    } else {
      mismatch(i, "expected an action or a deal, found '" + next.kind + "'");
    }
    check_prefix(s);
  }
  return s;
}

}  // namespace perihack
