#include <cstdio>
#include <sstream>

#include "perihack/sim.hpp"

namespace perihack {

namespace {

std::string fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

std::string pad(std::string s, std::size_t width) {
  if (s.size() < width) s.append(width - s.size(), ' ');
  return s;
}

std::string lpad(std::string s, std::size_t width) {
  if (s.size() < width) s.insert(0, width - s.size(), ' ');
  return s;
}

}  // namespace

Json to_json(const MatchRecord& r) {
  Json chain = Json::array();
  for (const auto& s : r.declared_chain) {
    chain.push_back({{"attack", s.attack}, {"location", s.location}, {"round", s.round}});
  }
  Json events = Json::array();
  for (const auto& e : r.events) events.push_back(to_json(e));
  return {{"seed", r.seed},
          {"winner", to_string(r.winner)},
          {"rounds_played", r.rounds_played},
          {"chosen_win_condition", r.chosen_win_condition},
          {"declared_chain", std::move(chain)},
          {"defenses_bought", r.defenses_bought},
          {"final_digest", hex_digest(r.final_digest)},
          {"events", std::move(events)}};
}

Json to_json(const BalanceReport& r) {
  Json per = Json::object();
  for (const auto& [id, s] : r.per_condition) {
    per[id] = {{"games", s.games}, {"red_wins", s.red_wins}, {"red_win_rate", s.red_win_rate()}};
  }
  return {{"games", r.games},
          {"red_wins", r.red_wins},
          {"red_win_rate", r.red_win_rate()},
          {"mean_rounds_to_red_victory", r.mean_rounds_to_red_victory()},
          {"per_condition", std::move(per)},
          {"attack_usage", r.attack_usage},
          {"defense_purchases", r.defense_purchases},
          {"red_policy", r.red_policy},
          {"blue_policy", r.blue_policy},
          {"base_seed", r.base_seed},
          {"config", to_json(r.config)},
          {"catalog_digest", r.catalog_digest}};
}

std::string format_text(const BalanceReport& r) {
  std::ostringstream out;
  out << "games: " << r.games << "  (" << r.red_policy << " vs " << r.blue_policy
      << ", seeds " << r.base_seed << ".." << r.base_seed + static_cast<std::uint64_t>(r.games) - 1
      << ", catalog " << r.catalog_digest << ")\n";
  out << "red win rate: " << fixed(r.red_win_rate(), 4) << "  (" << r.red_wins << " wins)\n";
  out << "mean rounds to red victory: " << fixed(r.mean_rounds_to_red_victory(), 2) << "\n\n";

  out << pad("win condition", 24) << lpad("games", 8) << lpad("red wins", 10)
      << lpad("rate", 8) << "\n";
  for (const auto& [id, s] : r.per_condition) {
    out << pad(id.empty() ? "(none)" : id, 24) << lpad(std::to_string(s.games), 8)
        << lpad(std::to_string(s.red_wins), 10) << lpad(fixed(s.red_win_rate(), 3), 8) << "\n";
  }
  out << "\n" << pad("attack card", 24) << lpad("plays", 10) << "\n";
  for (const auto& [id, n] : r.attack_usage) {
    out << pad(id, 24) << lpad(std::to_string(n), 10) << "\n";
  }
  out << "\n" << pad("defense card", 28) << lpad("bought", 10) << "\n";
  for (const auto& [id, n] : r.defense_purchases) {
    out << pad(id, 28) << lpad(std::to_string(n), 10) << "\n";
  }
  return out.str();
}

std::string attack_usage_csv(const BalanceReport& r) {
  std::string out = "attack,plays\n";
  for (const auto& [id, n] : r.attack_usage) out += id + "," + std::to_string(n) + "\n";
  return out;
}

std::string defense_purchases_csv(const BalanceReport& r) {
  std::string out = "defense,purchases\n";
  for (const auto& [id, n] : r.defense_purchases) out += id + "," + std::to_string(n) + "\n";
  return out;
}

std::string format_reachability(const ScenarioCatalog& catalog,
                                const std::vector<ReachabilityResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    const auto* wc = catalog.find_win_condition(r.condition);
    out << pad(r.condition, 24);
    if (!r.reachable()) {
      out << "unreachable";
    } else {
      out << r.shortest_chain->size() << " step" << (r.shortest_chain->size() == 1 ? " " : "s")
          << "  ";
      for (std::size_t i = 0; i < r.shortest_chain->size(); ++i) {
        const auto& s = (*r.shortest_chain)[i];
        out << (i ? " -> " : "") << s.attack << "@" << s.location;
      }
    }
    if (wc) out << "   (" << wc->title << ")";
    out << "\n";
  }
  return out.str();
}

std::string format_probability_table(int max_bonus) {
  std::ostringstream out;
  out << "P(d20 + attack > 10 + defense); rows: attack bonus, columns: defense bonus\n";
  out << lpad("", 6);
  for (int d = 0; d <= max_bonus; ++d) out << lpad("d=" + std::to_string(d), 7);
  out << "\n";
  for (int a = 0; a <= max_bonus; ++a) {
    out << lpad("a=" + std::to_string(a), 6);
    for (int d = 0; d <= max_bonus; ++d) {
      out << lpad(fixed(attack_success_probability(a, d, false), 2), 7);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace perihack
