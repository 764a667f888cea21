#include <algorithm>
#include <map>
#include <set>

#include "perihack/catalog.hpp"
#include "perihack/chains.hpp"

namespace perihack {

namespace {

class Checker {
 public:
  explicit Checker(const ScenarioCatalog& cat) : cat_(cat) {}

  ValidationReport run() {
    check_locations();
    check_attacks();
    check_defenses();
    check_win_conditions();
    check_cycles();
    check_reachability();
    return std::move(report_);
  }

 private:
  void add(ViolationKind kind, std::string path, std::string message) {
    report_.push_back({kind, std::move(path), std::move(message)});
  }

  template <typename T>
  void check_unique(const std::vector<T>& items, const std::string& list) {
    std::set<std::string> seen;
    for (std::size_t i = 0; i < items.size(); ++i) {
      const std::string path = "/" + list + "/" + std::to_string(i) + "/id";
      if (items[i].id.empty()) add(ViolationKind::kShape, path, "id must be non-empty");
      if (!seen.insert(items[i].id).second) {
        add(ViolationKind::kDuplicate, path, "duplicate id '" + items[i].id + "'");
      }
    }
  }

  void check_location_ref(const LocationId& id, const std::string& path) {
    if (!cat_.find_location(id)) {
      add(ViolationKind::kReference, path, "unknown location '" + id + "'");
    }
  }

  void check_attack_ref(const CardId& id, const std::string& path) {
    if (!cat_.find_attack(id)) {
      add(ViolationKind::kReference, path, "unknown attack card '" + id + "'");
    }
  }

  void check_locations() {
    if (cat_.gc_slots < 0) add(ViolationKind::kCount, "/gc_slots", "gc_slots must be >= 0");
    check_unique(cat_.locations, "locations");
    for (std::size_t i = 0; i < cat_.locations.size(); ++i) {
      if (cat_.locations[i].ic_slots < 0) {
        add(ViolationKind::kCount, "/locations/" + std::to_string(i) + "/ic_slots",
            "ic_slots must be >= 0");
      }
    }
  }

  void check_attacks() {
    check_unique(cat_.attack_cards, "attack_cards");
    for (std::size_t i = 0; i < cat_.attack_cards.size(); ++i) {
      const auto& a = cat_.attack_cards[i];
      const std::string path = "/attack_cards/" + std::to_string(i);
      if (a.copies < 1) {
        add(ViolationKind::kCount, path + "/copies",
            "copies must be >= 1 (got " + std::to_string(a.copies) + ")");
      }
      if (a.kind == AttackKind::kSwap) {
        if (!a.targets.empty()) add(ViolationKind::kShape, path + "/targets", "swap card has no targets");
        if (a.attack_bonus != 0) add(ViolationKind::kShape, path + "/attack_bonus", "swap card has no bonus");
        if (a.prerequisite) add(ViolationKind::kShape, path + "/prerequisite", "swap card has no prerequisite");
        continue;
      }
      if (a.targets.empty()) add(ViolationKind::kShape, path + "/targets", "attack card needs at least one target");
      for (std::size_t t = 0; t < a.targets.size(); ++t) {
        check_location_ref(a.targets[t], path + "/targets/" + std::to_string(t));
      }
      if (!a.prerequisite) continue;
      if (a.prerequisite->any_of.empty()) {
        add(ViolationKind::kShape, path + "/prerequisite/any_of", "prerequisite lists no attack");
      }
      for (std::size_t p = 0; p < a.prerequisite->any_of.size(); ++p) {
        const auto& pid = a.prerequisite->any_of[p];
        const std::string ppath = path + "/prerequisite/any_of/" + std::to_string(p);
        const auto* pre = cat_.find_attack(pid);
        if (!pre) {
          check_attack_ref(pid, ppath);
        } else if (pre->kind == AttackKind::kSwap) {
          add(ViolationKind::kShape, ppath, "prerequisite '" + pid + "' is a swap card");
        }
      }
    }
  }

  void check_defenses() {
    check_unique(cat_.defense_cards, "defense_cards");
    for (std::size_t i = 0; i < cat_.defense_cards.size(); ++i) {
      const auto& d = cat_.defense_cards[i];
      const std::string path = "/defense_cards/" + std::to_string(i);
      if (d.copies < 1) add(ViolationKind::kCount, path + "/copies", "copies must be >= 1");
      if (d.cost < 0) add(ViolationKind::kCount, path + "/cost", "cost must be >= 0");
      if (d.budget_grant < 0) add(ViolationKind::kCount, path + "/budget_grant", "budget_grant must be >= 0");
      if (d.budget_grant != 0 && d.special != DefenseSpecial::kExtraBudget) {
        add(ViolationKind::kShape, path + "/budget_grant", "only extra-budget cards grant coins");
      }
      if (d.deck == DefenseDeck::kGlobal && !d.placements.empty()) {
        add(ViolationKind::kShape, path + "/placements", "GC must be companywide");
      }
      if (d.deck == DefenseDeck::kIndividual && d.placements.empty()) {
        add(ViolationKind::kShape, path + "/placements", "IC needs at least one placement");
      }
      for (std::size_t p = 0; p < d.placements.size(); ++p) {
        check_location_ref(d.placements[p], path + "/placements/" + std::to_string(p));
      }
      for (std::size_t c = 0; c < d.counters.size(); ++c) {
        check_attack_ref(d.counters[c].attack,
                         path + "/counters/" + std::to_string(c) + "/attack");
      }
    }
  }

  void check_win_conditions() {
    check_unique(cat_.win_conditions, "win_conditions");
    for (std::size_t i = 0; i < cat_.win_conditions.size(); ++i) {
      const auto& w = cat_.win_conditions[i];
      const std::string path = "/win_conditions/" + std::to_string(i);
      if (w.satisfiers.empty()) add(ViolationKind::kShape, path + "/satisfiers", "no satisfier");
      for (std::size_t s = 0; s < w.satisfiers.size(); ++s) {
        const auto& sat = w.satisfiers[s];
        const std::string spath = path + "/satisfiers/" + std::to_string(s);
        check_attack_ref(sat.attack, spath + "/attack");
        if (sat.locations.empty()) add(ViolationKind::kShape, spath + "/locations", "no location");
        const auto* attack = cat_.find_attack(sat.attack);
        for (std::size_t l = 0; l < sat.locations.size(); ++l) {
          const std::string lpath = spath + "/locations/" + std::to_string(l);
          check_location_ref(sat.locations[l], lpath);
          if (attack && std::find(attack->targets.begin(), attack->targets.end(),
                                  sat.locations[l]) == attack->targets.end()) {
            add(ViolationKind::kShape, lpath,
                "'" + sat.attack + "' cannot target '" + sat.locations[l] + "'");
          }
        }
      }
    }
  }

  void check_cycles() {
    enum class Mark { kNone, kActive, kDone };
    std::map<CardId, Mark> mark;
    std::vector<CardId> stack;
    std::set<std::set<CardId>> reported;

    auto visit = [&](auto&& self, std::size_t index) -> void {
      const auto& a = cat_.attack_cards[index];
      mark[a.id] = Mark::kActive;
      stack.push_back(a.id);
      if (a.prerequisite) {
        for (const auto& pid : a.prerequisite->any_of) {
          auto it = std::find_if(cat_.attack_cards.begin(), cat_.attack_cards.end(),
                                 [&](const AttackCardSpec& c) { return c.id == pid; });
          if (it == cat_.attack_cards.end()) continue;
          Mark m = mark[pid];
          if (m == Mark::kActive) {
            auto from = std::find(stack.begin(), stack.end(), pid);
            std::set<CardId> members(from, stack.end());
            if (reported.insert(members).second) {
              std::string loop;
              for (auto s = from; s != stack.end(); ++s) loop += *s + " -> ";
              loop += pid;
              add(ViolationKind::kCycle,
                  "/attack_cards/" + std::to_string(index) + "/prerequisite",
                  "prerequisite cycle: " + loop);
            }
          } else if (m == Mark::kNone) {
            self(self, static_cast<std::size_t>(it - cat_.attack_cards.begin()));
          }
        }
      }
      stack.pop_back();
      mark[a.id] = Mark::kDone;
    };
    for (std::size_t i = 0; i < cat_.attack_cards.size(); ++i) {
      if (mark[cat_.attack_cards[i].id] == Mark::kNone) visit(visit, i);
    }
  }

  void check_reachability() {
    auto results = reachability_check(cat_);
    for (std::size_t i = 0; i < results.size(); ++i) {
      if (!results[i].reachable()) {
        add(ViolationKind::kUnreachable, "/win_conditions/" + std::to_string(i),
            "unreachable win condition '" + results[i].condition + "'");
      }
    }
  }

  const ScenarioCatalog& cat_;
  ValidationReport report_;
};

}  // namespace

ValidationReport validate_catalog(const ScenarioCatalog& catalog) {
  return Checker(catalog).run();
}

}  // namespace perihack
