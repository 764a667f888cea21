#include "perihack/chains.hpp"

#include <algorithm>
#include <climits>
#include <map>
#include <set>

namespace perihack {

namespace {

constexpr int kUnreachable = INT_MAX / 2;

bool contains(const std::vector<LocationId>& v, const LocationId& x) {
  return std::find(v.begin(), v.end(), x) != v.end();
}

// One search over a fixed set of achieved successes.
class Search {
 public:
  Search(const ScenarioCatalog& catalog, std::span<const ChainStep> achieved)
      : catalog_(catalog), achieved_(achieved.begin(), achieved.end()) {}

  int cost(const CardId& attack, const LocationId& location) {
    ChainStep key{attack, location};
    if (achieved_.count(key)) return 0;
    if (auto it = memo_.find(key); it != memo_.end()) {
      return it->second.in_progress ? kUnreachable : it->second.cost;
    }
    memo_[key].in_progress = true;

    int best = kUnreachable;
    std::optional<ChainStep> pred;
    const AttackCardSpec* spec = catalog_.find_attack(attack);
    if (spec && spec->kind == AttackKind::kAttack && spec->copies > 0 &&
        contains(spec->targets, location) && catalog_.find_location(location)) {
      if (!spec->prerequisite) {
        best = 1;
      } else {
        for (const auto& p : spec->prerequisite->any_of) {
          const AttackCardSpec* pre = catalog_.find_attack(p);
          if (!pre) continue;
          auto consider = [&](const LocationId& at) {
            int c = cost(p, at);
            if (c < kUnreachable && c + 1 < best) {
              best = c + 1;
              pred = ChainStep{p, at};
            }
          };
          if (spec->prerequisite->same_location) {
            consider(location);
          } else {
            for (const auto& t : pre->targets) consider(t);
          }
        }
      }
    }
    auto& entry = memo_[key];
    entry = {false, best, pred};
    return best;
  }

  // Plays needed in order, ending with (attack, location).
  AttackChain chain(const CardId& attack, const LocationId& location) {
    AttackChain out;
    ChainStep at{attack, location};
    while (!achieved_.count(at)) {
      out.push_back(at);
      const auto& entry = memo_.at(at);
      if (!entry.pred) break;
      at = *entry.pred;
    }
    std::reverse(out.begin(), out.end());
    return out;
  }

 private:
  struct Entry {
    bool in_progress = false;
    int cost = kUnreachable;
    std::optional<ChainStep> pred;
  };

  const ScenarioCatalog& catalog_;
  std::set<ChainStep> achieved_;
  std::map<ChainStep, Entry> memo_;
};

}  // namespace

ChainPlanner::ChainPlanner(const ScenarioCatalog& catalog) : catalog_(&catalog) {}

std::optional<AttackChain> ChainPlanner::chain_to(
    const CardId& attack, const LocationId& location,
    std::span<const ChainStep> achieved) const {
  Search search(*catalog_, achieved);
  if (search.cost(attack, location) >= kUnreachable) return std::nullopt;
  return search.chain(attack, location);
}

std::optional<AttackChain> ChainPlanner::chain_to(
    const WinConditionSpec& condition, std::span<const ChainStep> achieved) const {
  Search search(*catalog_, achieved);
  int best = kUnreachable;
  const Satisfier* best_sat = nullptr;
  const LocationId* best_loc = nullptr;
  for (const auto& s : condition.satisfiers) {
    for (const auto& loc : s.locations) {
      int c = search.cost(s.attack, loc);
      if (c < best) {
        best = c;
        best_sat = &s;
        best_loc = &loc;
      }
    }
  }
  if (!best_sat) return std::nullopt;
  return search.chain(best_sat->attack, *best_loc);
}

int ChainPlanner::remaining_steps(const WinConditionSpec& condition,
                                  std::span<const ChainStep> achieved) const {
  auto chain = chain_to(condition, achieved);
  return chain ? static_cast<int>(chain->size()) : -1;
}

bool ChainPlanner::prerequisite_met(const AttackCardSpec& attack,
                                    const LocationId& location,
                                    std::span<const ChainStep> achieved) const {
  if (!attack.prerequisite) return true;
  for (const auto& step : achieved) {
    if (std::find(attack.prerequisite->any_of.begin(),
                  attack.prerequisite->any_of.end(),
                  step.attack) == attack.prerequisite->any_of.end()) {
      continue;
    }
    if (!attack.prerequisite->same_location || step.location == location) return true;
  }
  return false;
}

std::vector<ReachabilityResult> reachability_check(const ScenarioCatalog& catalog) {
  ChainPlanner planner(catalog);
  std::vector<ReachabilityResult> out;
  for (const auto& wc : catalog.win_conditions) {
    out.push_back({wc.id, planner.chain_to(wc)});
  }
  return out;
}

int longest_prerequisite_chain(const ScenarioCatalog& catalog) {
  std::map<CardId, int> depth;
  std::set<CardId> visiting;
  auto walk = [&](auto&& self, const AttackCardSpec& a) -> int {
    if (auto it = depth.find(a.id); it != depth.end()) return it->second;
    if (!visiting.insert(a.id).second) return 0;  // cycle; validation reports it
    int d = 1;
    if (a.prerequisite) {
      for (const auto& p : a.prerequisite->any_of) {
        if (const auto* pre = catalog.find_attack(p)) d = std::max(d, 1 + self(self, *pre));
      }
    }
    visiting.erase(a.id);
    depth[a.id] = d;
    return d;
  };
  int longest = 0;
  for (const auto& a : catalog.attack_cards) {
    if (a.kind == AttackKind::kAttack) longest = std::max(longest, walk(walk, a));
  }
  return longest;
}

std::vector<CardId> standalone_roots(const ScenarioCatalog& catalog) {
  std::vector<CardId> out;
  for (const auto& a : catalog.attack_cards) {
    if (a.kind == AttackKind::kAttack && !a.prerequisite) out.push_back(a.id);
  }
  return out;
}

}  // namespace perihack
