#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "perihack/catalog.hpp"

namespace perihack {

struct ChainStep {
  CardId attack;
  LocationId location;

  auto operator<=>(const ChainStep&) const = default;
};

using AttackChain = std::vector<ChainStep>;

// Shortest-chain search over the (attack, location) prerequisite DAG.
//
// Each attack has at most one prerequisite group, satisfied by any one of its
// members, so a minimal chain is always a single path through the DAG and can
// be found by memoized recursion. Successes already achieved cost nothing.
// Ties resolve to the first option in catalog order.
class ChainPlanner {
 public:
  explicit ChainPlanner(const ScenarioCatalog& catalog);

  // Fewest further plays to land `attack` on `location`, or nullopt.
  std::optional<AttackChain> chain_to(const CardId& attack,
                                      const LocationId& location,
                                      std::span<const ChainStep> achieved = {}) const;

  // Fewest further plays until some satisfier of `condition` has succeeded.
  // Returns an empty chain when a satisfier is already among `achieved`.
  std::optional<AttackChain> chain_to(const WinConditionSpec& condition,
                                      std::span<const ChainStep> achieved = {}) const;

  // Length of chain_to(condition, achieved), or -1 when unreachable.
  int remaining_steps(const WinConditionSpec& condition,
                      std::span<const ChainStep> achieved = {}) const;

  // Whether `attack` at `location` has its prerequisite met by `achieved`.
  bool prerequisite_met(const AttackCardSpec& attack, const LocationId& location,
                        std::span<const ChainStep> achieved) const;

 private:
  const ScenarioCatalog* catalog_;
};

struct ReachabilityResult {
  std::string condition;
  std::optional<AttackChain> shortest_chain;  // nullopt: unreachable

  bool reachable() const { return shortest_chain.has_value(); }
};

std::vector<ReachabilityResult> reachability_check(const ScenarioCatalog& catalog);

// Longest prerequisite path (in attack cards) anywhere in the catalog.
int longest_prerequisite_chain(const ScenarioCatalog& catalog);

// Attack cards with no prerequisite, in catalog order.
std::vector<CardId> standalone_roots(const ScenarioCatalog& catalog);

}  // namespace perihack
