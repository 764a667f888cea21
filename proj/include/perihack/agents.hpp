#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "perihack/rules.hpp"

namespace perihack {

// Machine players. None of these heuristics are part of the game rules; they
// exist to drive simulations and to give a human an opponent.
enum class PolicyId { kRandom, kGreedyRed, kBudgetBlue };

struct PolicyDescriptor {
  PolicyId id = PolicyId::kRandom;
  // greedy-red: chance of playing a uniformly random legal action instead.
  double exploration = 0.0;
  // budget-blue: weight of total (not just newly covered) attacks per coin.
  double bonus_weight = 0.25;

  bool operator==(const PolicyDescriptor&) const = default;
};

// Salts for the per-side decision streams derived from a game seed. Shared by
// the simulator and the session server so both replay the same choices.
inline constexpr std::uint64_t kRedPolicyStream = 0x7265642d706f6cULL;
inline constexpr std::uint64_t kBluePolicyStream = 0x626c75652d706fULL;

std::string_view to_string(PolicyId id);
std::optional<PolicyDescriptor> parse_policy(std::string_view id);
bool plays_team(PolicyId id, Team team);

// Red's move: a win condition during red setup, otherwise a round action.
Action decide_red(const PlayerView& view, const PolicyDescriptor& policy, Rng& rng);

// Blue's purchase list at setup, or a reinforcement step (Pass when nothing
// is bought).
Action decide_blue_setup(const PlayerView& view, const PolicyDescriptor& policy, Rng& rng);

// Dispatches on the view's team.
Action decide(const PlayerView& view, const PolicyDescriptor& policy, Rng& rng);

}  // namespace perihack
