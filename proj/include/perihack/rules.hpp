#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "perihack/catalog.hpp"
#include "perihack/chains.hpp"
#include "perihack/rng.hpp"

namespace perihack {

enum class Team { kRed, kBlue };

std::string_view to_string(Team team);
std::optional<Team> team_from_string(std::string_view name);
inline Team opponent(Team t) { return t == Team::kRed ? Team::kBlue : Team::kRed; }

// Resolution threshold: an attack lands when d20 + attack > 10 + defense.
inline constexpr int kResolutionThreshold = 10;
inline constexpr int kDieFaces = 20;
inline constexpr int kRepeatPenalty = 1;

struct GameConfig {
  int rounds = 10;
  int blue_budget = 10;
  int red_budget = 5;
  int attack_card_price = 1;
  int hand_limit = 5;
  int opening_hand = 5;
  int max_buy = 2;
  bool blue_midgame_purchases = false;
  std::uint64_t seed = 0;

  bool operator==(const GameConfig&) const = default;
};

// Empty when the config is usable.
std::vector<std::string> config_problems(const GameConfig& config);
Json to_json(const GameConfig& config);
GameConfig config_from_json(const Json& j, GameConfig base = {});

// ---------------------------------------------------------------------------
// Actions

struct Purchase {
  CardId card;
  std::optional<LocationId> location;  // nullopt for GC cards

  bool operator==(const Purchase&) const = default;
};

struct BlueSetup {
  std::vector<Purchase> purchases;
  bool operator==(const BlueSetup&) const = default;
};
struct ChooseWinCondition {
  std::string condition;
  bool operator==(const ChooseWinCondition&) const = default;
};
struct PlayAttack {
  CardId card;
  LocationId location;
  bool operator==(const PlayAttack&) const = default;
};
// Spends a swap card from the hand to exchange `card` for a fresh draw.
struct SwapCard {
  CardId card;
  bool operator==(const SwapCard&) const = default;
};
struct BuyCards {
  int count = 1;
  std::vector<CardId> discards;
  bool operator==(const BuyCards&) const = default;
};
struct DeclareWin {
  bool operator==(const DeclareWin&) const = default;
};
struct Pass {
  bool operator==(const Pass&) const = default;
};

using Action = std::variant<BlueSetup, ChooseWinCondition, PlayAttack, SwapCard,
                            BuyCards, DeclareWin, Pass>;

std::string_view action_type(const Action& action);
Json to_json(const Action& action);
Action action_from_json(const Json& j);  // throws RuleError(kMalformedAction)
std::string describe(const Action& action);

// ---------------------------------------------------------------------------
// Errors

enum class RuleErrorCode {
  kMalformedAction,
  kPhaseMismatch,
  kIllegalAction,
  kInvalidConfig,
  kInvalidCatalog,
  kDeckExhausted,
  kReplayMismatch,
};

std::string_view to_string(RuleErrorCode code);

class RuleError : public std::runtime_error {
 public:
  RuleError(RuleErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  RuleErrorCode code() const { return code_; }

 private:
  RuleErrorCode code_;
};

// ---------------------------------------------------------------------------
// State

enum class Phase { kBlueSetup, kRedSetup, kRound, kBlueReinforce, kFinished };

std::string_view to_string(Phase phase);

struct PlacedDefense {
  CardId card;
  bool revealed = false;
  bool operator==(const PlacedDefense&) const = default;
};

struct SuccessRecord {
  CardId attack;
  LocationId location;
  int round = 0;
  bool operator==(const SuccessRecord&) const = default;
};

// What red has done in the current round: one attack plus at most one of
// {swap, buy}.
struct RoundProgress {
  bool attacked = false;
  bool extra_used = false;
  bool operator==(const RoundProgress&) const = default;
};

// One entry of the replay log. `data` layout is fixed per `kind`.
struct Event {
  std::uint64_t seq = 0;
  int round = 0;
  std::string kind;
  Json data;
  bool operator==(const Event&) const = default;
};

Json to_json(const Event& event);
Event event_from_json(const Json& j);

struct GameState {
  std::shared_ptr<const ScenarioCatalog> catalog;
  GameConfig config;
  Phase phase = Phase::kBlueSetup;
  bool red_dealt = false;
  int round_index = 0;  // 1-based once rounds begin
  RoundProgress progress;
  std::optional<Team> winner;

  std::vector<CardId> gc_placements;
  std::map<LocationId, std::vector<PlacedDefense>> ic_placements;

  std::vector<CardId> red_hand;
  std::vector<CardId> attack_deck;  // front is the top
  std::vector<CardId> discard;
  int red_budget = 0;
  int blue_budget = 0;

  std::optional<std::string> chosen_win_condition;
  std::vector<SuccessRecord> success_history;
  std::map<CardId, int> play_counts;
  std::vector<Event> event_log;
  Rng rng;

  bool operator==(const GameState&) const = default;
};

// Full, unredacted state as JSON (includes the RNG state).
Json to_json(const GameState& state);
std::uint64_t state_digest(const GameState& state);

// deck + hand + discard == catalog copies for every attack card id.
bool conservation_holds(const GameState& state);

std::vector<ChainStep> achieved_steps(const GameState& state);

// ---------------------------------------------------------------------------
// Engine

GameState new_game(std::shared_ptr<const ScenarioCatalog> catalog, GameConfig config);

// Deal the opening hand. Swap cards met while dealing are set aside and then
// reinserted at uniformly random deck positions.
std::vector<Event> red_setup(GameState& state);

// Team whose decision the game is waiting on; nullopt while the opening hand
// still needs dealing or once the game is finished.
std::optional<Team> to_move(const GameState& state);
bool needs_deal(const GameState& state);

// Applies `action` for the team to move. Throws RuleError and leaves `state`
// untouched when the action is not acceptable.
std::vector<Event> apply_action(GameState& state, const Action& action);

std::vector<Event> blue_setup(GameState& state, std::vector<Purchase> purchases);
std::vector<Event> choose_win_condition(GameState& state, const std::string& condition);

// Why `action` would be rejected for `team`, or nullopt when it is legal.
std::optional<std::string> check_action(const GameState& state, Team team,
                                        const Action& action);

// Every acceptable red action during rounds and win-condition selection.
// Blue setup purchases are combinatorial and are not enumerated: during
// blue-setup this returns nothing, and during a mid-game reinforcement step it
// returns only Pass. Use check_action for those.
std::vector<Action> legal_actions(const GameState& state, Team team);

struct ResolutionOutcome {
  CardId attack;
  LocationId location;
  int roll = 0;
  int attack_bonus = 0;
  int attack_total = 0;
  int defense_bonus = 0;  // GC + IC counters, before the repeat penalty
  int repeat_penalty = 0;
  int defense_total = 0;
  bool success = false;
  std::vector<CardId> revealed;  // face-down ICs that contributed
  std::optional<CardId> honeypot;  // honeypot that caught a failed attack

  bool operator==(const ResolutionOutcome&) const = default;
};

// Pure: the outcome of `attack` on `location` with a given die face.
ResolutionOutcome resolve_attack(const GameState& state, const CardId& attack,
                                 const LocationId& location, int roll);

// Fraction of d20 faces for which roll + attack > 10 + defense (+1 on repeat).
double attack_success_probability(int attack_bonus, int defense_bonus, bool repeat);

bool condition_satisfied(const GameState& state);
std::optional<Team> check_win(const GameState& state);

// ---------------------------------------------------------------------------
// Hidden information

struct VisibleDefense {
  std::optional<CardId> card;  // nullopt: face-down to this viewer
  bool revealed = false;
  bool operator==(const VisibleDefense&) const = default;
};

struct PlayerView {
  Team team = Team::kRed;
  std::shared_ptr<const ScenarioCatalog> catalog;
  GameConfig config;  // seed zeroed
  Phase phase = Phase::kBlueSetup;
  bool red_dealt = false;
  int round_index = 0;
  RoundProgress progress;
  std::optional<Team> to_move;
  std::optional<Team> winner;

  std::vector<CardId> gc_placements;
  std::map<LocationId, std::vector<VisibleDefense>> ic_placements;

  std::optional<std::vector<CardId>> hand;     // red only
  std::optional<std::vector<CardId>> discard;  // red only
  int hand_size = 0;
  int deck_size = 0;
  int discard_size = 0;
  int red_budget = 0;
  int blue_budget = 0;

  std::optional<std::string> chosen_win_condition;  // red, or after red wins
  std::vector<SuccessRecord> success_history;
  std::map<CardId, int> play_counts;
  std::vector<Action> legal_actions;
  std::vector<Event> events;
};

PlayerView player_view(const GameState& state, Team team, bool with_events = true);
Json to_json(const PlayerView& view);

// The form of `event` that `viewer` is allowed to see.
Event redact(const Event& event, Team viewer);

// Re-runs a recorded log from scratch. Throws RuleError(kReplayMismatch) if
// the engine regenerates anything other than the recorded events.
GameState replay_events(std::shared_ptr<const ScenarioCatalog> catalog,
                        const GameConfig& config, const std::vector<Event>& events);

}  // namespace perihack
