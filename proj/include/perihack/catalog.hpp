#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

namespace perihack {

using Json = nlohmann::ordered_json;
using CardId = std::string;
using LocationId = std::string;

inline constexpr int kCatalogSchemaVersion = 1;

enum class LocationKind { kPhysicalPremise, kNetworkNode };

struct LocationSpec {
  LocationId id;
  std::string name;
  LocationKind kind = LocationKind::kNetworkNode;
  int ic_slots = 0;

  bool operator==(const LocationSpec&) const = default;
};

enum class AttackKind { kAttack, kSwap };

// A prerequisite is satisfied by a prior success of any listed attack. With
// same_location set, that success must have landed on the location now being
// targeted.
struct Prerequisite {
  std::vector<CardId> any_of;
  bool same_location = false;

  bool operator==(const Prerequisite&) const = default;
};

struct AttackCardSpec {
  CardId id;
  std::string name;
  AttackKind kind = AttackKind::kAttack;
  int copies = 1;
  int attack_bonus = 0;
  std::vector<LocationId> targets;
  std::optional<Prerequisite> prerequisite;

  bool operator==(const AttackCardSpec&) const = default;
};

enum class DefenseDeck { kGlobal, kIndividual };
enum class DefenseSpecial { kNone, kExtraBudget, kHoneypot, kDecoy };

struct Counter {
  CardId attack;
  int bonus = 0;

  bool operator==(const Counter&) const = default;
};

struct DefenseCardSpec {
  CardId id;
  std::string name;
  DefenseDeck deck = DefenseDeck::kIndividual;
  int copies = 1;
  int cost = 0;
  std::vector<LocationId> placements;  // empty for GC: companywide
  std::vector<Counter> counters;
  DefenseSpecial special = DefenseSpecial::kNone;
  int budget_grant = 0;  // only meaningful for kExtraBudget

  int bonus_against(std::string_view attack) const;
  bool operator==(const DefenseCardSpec&) const = default;
};

struct Satisfier {
  CardId attack;
  std::vector<LocationId> locations;

  bool operator==(const Satisfier&) const = default;
};

struct WinConditionSpec {
  std::string id;
  std::string title;
  std::vector<Satisfier> satisfiers;

  bool satisfied_by(std::string_view attack, std::string_view location) const;
  bool operator==(const WinConditionSpec&) const = default;
};

struct ScenarioCatalog {
  std::string name;
  int gc_slots = 3;
  std::vector<LocationSpec> locations;
  std::vector<AttackCardSpec> attack_cards;
  std::vector<DefenseCardSpec> defense_cards;
  std::vector<WinConditionSpec> win_conditions;

  const LocationSpec* find_location(std::string_view id) const;
  const AttackCardSpec* find_attack(std::string_view id) const;
  const DefenseCardSpec* find_defense(std::string_view id) const;
  const WinConditionSpec* find_win_condition(std::string_view id) const;

  int total_attack_copies() const;

  bool operator==(const ScenarioCatalog&) const = default;
};

enum class ViolationKind {
  kParse,
  kReference,
  kCycle,
  kCount,
  kDuplicate,
  kShape,
  kUnreachable,
};

std::string_view to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::string path;  // JSON-pointer style, e.g. /attack_cards/3/targets/0
  std::string message;

  bool operator==(const Violation&) const = default;
};

using ValidationReport = std::vector<Violation>;

class CatalogError : public std::runtime_error {
 public:
  explicit CatalogError(Violation v);

  ViolationKind kind() const { return violation_.kind; }
  const std::string& path() const { return violation_.path; }
  const Violation& violation() const { return violation_; }

 private:
  Violation violation_;
};

// Parses and fully validates a catalog document. Throws CatalogError carrying
// the first violation found.
ScenarioCatalog load_catalog(std::string_view document);
ScenarioCatalog load_catalog(const Json& document);
ScenarioCatalog load_catalog_file(const std::string& path);

Json to_json(const ScenarioCatalog& catalog);
// Canonical text form: two-space indent, trailing newline.
std::string serialize(const ScenarioCatalog& catalog);

ValidationReport validate_catalog(const ScenarioCatalog& catalog);

// Every violation in a catalog document. A document that does not parse
// reports only the parse failure.
ValidationReport check_catalog_text(std::string_view document);

// Built from the embedded copy of catalog/default.json.
const ScenarioCatalog& default_catalog();
std::string_view default_catalog_text();

// FNV-1a over the canonical serialization.
std::uint64_t catalog_digest(const ScenarioCatalog& catalog);
std::string hex_digest(std::uint64_t digest);
std::uint64_t fnv1a(std::string_view bytes);

}  // namespace perihack
