#include "perihack/catalog.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <sstream>

namespace perihack {

int DefenseCardSpec::bonus_against(std::string_view attack) const {
  int total = 0;
  for (const auto& c : counters) {
    if (c.attack == attack) total += c.bonus;
  }
  return total;
}

bool WinConditionSpec::satisfied_by(std::string_view attack,
                                    std::string_view location) const {
  for (const auto& s : satisfiers) {
    if (s.attack != attack) continue;
    if (std::find(s.locations.begin(), s.locations.end(), location) !=
        s.locations.end()) {
      return true;
    }
  }
  return false;
}

namespace {

template <typename T>
const T* find_by_id(const std::vector<T>& items, std::string_view id) {
  auto it = std::find_if(items.begin(), items.end(),
                         [&](const T& item) { return item.id == id; });
  return it == items.end() ? nullptr : &*it;
}

}  // namespace

const LocationSpec* ScenarioCatalog::find_location(std::string_view id) const {
  return find_by_id(locations, id);
}
const AttackCardSpec* ScenarioCatalog::find_attack(std::string_view id) const {
  return find_by_id(attack_cards, id);
}
const DefenseCardSpec* ScenarioCatalog::find_defense(std::string_view id) const {
  return find_by_id(defense_cards, id);
}
const WinConditionSpec* ScenarioCatalog::find_win_condition(
    std::string_view id) const {
  return find_by_id(win_conditions, id);
}

int ScenarioCatalog::total_attack_copies() const {
  int total = 0;
  for (const auto& a : attack_cards) total += a.copies;
  return total;
}

std::string_view to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::kParse: return "parse";
    case ViolationKind::kReference: return "reference";
    case ViolationKind::kCycle: return "cycle";
    case ViolationKind::kCount: return "count";
    case ViolationKind::kDuplicate: return "duplicate";
    case ViolationKind::kShape: return "shape";
    case ViolationKind::kUnreachable: return "unreachable";
  }
  return "unknown";
}

CatalogError::CatalogError(Violation v)
    : std::runtime_error(std::string(to_string(v.kind)) + " error at " +
                         (v.path.empty() ? "/" : v.path) + ": " + v.message),
      violation_(std::move(v)) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

[[noreturn]] void parse_fail(const std::string& path, const std::string& msg) {
  throw CatalogError({ViolationKind::kParse, path, msg});
}

void expect_keys(const Json& obj, const std::string& path,
                 std::initializer_list<std::string_view> allowed) {
  if (!obj.is_object()) parse_fail(path, "expected an object");
  for (const auto& [key, _] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      parse_fail(path + "/" + key, "unknown field '" + key + "'");
    }
  }
}

const Json* field(const Json& obj, const std::string& path, const char* key,
                  bool required) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (required) parse_fail(path + "/" + key, "missing required field");
    return nullptr;
  }
  return &*it;
}

std::string get_string(const Json& obj, const std::string& path, const char* key,
                       bool required = true, std::string fallback = {}) {
  const Json* v = field(obj, path, key, required);
  if (!v) return fallback;
  if (!v->is_string()) parse_fail(path + "/" + key, "expected a string");
  return v->get<std::string>();
}

int get_int(const Json& obj, const std::string& path, const char* key,
            bool required = true, int fallback = 0) {
  const Json* v = field(obj, path, key, required);
  if (!v) return fallback;
  if (!v->is_number_integer()) parse_fail(path + "/" + key, "expected an integer");
  auto wide = v->get<std::int64_t>();
  if (wide < -1'000'000 || wide > 1'000'000) {
    parse_fail(path + "/" + key, "integer out of range");
  }
  return static_cast<int>(wide);
}

bool get_bool(const Json& obj, const std::string& path, const char* key,
              bool fallback) {
  const Json* v = field(obj, path, key, false);
  if (!v) return fallback;
  if (!v->is_boolean()) parse_fail(path + "/" + key, "expected a boolean");
  return v->get<bool>();
}

const Json& get_array(const Json& obj, const std::string& path, const char* key,
                      bool required = true) {
  static const Json kEmpty = Json::array();
  const Json* v = field(obj, path, key, required);
  if (!v) return kEmpty;
  if (!v->is_array()) parse_fail(path + "/" + key, "expected an array");
  return *v;
}

std::vector<std::string> get_string_list(const Json& obj, const std::string& path,
                                         const char* key, bool required = true) {
  const Json& arr = get_array(obj, path, key, required);
  std::vector<std::string> out;
  for (std::size_t i = 0; i < arr.size(); ++i) {
    if (!arr[i].is_string()) {
      parse_fail(path + "/" + key + "/" + std::to_string(i), "expected a string");
    }
    out.push_back(arr[i].get<std::string>());
  }
  return out;
}

template <typename Enum, std::size_t N>
Enum get_enum(const Json& obj, const std::string& path, const char* key,
              const std::pair<std::string_view, Enum> (&names)[N],
              bool required = true, Enum fallback = {}) {
  const Json* v = field(obj, path, key, required);
  if (!v) return fallback;
  if (v->is_string()) {
    auto s = v->get<std::string>();
    for (const auto& [name, value] : names) {
      if (name == s) return value;
    }
  }
  std::string options;
  for (const auto& [name, _] : names) {
    if (!options.empty()) options += ", ";
    options += name;
  }
  parse_fail(path + "/" + key, "expected one of: " + options);
}

constexpr std::pair<std::string_view, LocationKind> kLocationKinds[] = {
    {"physical-premise", LocationKind::kPhysicalPremise},
    {"network-node", LocationKind::kNetworkNode},
};
constexpr std::pair<std::string_view, AttackKind> kAttackKinds[] = {
    {"attack", AttackKind::kAttack},
    {"swap", AttackKind::kSwap},
};
constexpr std::pair<std::string_view, DefenseDeck> kDecks[] = {
    {"GC", DefenseDeck::kGlobal},
    {"IC", DefenseDeck::kIndividual},
};
constexpr std::pair<std::string_view, DefenseSpecial> kSpecials[] = {
    {"none", DefenseSpecial::kNone},
    {"extra-budget", DefenseSpecial::kExtraBudget},
    {"honeypot", DefenseSpecial::kHoneypot},
    {"decoy", DefenseSpecial::kDecoy},
};

template <typename Enum, std::size_t N>
std::string_view name_of(Enum value,
                         const std::pair<std::string_view, Enum> (&names)[N]) {
  for (const auto& [name, v] : names) {
    if (v == value) return name;
  }
  return "?";
}

LocationSpec parse_location(const Json& j, const std::string& path) {
  expect_keys(j, path, {"id", "name", "kind", "ic_slots"});
  LocationSpec loc;
  loc.id = get_string(j, path, "id");
  loc.name = get_string(j, path, "name");
  loc.kind = get_enum(j, path, "kind", kLocationKinds);
  loc.ic_slots = get_int(j, path, "ic_slots");
  return loc;
}

AttackCardSpec parse_attack(const Json& j, const std::string& path) {
  expect_keys(j, path, {"id", "name", "kind", "copies", "attack_bonus", "targets",
                        "prerequisite"});
  AttackCardSpec card;
  card.id = get_string(j, path, "id");
  card.name = get_string(j, path, "name");
  card.kind = get_enum(j, path, "kind", kAttackKinds);
  card.copies = get_int(j, path, "copies");
  card.attack_bonus = get_int(j, path, "attack_bonus", false, 0);
  card.targets = get_string_list(j, path, "targets", false);
  if (const Json* pre = field(j, path, "prerequisite", false); pre && !pre->is_null()) {
    const std::string ppath = path + "/prerequisite";
    expect_keys(*pre, ppath, {"any_of", "same_location"});
    Prerequisite p;
    p.any_of = get_string_list(*pre, ppath, "any_of");
    p.same_location = get_bool(*pre, ppath, "same_location", false);
    card.prerequisite = std::move(p);
  }
  return card;
}

DefenseCardSpec parse_defense(const Json& j, const std::string& path) {
  expect_keys(j, path, {"id", "name", "deck", "copies", "cost", "placements",
                        "counters", "special", "budget_grant"});
  DefenseCardSpec card;
  card.id = get_string(j, path, "id");
  card.name = get_string(j, path, "name");
  card.deck = get_enum(j, path, "deck", kDecks);
  card.copies = get_int(j, path, "copies", false, 1);
  card.cost = get_int(j, path, "cost");
  card.placements = get_string_list(j, path, "placements", false);
  const Json& counters = get_array(j, path, "counters", false);
  for (std::size_t i = 0; i < counters.size(); ++i) {
    const std::string cpath = path + "/counters/" + std::to_string(i);
    expect_keys(counters[i], cpath, {"attack", "bonus"});
    card.counters.push_back(
        {get_string(counters[i], cpath, "attack"), get_int(counters[i], cpath, "bonus")});
  }
  card.special = get_enum(j, path, "special", kSpecials, false, DefenseSpecial::kNone);
  card.budget_grant = get_int(j, path, "budget_grant", false, 0);
  return card;
}

WinConditionSpec parse_win_condition(const Json& j, const std::string& path) {
  expect_keys(j, path, {"id", "title", "satisfiers"});
  WinConditionSpec wc;
  wc.id = get_string(j, path, "id");
  wc.title = get_string(j, path, "title");
  const Json& sats = get_array(j, path, "satisfiers");
  for (std::size_t i = 0; i < sats.size(); ++i) {
    const std::string spath = path + "/satisfiers/" + std::to_string(i);
    expect_keys(sats[i], spath, {"attack", "locations"});
    wc.satisfiers.push_back({get_string(sats[i], spath, "attack"),
                             get_string_list(sats[i], spath, "locations")});
  }
  return wc;
}

template <typename T, typename Fn>
std::vector<T> parse_list(const Json& doc, const char* key, Fn&& parse_one) {
  const Json& arr = get_array(doc, "", key, false);
  std::vector<T> out;
  out.reserve(arr.size());
  for (std::size_t i = 0; i < arr.size(); ++i) {
    out.push_back(parse_one(arr[i], std::string("/") + key + "/" + std::to_string(i)));
  }
  return out;
}

ScenarioCatalog parse_document(const Json& doc) {
  expect_keys(doc, "", {"schema_version", "name", "gc_slots", "locations",
                        "attack_cards", "defense_cards", "win_conditions"});
  const int version = get_int(doc, "", "schema_version");
  if (version != kCatalogSchemaVersion) {
    parse_fail("/schema_version",
               "unsupported schema version " + std::to_string(version));
  }
  ScenarioCatalog cat;
  cat.name = get_string(doc, "", "name", false);
  cat.gc_slots = get_int(doc, "", "gc_slots", false, 3);
  cat.locations = parse_list<LocationSpec>(doc, "locations", parse_location);
  cat.attack_cards = parse_list<AttackCardSpec>(doc, "attack_cards", parse_attack);
  cat.defense_cards = parse_list<DefenseCardSpec>(doc, "defense_cards", parse_defense);
  cat.win_conditions =
      parse_list<WinConditionSpec>(doc, "win_conditions", parse_win_condition);
  return cat;
}

}  // namespace

ScenarioCatalog load_catalog(const Json& document) {
  ScenarioCatalog cat = parse_document(document);
  ValidationReport report = validate_catalog(cat);
  if (!report.empty()) throw CatalogError(report.front());
  return cat;
}

ScenarioCatalog load_catalog(std::string_view document) {
  Json doc;
  try {
    doc = Json::parse(document);
  } catch (const Json::parse_error& e) {
    parse_fail("", e.what());
  }
  return load_catalog(doc);
}

ValidationReport check_catalog_text(std::string_view document) {
  try {
    const Json doc = Json::parse(document);
    return validate_catalog(parse_document(doc));
  } catch (const Json::parse_error& e) {
    return {Violation{ViolationKind::kParse, "", e.what()}};
  } catch (const CatalogError& e) {
    return {e.violation()};
  }
}

ScenarioCatalog load_catalog_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("", "cannot open catalog file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_catalog(std::string_view(buf.str()));
}

// ---------------------------------------------------------------------------
// Serialization

Json to_json(const ScenarioCatalog& cat) {
  Json doc;
  doc["schema_version"] = kCatalogSchemaVersion;
  doc["name"] = cat.name;
  doc["gc_slots"] = cat.gc_slots;

  Json locations = Json::array();
  for (const auto& loc : cat.locations) {
    locations.push_back({{"id", loc.id},
                         {"name", loc.name},
                         {"kind", name_of(loc.kind, kLocationKinds)},
                         {"ic_slots", loc.ic_slots}});
  }
  doc["locations"] = std::move(locations);

  Json attacks = Json::array();
  for (const auto& a : cat.attack_cards) {
    Json j{{"id", a.id},
           {"name", a.name},
           {"kind", name_of(a.kind, kAttackKinds)},
           {"copies", a.copies},
           {"attack_bonus", a.attack_bonus},
           {"targets", a.targets}};
    if (a.prerequisite) {
      j["prerequisite"] = {{"any_of", a.prerequisite->any_of},
                           {"same_location", a.prerequisite->same_location}};
    } else {
      j["prerequisite"] = nullptr;
    }
    attacks.push_back(std::move(j));
  }
  doc["attack_cards"] = std::move(attacks);

  Json defenses = Json::array();
  for (const auto& d : cat.defense_cards) {
    Json counters = Json::array();
    for (const auto& c : d.counters) {
      counters.push_back({{"attack", c.attack}, {"bonus", c.bonus}});
    }
    defenses.push_back({{"id", d.id},
                        {"name", d.name},
                        {"deck", name_of(d.deck, kDecks)},
                        {"copies", d.copies},
                        {"cost", d.cost},
                        {"placements", d.placements},
                        {"counters", std::move(counters)},
                        {"special", name_of(d.special, kSpecials)},
                        {"budget_grant", d.budget_grant}});
  }
  doc["defense_cards"] = std::move(defenses);

  Json wins = Json::array();
  for (const auto& w : cat.win_conditions) {
    Json sats = Json::array();
    for (const auto& s : w.satisfiers) {
      sats.push_back({{"attack", s.attack}, {"locations", s.locations}});
    }
    wins.push_back({{"id", w.id}, {"title", w.title}, {"satisfiers", std::move(sats)}});
  }
  doc["win_conditions"] = std::move(wins);
  return doc;
}

std::string serialize(const ScenarioCatalog& catalog) {
  return to_json(catalog).dump(2) + "\n";
}

std::uint64_t fnv1a(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t catalog_digest(const ScenarioCatalog& catalog) {
  return fnv1a(serialize(catalog));
}

std::string hex_digest(std::uint64_t digest) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(digest));
  return buf;
}

}  // namespace perihack
