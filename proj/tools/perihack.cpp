#include <CLI11.hpp>

#include <csignal>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "perihack/http_server.hpp"
#include "perihack/session.hpp"
#include "perihack/sim.hpp"

using namespace perihack;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
}

// --catalog wins over PERIHACK_CATALOG, which wins over the built-in catalog.
std::shared_ptr<const ScenarioCatalog> resolve_catalog(const std::string& flag) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv("PERIHACK_CATALOG"); env && *env) path = env;
  }
  if (path.empty()) return std::make_shared<const ScenarioCatalog>(default_catalog());
  return std::make_shared<const ScenarioCatalog>(load_catalog_file(path));
}

PolicyDescriptor policy_arg(const std::string& id, Team team) {
  auto p = parse_policy(id);
  if (!p) throw CLI::ValidationError("unknown policy '" + id + "'");
  if (!plays_team(p->id, team)) {
    throw CLI::ValidationError("policy '" + id + "' cannot play " + std::string(to_string(team)));
  }
  return *p;
}

int cmd_validate(const std::string& path) {
  const auto violations = check_catalog_text(read_file(path));
  if (violations.empty()) {
    std::cout << path << ": ok\n";
    return 0;
  }
  for (const auto& v : violations) {
    std::cout << path << ":" << (v.path.empty() ? "/" : v.path) << ": " << to_string(v.kind) << ": "
              << v.message << "\n";
  }
  std::cout << violations.size() << " violation" << (violations.size() == 1 ? "" : "s") << "\n";
  return 1;
}

struct SimulateArgs {
  int games = 1000;
  std::uint64_t seed = 1;
  std::string red = "greedy-red";
  std::string blue = "budget-blue";
  std::string catalog;
  std::optional<int> rounds;
  std::optional<int> blue_budget;
  bool reinforce = false;
  std::string out;
  std::string format = "text";
  std::string attack_csv;
  std::string defense_csv;
  unsigned threads = 0;
};

int cmd_simulate(const SimulateArgs& a) {
  const auto catalog = resolve_catalog(a.catalog);
  GameConfig config;
  if (a.rounds) config.rounds = *a.rounds;
  if (a.blue_budget) config.blue_budget = *a.blue_budget;
  config.blue_midgame_purchases = a.reinforce;
  if (const auto problems = config_problems(config); !problems.empty()) {
    throw CLI::ValidationError(problems.front());
  }
  const auto report = run_batch(a.games, catalog, config, policy_arg(a.red, Team::kRed),
                                policy_arg(a.blue, Team::kBlue), a.seed, a.threads);
  const std::string json = to_json(report).dump(2) + "\n";
  if (!a.out.empty()) write_file(a.out, json);
  if (!a.attack_csv.empty()) write_file(a.attack_csv, attack_usage_csv(report));
  if (!a.defense_csv.empty()) write_file(a.defense_csv, defense_purchases_csv(report));
  std::cout << (a.format == "json" ? json : format_text(report));
  return 0;
}

int cmd_reach(const std::string& catalog_path) {
  const auto catalog = resolve_catalog(catalog_path);
  const auto results = reachability_check(*catalog);
  std::cout << format_reachability(*catalog, results);
  return 0;
}

int cmd_replay(const std::string& path) {
  const GameState s = replay_transcript(Json::parse(read_file(path)));
  std::cout << "replayed " << s.event_log.size() << " events; phase " << to_string(s.phase);
  if (s.winner) std::cout << "; winner " << to_string(*s.winner);
  std::cout << "; digest " << hex_digest(state_digest(s)) << "\n";
  return 0;
}

int cmd_serve(const std::string& host, int port, const std::string& catalog_path,
              const std::string& snapshots) {
  // Handle termination signals on this thread; the server thread inherits
  // the blocked mask.
  sigset_t signals;
  sigemptyset(&signals);
  sigaddset(&signals, SIGINT);
  sigaddset(&signals, SIGTERM);
  pthread_sigmask(SIG_BLOCK, &signals, nullptr);

  SessionManager sessions(resolve_catalog(catalog_path),
                          snapshots.empty() ? std::nullopt : std::optional<std::filesystem::path>(snapshots));
  HttpServer server(sessions);
  const int bound = server.bind(host, port);
  std::cout << "perihack serving on http://" << host << ":" << bound << std::endl;
  std::thread worker([&] { server.run(); });
  int sig = 0;
  sigwait(&signals, &sig);
  std::cout << "stopping\n";
  server.stop();
  worker.join();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PeriHack: red-vs-blue cyber security board game"};
  app.require_subcommand(1);

  std::string validate_path;
  auto* validate = app.add_subcommand("validate", "Check a catalog document and list every violation");
  validate->add_option("catalog", validate_path, "Catalog JSON file")->required();

  SimulateArgs sim;
  auto* simulate = app.add_subcommand("simulate", "Play a batch of AI-vs-AI games and report balance");
  simulate->add_option("--games,-n", sim.games, "Number of games")->check(CLI::PositiveNumber);
  simulate->add_option("--seed,-s", sim.seed, "Base seed; game i uses seed + i");
  simulate->add_option("--red", sim.red, "Red policy: greedy-red or random");
  simulate->add_option("--blue", sim.blue, "Blue policy: budget-blue or random");
  simulate->add_option("--catalog", sim.catalog, "Catalog file (default: $PERIHACK_CATALOG or built-in)");
  simulate->add_option("--rounds", sim.rounds, "Rounds per game")->check(CLI::NonNegativeNumber);
  simulate->add_option("--blue-budget", sim.blue_budget, "Blue setup coins")->check(CLI::NonNegativeNumber);
  simulate->add_flag("--reinforce", sim.reinforce, "Let blue buy defenses between rounds");
  simulate->add_option("--out,-o", sim.out, "Write the JSON report here");
  simulate->add_option("--format", sim.format, "Console output")->check(CLI::IsMember({"text", "json"}));
  simulate->add_option("--attack-csv", sim.attack_csv, "Write attack usage as CSV");
  simulate->add_option("--defense-csv", sim.defense_csv, "Write defense purchases as CSV");
  simulate->add_option("--threads,-j", sim.threads, "Worker threads (0: all cores)");

  int max_bonus = 5;
  auto* probs = app.add_subcommand("probs", "Print attack success probabilities");
  probs->add_option("--max-bonus", max_bonus, "Largest attack and defense bonus")->check(CLI::Range(0, 20));

  std::string reach_catalog;
  auto* reach = app.add_subcommand("reach", "Shortest attack chain for each win condition");
  reach->add_option("--catalog", reach_catalog, "Catalog file");

  std::string host = "127.0.0.1", serve_catalog, snapshots;
  int port = 8080;
  auto* serve = app.add_subcommand("serve", "Run the HTTP session server");
  serve->add_option("--port,-p", port, "TCP port (0 picks one)")->check(CLI::Range(0, 65535));
  serve->add_option("--host", host, "Address to bind");
  serve->add_option("--catalog", serve_catalog, "Catalog file");
  serve->add_option("--snapshots", snapshots, "Directory for JSON session transcripts");

  std::string transcript_path;
  auto* replay = app.add_subcommand("replay", "Replay a saved session transcript through the engine");
  replay->add_option("transcript", transcript_path, "Transcript JSON file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return cmd_validate(validate_path);
    if (*simulate) return cmd_simulate(sim);
    if (*probs) {
      std::cout << format_probability_table(max_bonus);
      return 0;
    }
    if (*reach) return cmd_reach(reach_catalog);
    if (*serve) return cmd_serve(host, port, serve_catalog, snapshots);
    if (*replay) return cmd_replay(transcript_path);
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const CatalogError& e) {
    std::cerr << "perihack: catalog error at " << (e.path().empty() ? "/" : e.path()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "perihack: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
