// reconfig-calc: command-line front end.
//
//   reconfig-calc <parse|trace|check|bisim|lts> <file(s)> [flags]
//
// Exit codes: 0 success / equivalent / no stuck states, 1 stuck states found
// or not equivalent, 2 usage, I/O, parse or calculus error, 3 state bound hit.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "reconfig/analysis.hpp"
#include "reconfig/ccsdp.hpp"
#include "reconfig/equivalence.hpp"
#include "reconfig/syntax.hpp"

#ifndef RECONFIG_CORPUS_DIR
#define RECONFIG_CORPUS_DIR ""
#endif

namespace fs = std::filesystem;
using nlohmann::json;
using namespace reconfig;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFinding = 1;
constexpr int kExitError = 2;
constexpr int kExitBound = 3;

struct RunConfig {
  std::string calculus;  // empty: take it from the file, else ccsdp
  std::string mode = "syntactic";
  std::size_t bound = MatchMode::kDefaultStateBound;
  unsigned unfold_depth = MatchMode::kDefaultUnfoldDepth;
  std::uint64_t seed = 0;
  std::string format = "text";
  unsigned workers = 1;

  MatchMode match_mode() const {
    if (mode == "congruence") return MatchMode::congruence(unfold_depth);
    if (mode == "bisim") return MatchMode::bisim(bound);
    return MatchMode::syntactic();
  }
};

class UsageError : public Error {
 public:
  using Error::Error;
};

std::optional<fs::path> resolve(const std::string& arg) {
  if (fs::is_regular_file(arg)) return fs::path(arg);
  std::vector<fs::path> dirs;
  if (const char* env = std::getenv("RECONFIG_CALC_CORPUS")) dirs.emplace_back(env);
  if (std::string(RECONFIG_CORPUS_DIR).size() > 0) dirs.emplace_back(RECONFIG_CORPUS_DIR);
  for (const fs::path& d : dirs) {
    for (const fs::path& p : {d / arg, d / (arg + ".proc")}) {
      if (fs::is_regular_file(p)) return p;
    }
  }
  return std::nullopt;
}

std::string read_file(const std::string& arg) {
  auto path = resolve(arg);
  if (!path) throw UsageError("cannot open '" + arg + "'");
  std::ifstream in(*path);
  if (!in) throw UsageError("cannot read '" + path->string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A `# calculus: webpi` comment selects the calculus when no flag is given.
Calculus pick_calculus(const RunConfig& cfg, const std::string& text) {
  if (!cfg.calculus.empty()) return calculus_from_string(cfg.calculus);
  std::istringstream lines(text);
  std::string line;
  while (std::getline(lines, line)) {
    auto pos = line.find("# calculus:");
    if (pos == std::string::npos) continue;
    std::string value = line.substr(pos + 11);
    value.erase(0, value.find_first_not_of(" \t"));
    value.erase(value.find_last_not_of(" \t\r") + 1);
    return calculus_from_string(value);
  }
  return Calculus::CCSdp;
}

Program load(const std::string& arg, const RunConfig& cfg) {
  std::string text = read_file(arg);
  return parse(text, pick_calculus(cfg, text));
}

int cmd_parse(const std::string& file, const RunConfig& cfg) {
  Program p = load(file, cfg);
  Program canonical{normalize(p.main, p.env), p.env, p.calculus};
  if (cfg.format == "json") {
    json defs = json::object();
    for (const auto& [name, body] : p.env.bindings()) defs[name] = pretty_print(body);
    json doc = {{"calculus", std::string(to_string(p.calculus))},
                {"definitions", defs},
                {"main", pretty_print(canonical.main)}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << pretty_print(canonical);
  }
  return kExitOk;
}

int cmd_trace(const std::string& file, const RunConfig& cfg, std::size_t steps,
              const std::string& strategy) {
  Program p = load(file, cfg);
  ReductionTrace t = trace(p.main, p.env, p.calculus, cfg.match_mode(),
                           strategy_from_string(strategy), cfg.seed, steps);
  std::cout << (cfg.format == "json" ? trace_to_json(t) : trace_to_text(t));
  return kExitOk;
}

int cmd_check(const std::string& file, const RunConfig& cfg) {
  Program p = load(file, cfg);
  StateSpace space = explore(p.main, p.env, p.calculus, cfg.match_mode(), cfg.bound, cfg.workers);
  DeadlockReport stuck = find_deadlocks(space);
  Verdict verdict = check_termination(space);

  if (cfg.format == "json") {
    json stuck_states = json::array();
    for (std::size_t s : stuck.states)
      stuck_states.push_back({{"index", s}, {"term", pretty_print(space.lts.states[s])}});
    json doc = {{"calculus", std::string(to_string(p.calculus))},
                {"states", space.lts.state_count()},
                {"edges", space.lts.edge_count()},
                {"truncated", space.truncated},
                {"stuck_states", stuck_states},
                {"termination", {{"verdict", verdict.to_string()}, {"witness", verdict.witness}}}};
    std::cout << doc.dump(2) << "\n";
  } else {
    std::cout << "states: " << space.lts.state_count() << "\n";
    std::cout << "edges: " << space.lts.edge_count() << "\n";
    std::cout << "truncated: " << (space.truncated ? "yes" : "no") << "\n";
    std::cout << "stuck states (incl. deadlocks): " << stuck.states.size();
    if (stuck.within_bound_only) std::cout << " (within bound)";
    std::cout << "\n";
    for (std::size_t s : stuck.states)
      std::cout << "  s" << s << ": " << pretty_print(space.lts.states[s]) << "\n";
    std::cout << "termination: " << verdict.to_string();
    if (!verdict.witness.empty()) {
      std::cout << " (cycle:";
      for (std::size_t s : verdict.witness) std::cout << " s" << s;
      std::cout << ")";
    }
    std::cout << "\n";
  }
  if (!stuck.states.empty()) return kExitFinding;
  if (space.truncated) return kExitBound;
  return kExitOk;
}

int cmd_bisim(const std::string& f1, const std::string& f2, const RunConfig& cfg) {
  Program p1 = load(f1, cfg);
  Program p2 = load(f2, cfg);
  if (p1.calculus != p2.calculus) throw UsageError("both files must use the same calculus");
  // Both programs share one environment; clashing definitions are an error.
  std::map<std::string, Term> merged = p1.env.bindings();
  for (const auto& [name, body] : p2.env.bindings()) {
    auto [it, inserted] = merged.emplace(name, body);
    if (!inserted && !(it->second == body))
      throw UsageError("definition '" + name + "' differs between the two files");
  }
  DefinitionEnv env(std::move(merged));
  bool same = bisim_terms(p1.main, p2.main, env, cfg.bound, p1.calculus, cfg.match_mode());
  if (cfg.format == "json") {
    std::cout << json{{"equivalent", same}}.dump(2) << "\n";
  } else {
    std::cout << (same ? "equivalent" : "not equivalent") << "\n";
  }
  return same ? kExitOk : kExitFinding;
}

int cmd_lts(const std::string& file, const RunConfig& cfg, bool full) {
  Program p = load(file, cfg);
  Lts lts;
  bool truncated = false;
  if (full) {
    lts = build_lts(p.main, p.env, p.calculus, cfg.match_mode(), cfg.bound);
  } else {
    StateSpace space =
        explore(p.main, p.env, p.calculus, cfg.match_mode(), cfg.bound, cfg.workers);
    lts = std::move(space.lts);
    truncated = space.truncated;
  }
  std::cout << (cfg.format == "json" ? lts_to_json(lts, truncated) : export_dot(lts));
  return truncated ? kExitBound : kExitOk;
}

std::size_t default_bound() {
  if (const char* env = std::getenv("RECONFIG_CALC_BOUND")) {
    try {
      std::size_t v = std::stoull(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    std::cerr << "warning: ignoring invalid RECONFIG_CALC_BOUND='" << env << "'\n";
  }
  return MatchMode::kDefaultStateBound;
}

void add_common(CLI::App* cmd, RunConfig& cfg, const std::vector<std::string>& formats) {
  cmd->add_option("--calculus", cfg.calculus, "ccsdp or webpi (default: from file, else ccsdp)")
      ->check(CLI::IsMember({"ccsdp", "webpi"}));
  cmd->add_option("--mode", cfg.mode, "fraction matching mode")
      ->check(CLI::IsMember({"syntactic", "congruence", "bisim"}));
  cmd->add_option("--bound", cfg.bound, "state bound")->check(CLI::PositiveNumber);
  cmd->add_option("--unfold-depth", cfg.unfold_depth, "constant unfolding depth for congruence")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", cfg.seed, "random seed");
  cmd->add_option("--workers", cfg.workers, "exploration threads")->check(CLI::PositiveNumber);
  cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember(formats));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Process calculi workbench for CCS^dp and Webpi-infinity"};
  app.name("reconfig-calc");
  app.require_subcommand(1);

  RunConfig cfg;
  cfg.bound = default_bound();
  std::string file;
  std::string file2;
  std::size_t steps = 10;
  std::string strategy = "random";
  bool full = false;

  auto* parse_cmd = app.add_subcommand("parse", "parse a file and print its normal form");
  parse_cmd->add_option("file", file, "input file or corpus name")->required();
  add_common(parse_cmd, cfg, {"text", "json"});

  auto* trace_cmd = app.add_subcommand("trace", "follow one reduction path");
  trace_cmd->add_option("file", file, "input file or corpus name")->required();
  trace_cmd->add_option("--steps", steps, "maximum number of steps");
  trace_cmd->add_option("--strategy", strategy, "first or random")
      ->check(CLI::IsMember({"first", "random"}));
  add_common(trace_cmd, cfg, {"text", "json"});

  auto* check_cmd = app.add_subcommand("check", "stuck states and termination");
  check_cmd->add_option("file", file, "input file or corpus name")->required();
  add_common(check_cmd, cfg, {"text", "json"});

  auto* bisim_cmd = app.add_subcommand("bisim", "strong bisimilarity of two programs");
  bisim_cmd->add_option("file1", file, "first file")->required();
  bisim_cmd->add_option("file2", file2, "second file")->required();
  add_common(bisim_cmd, cfg, {"text", "json"});

  auto* lts_cmd = app.add_subcommand("lts", "export the state space");
  lts_cmd->add_option("file", file, "input file or corpus name")->required();
  lts_cmd->add_flag("--full", full, "include open input/output transitions");
  add_common(lts_cmd, cfg, {"dot", "json", "text"});  // text means dot here

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitError;
  }
  if (lts_cmd->parsed() && cfg.format == "text") cfg.format = "dot";

  try {
    if (parse_cmd->parsed()) return cmd_parse(file, cfg);
    if (trace_cmd->parsed()) return cmd_trace(file, cfg, steps, strategy);
    if (check_cmd->parsed()) return cmd_check(file, cfg);
    if (bisim_cmd->parsed()) return cmd_bisim(file, file2, cfg);
    if (lts_cmd->parsed()) return cmd_lts(file, cfg, full);
  } catch (const StateBoundExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitBound;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return kExitError;
}
