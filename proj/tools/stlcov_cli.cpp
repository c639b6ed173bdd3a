// Copyright 2026 The stlcov Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// stlcov: compile specifications, monitor traces and run test campaigns.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 validation
// failure, 3 campaign ended with its objective unmet.

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stlcov/compiler.hpp"
#include "stlcov/engine.hpp"
#include "stlcov/errors.hpp"
#include "stlcov/monitor.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace stlcov;

namespace {

constexpr int kOk = 0, kUsage = 1, kInvalid = 2, kUnmet = 3;

// Thrown to leave a command with a specific exit code.
struct Exit {
  int code;
  std::string message;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Exit{kUsage, "cannot open " + path};
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Exit{kUsage, "cannot write " + path};
  out << text;
}

IaStlSpec load_spec(const std::string& path) {
  std::string text = read_file(path);
  try {
    return parse_spec(text);
  } catch (const ParseError& e) {
    throw Exit{kUsage, path + ":" + e.what()};
  }
}

SymbolicAutomaton compile_checked(const IaStlSpec& spec) {
  SymbolicAutomaton a;
  try {
    a = compile(spec);
  } catch (const UnsupportedFormula& e) {
    throw Exit{kUsage, std::string("unsupported formula: ") + e.what()};
  } catch (const MixedAtom& e) {
    throw Exit{kUsage, e.what()};
  } catch (const CapExceeded& e) {
    throw Exit{kUsage, e.what()};
  }
  return a;
}

SymbolicAutomaton load_checked(const std::string& path) {
  SymbolicAutomaton a;
  try {
    a = load_automaton(path);
  } catch (const Error& e) {
    throw Exit{kInvalid, e.what()};
  }
  ValidationReport r = validate(a);
  if (!r.ok()) {
    std::string why = path + " is not a valid automaton";
    for (const auto& w : r.witnesses) why += "\n  " + w;
    throw Exit{kInvalid, why};
  }
  return a;
}

// Campaign settings gathered from the run-config file and flags.
struct RunOptions {
  std::string config;
  std::string spec;
  std::string automaton;
  std::string sut;
  std::string sut_cmd;
  double alpha = 0.5;
  long long timeout_ms = 10000;
  long long budget = -1;
  std::string criterion = "location";
  std::string policy = "nearest-first";
  std::uint64_t seed = 0;
  std::size_t swarm = 0;
  std::size_t iters = 0;
  std::size_t max_length = 32;
  std::size_t length = 3;
  bool carry_pruning = false;
  std::string out;
  std::string dot;
};

void add_run_options(CLI::App* cmd, RunOptions& o) {
  cmd->add_option("--config", o.config, "run-config JSON file");
  cmd->add_option("--spec", o.spec, "specification file");
  cmd->add_option("--automaton", o.automaton, "compiled automaton JSON (instead of --spec)");
  cmd->add_option("--sut", o.sut, "builtin system: s1, s2, leaky_integrator");
  cmd->add_option("--sut-cmd", o.sut_cmd, "external system command line");
  cmd->add_option("--alpha", o.alpha, "leaky_integrator coefficient");
  cmd->add_option("--timeout-ms", o.timeout_ms, "external system timeout per simulation");
  cmd->add_option("--budget", o.budget, "simulation budget (negative: unlimited)");
  cmd->add_option("--criterion", o.criterion, "location or transition");
  cmd->add_option("--policy", o.policy, "nearest-first, id-order or seeded-random");
  cmd->add_option("--seed", o.seed, "master seed");
  cmd->add_option("--swarm", o.swarm, "PSO swarm size");
  cmd->add_option("--iters", o.iters, "PSO iterations");
  cmd->add_option("--max-length", o.max_length, "trace length cap for adaptive runs");
  cmd->add_option("--length", o.length, "trace length for falsify and random");
  cmd->add_flag("--carry-pruning", o.carry_pruning, "keep pruned transitions across targets");
  cmd->add_option("--out", o.out, "report JSON path");
  cmd->add_option("--dot", o.dot, "annotated DOT path");
}

// Fills options left at their defaults from the run-config file. Paths in
// the file are relative to the file.
void merge_config(RunOptions& o, const CLI::App* cmd, AdaptiveConfig& c) {
  json j = json::object();
  fs::path base;
  if (!o.config.empty()) {
    try {
      j = json::parse(read_file(o.config));
    } catch (const json::exception& e) {
      throw Exit{kUsage, o.config + ": " + e.what()};
    }
    base = fs::path(o.config).parent_path();
  }
  auto unset = [&](const char* flag) { return cmd->count(flag) == 0; };
  auto path = [&](const std::string& p) { return (base / p).string(); };
  try {
    if (unset("--spec") && j.contains("spec")) o.spec = path(j["spec"]);
    if (unset("--automaton") && j.contains("automaton")) o.automaton = path(j["automaton"]);
    if (j.contains("sut")) {
      const json& s = j["sut"];
      if (unset("--sut") && s.contains("builtin")) o.sut = s["builtin"];
      if (unset("--alpha") && s.contains("params")) o.alpha = s["params"].value("alpha", o.alpha);
      if (unset("--sut-cmd") && s.contains("command")) {
        std::string cmdline;
        for (const auto& part : s["command"]) cmdline += (cmdline.empty() ? "" : " ") + part.get<std::string>();
        o.sut_cmd = cmdline;
      }
      if (unset("--timeout-ms") && s.contains("timeout_ms")) o.timeout_ms = s["timeout_ms"];
    }
    if (unset("--budget") && j.contains("budget")) o.budget = j["budget"].is_null() ? -1 : j["budget"].get<long long>();
    if (unset("--criterion") && j.contains("criterion")) o.criterion = j["criterion"];
    if (unset("--policy") && j.contains("policy")) o.policy = j["policy"];
    if (unset("--seed") && j.contains("seed")) o.seed = j["seed"];
    if (unset("--max-length") && j.contains("max_trace_length")) o.max_length = j["max_trace_length"];
    if (unset("--length") && j.contains("trace_length")) o.length = j["trace_length"];
    if (unset("--carry-pruning") && j.contains("carry_pruning")) o.carry_pruning = j["carry_pruning"];
    if (unset("--out") && j.contains("out")) o.out = path(j["out"]);
    if (unset("--dot") && j.contains("dot")) o.dot = path(j["dot"]);
    if (j.contains("pso")) {
      const json& p = j["pso"];
      c.pso.swarm_size = p.value("swarm_size", c.pso.swarm_size);
      c.pso.max_iterations = p.value("max_iterations", c.pso.max_iterations);
      c.pso.inertia = p.value("inertia", c.pso.inertia);
      c.pso.cognitive = p.value("cognitive", c.pso.cognitive);
      c.pso.social = p.value("social", c.pso.social);
      c.pso.velocity_clamp = p.value("velocity_clamp", c.pso.velocity_clamp);
    }
  } catch (const json::exception& e) {
    throw Exit{kUsage, "bad run config: " + std::string(e.what())};
  }
  if (o.swarm) c.pso.swarm_size = o.swarm;
  if (o.iters) c.pso.max_iterations = o.iters;
  if (o.budget >= 0) c.budget = o.budget;
  c.seed = o.seed;
  c.max_trace_length = o.max_length;
  c.carry_pruning = o.carry_pruning;
  try {
    c.criterion = criterion_kind_from_string(o.criterion);
    c.policy = target_policy_from_string(o.policy);
  } catch (const SchemaError& e) {
    throw Exit{kUsage, e.what()};
  }
  if (c.pso.swarm_size == 0 || c.pso.max_iterations == 0) throw Exit{kUsage, "PSO sizes must be positive"};
}

std::vector<std::string> split_words(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

std::unique_ptr<SystemModel> make_sut(const RunOptions& o, const VariableSet& vars) {
  if (!o.sut.empty() && !o.sut_cmd.empty()) throw Exit{kUsage, "give either --sut or --sut-cmd"};
  if (!o.sut_cmd.empty())
    return external(split_words(o.sut_cmd), vars.inputs(), vars.outputs(), std::chrono::milliseconds(o.timeout_ms));
  if (o.sut.empty()) throw Exit{kUsage, "no system under test given"};
  try {
    return builtin(o.sut, {{"alpha", o.alpha}});
  } catch (const UnknownModel& e) {
    throw Exit{kUsage, e.what()};
  }
}

std::string percent_line(const CoverageLedger& l, const std::string& what) {
  std::ostringstream os;
  Rational r = l.ratio();
  os << what << " coverage: " << r.percent() << "% (" << l.satisfied().size() << "/" << l.criterion().requirements.size()
     << ")";
  return os.str();
}

VisitAnnotation annotation(const CampaignReport& r) {
  VisitAnnotation v;
  for (auto [id, n] : r.locations.counts())
    if (n) v.locations[id] = n;
  for (auto [id, n] : r.transitions.counts())
    if (n) v.transitions[id] = n;
  return v;
}

int cmd_compile(const std::string& spec_path, const std::string& out, const std::string& dot) {
  SymbolicAutomaton a = compile_checked(load_spec(spec_path));
  ValidationReport r = validate(a);
  if (!r.ok()) {
    std::string why = "compiled automaton failed validation";
    for (const auto& w : r.witnesses) why += "\n  " + w;
    throw Exit{kInvalid, why};
  }
  if (!out.empty()) save_automaton(a, out);
  if (!dot.empty()) write_file(dot, export_dot(a));
  std::cout << "locations: " << a.num_locations() << "\ntransitions: " << a.num_transitions() << "\n";
  return kOk;
}

int cmd_validate(const std::string& path) {
  SymbolicAutomaton a = load_checked(path);
  std::cout << "ok: " << a.num_locations() << " locations, " << a.num_transitions() << " transitions\n";
  return kOk;
}

int cmd_monitor(const std::string& spec_path, const std::string& trace_path) {
  IaStlSpec spec = load_spec(spec_path);
  std::ifstream in(trace_path);
  if (!in) throw Exit{kUsage, "cannot open " + trace_path};
  Signal w;
  try {
    w = read_trace_csv(in, spec.variables);
  } catch (const Error& e) {
    throw Exit{kUsage, trace_path + ": " + e.what()};
  }
  if (w.empty()) throw Exit{kUsage, trace_path + ": trace has no steps"};
  Robustness rho = robustness(spec.formula, w, 0);
  std::cout << "robustness: " << std::setprecision(17) << rho << "\nverdict: " << to_string(verdict(spec.formula, w))
            << "\n";
  return kOk;
}

struct Loaded {
  std::optional<IaStlSpec> spec;
  SymbolicAutomaton automaton;
};

Loaded load_target(const RunOptions& o, bool need_spec) {
  Loaded l;
  if (!o.spec.empty()) {
    l.spec = load_spec(o.spec);
    if (!o.automaton.empty()) {
      l.automaton = load_checked(o.automaton);
      if (l.automaton.spec_hash() != spec_hash(*l.spec)) throw Exit{kInvalid, "automaton was compiled from another spec"};
    } else {
      l.automaton = compile_checked(*l.spec);
    }
  } else if (!o.automaton.empty() && !need_spec) {
    l.automaton = load_checked(o.automaton);
  } else {
    throw Exit{kUsage, need_spec ? "--spec is required" : "give --spec or --automaton"};
  }
  return l;
}

void emit(const RunOptions& o, const json& report) {
  if (!o.out.empty()) write_file(o.out, report.dump(2) + "\n");
}

int cmd_campaign(const std::string& mode, RunOptions& o, const CLI::App* cmd) {
  AdaptiveConfig c;
  merge_config(o, cmd, c);
  if (mode == "falsify") {
    Loaded l = load_target(o, true);
    auto sut = make_sut(o, l.spec->variables);
    FalsifyResult r = falsify_global(*l.spec, *sut, c, o.length);
    emit(o, json(r));
    std::cout << "witness: " << (r.witness ? "found" : "none") << "\nrobustness: " << r.robustness
              << "\nsimulations: " << r.simulations << "\nwall time: " << std::fixed << std::setprecision(3)
              << r.wall_seconds << " s\n";
    if (r.witness) write_trace_csv(std::cout, *r.witness);
    return r.witness ? kOk : kUnmet;
  }
  Loaded l = load_target(o, false);
  auto sut = make_sut(o, l.automaton.variables());
  CampaignReport r;
  if (mode == "random") {
    if (o.budget < 0 && !c.budget) throw Exit{kUsage, "random testing needs --budget"};
    r = random_testing(l.automaton, *sut, c, o.length);
  } else if (c.criterion == CriterionKind::transition) {
    r = transition_coverage_campaign(l.automaton, *sut, c);
  } else {
    r = adaptive_testing(l.automaton, *sut, c);
  }
  emit(o, json(r));
  if (!o.dot.empty()) write_file(o.dot, export_dot(l.automaton, annotation(r)));
  std::cout << percent_line(r.locations, "location") << "\n"
            << percent_line(r.transitions, "transition") << "\n"
            << "simulations: " << r.simulations << "\n"
            << "wall time: " << std::fixed << std::setprecision(3) << r.wall_seconds << " s\n";
  if (mode == "random") return kOk;
  // unmet: some requirement is neither visited nor shown unreachable
  for (std::size_t id : r.ledger().criterion().requirements)
    if (!r.ledger().covers(id) && !r.unreachable.count(id)) return kUnmet;
  return kOk;
}

int cmd_report(const std::string& in, const std::string& automaton, const std::string& dot) {
  SymbolicAutomaton a = load_checked(automaton);
  json j;
  try {
    j = json::parse(read_file(in));
  } catch (const json::exception& e) {
    throw Exit{kUsage, in + ": " + e.what()};
  }
  if (j.contains("automaton_hash") && j["automaton_hash"] != automaton_hash(a))
    throw Exit{kInvalid, in + " was produced for a different automaton"};
  VisitAnnotation v;
  try {
    for (const char* key : {"locations", "transitions"}) {
      if (!j.contains(key)) continue;
      const json counts = j[key].value("counts", json::object());
      for (const auto& [id, n] : counts.items()) {
        std::size_t k = std::stoul(id), count = n.get<std::size_t>();
        if (count == 0) continue;
        (std::string(key) == "locations" ? v.locations : v.transitions)[k] = count;
      }
    }
  } catch (const std::exception& e) {
    throw Exit{kInvalid, in + ": malformed counts: " + e.what()};
  }
  std::string text = export_dot(a, v);
  if (dot.empty())
    std::cout << text;
  else
    write_file(dot, text);
  return kOk;
}

int cmd_strategy(const std::string& spec_path, const std::string& automaton, long long target, const std::string& out,
                 const std::string& dot) {
  RunOptions o;
  o.spec = spec_path;
  o.automaton = automaton;
  SymbolicAutomaton a = load_target(o, false).automaton;
  std::size_t q = target < 0 ? a.error_sink().value_or(a.num_locations()) : static_cast<std::size_t>(target);
  if (q >= a.num_locations()) throw Exit{kUsage, "no such target location"};
  auto s = build_strategy(a, {q});
  if (!s) {
    std::cout << "no cooperative strategy reaches " << a.location(q).name << "\n";
    return kUnmet;
  }
  if (!out.empty()) write_file(out, json(*s).dump(2) + "\n");
  if (!dot.empty()) write_file(dot, export_dot(*s, a));
  std::cout << "winning region: " << s->locations.size() << " locations, " << s->edges.size() << " strategy edges\n";
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Specification-coverage test generation for discrete-time systems"};
  app.require_subcommand(1);

  std::string spec, out, dot, trace, in, automaton;
  long long target = -1;

  auto* compile_cmd = app.add_subcommand("compile", "compile a specification to a symbolic automaton");
  compile_cmd->add_option("--spec", spec, "specification file")->required();
  compile_cmd->add_option("--out", out, "automaton JSON path");
  compile_cmd->add_option("--dot", dot, "DOT path");

  auto* validate_cmd = app.add_subcommand("validate", "check a stored automaton");
  validate_cmd->add_option("--automaton", automaton, "automaton JSON")->required();

  auto* monitor_cmd = app.add_subcommand("monitor", "robustness and verdict of a trace");
  monitor_cmd->add_option("--spec", spec, "specification file")->required();
  monitor_cmd->add_option("--trace", trace, "CSV trace with a leading t column")->required();

  RunOptions run;
  auto* adaptive_cmd = app.add_subcommand("adaptive", "adaptive coverage campaign");
  auto* falsify_cmd = app.add_subcommand("falsify", "robustness-guided falsification");
  auto* random_cmd = app.add_subcommand("random", "uniform random testing");
  for (auto* c : {adaptive_cmd, falsify_cmd, random_cmd}) add_run_options(c, run);

  auto* report_cmd = app.add_subcommand("report", "annotated DOT from a stored report");
  report_cmd->add_option("--in", in, "report JSON")->required();
  report_cmd->add_option("--automaton", automaton, "automaton JSON the report was produced for")->required();
  report_cmd->add_option("--dot", dot, "DOT path (default: standard output)");

  auto* strategy_cmd = app.add_subcommand("strategy", "cooperative strategy towards one location");
  strategy_cmd->add_option("--spec", spec, "specification file");
  strategy_cmd->add_option("--automaton", automaton, "automaton JSON");
  strategy_cmd->add_option("--target", target, "target location id (default: the error sink)");
  strategy_cmd->add_option("--out", out, "strategy JSON path");
  strategy_cmd->add_option("--dot", dot, "strategy DOT path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*compile_cmd) return cmd_compile(spec, out, dot);
    if (*validate_cmd) return cmd_validate(automaton);
    if (*monitor_cmd) return cmd_monitor(spec, trace);
    if (*adaptive_cmd) return cmd_campaign("adaptive", run, adaptive_cmd);
    if (*falsify_cmd) return cmd_campaign("falsify", run, falsify_cmd);
    if (*random_cmd) return cmd_campaign("random", run, random_cmd);
    if (*report_cmd) return cmd_report(in, automaton, dot);
    if (*strategy_cmd) return cmd_strategy(spec, automaton, target, out, dot);
  } catch (const Exit& e) {
    std::cerr << "stlcov: " << e.message << "\n";
    return e.code;
  } catch (const std::exception& e) {
    std::cerr << "stlcov: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
