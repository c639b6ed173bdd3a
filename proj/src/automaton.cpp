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

#include "stlcov/automaton.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "stlcov/errors.hpp"

namespace stlcov {

std::string to_string(LocationKind k) {
  switch (k) {
    case LocationKind::active:
      return "active";
    case LocationKind::accepting:
      return "accepting";
    case LocationKind::error_sink:
      return "error-sink";
  }
  return "active";
}

LocationKind location_kind_from_string(const std::string& text) {
  if (text == "active") return LocationKind::active;
  if (text == "accepting") return LocationKind::accepting;
  if (text == "error-sink") return LocationKind::error_sink;
  throw SchemaError("unknown verdict '" + text + "'");
}

SymbolicAutomaton::SymbolicAutomaton(VariableSet vars, std::vector<Location> locations,
                                     std::vector<std::size_t> initial, std::vector<std::size_t> final,
                                     std::vector<Transition> transitions)
    : vars_(std::move(vars)),
      locations_(std::move(locations)),
      initial_(std::move(initial)),
      final_(std::move(final)),
      transitions_(std::move(transitions)) {
  for (std::size_t i = 0; i < locations_.size(); ++i)
    if (locations_[i].id != i) throw SchemaError("location ids must be 0..n-1 in order");
  auto check = [&](std::size_t q, const char* what) {
    if (q >= locations_.size()) throw SchemaError(std::string(what) + " refers to unknown location " + std::to_string(q));
  };
  for (auto q : initial_) check(q, "initial");
  for (auto q : final_) check(q, "final");
  std::sort(transitions_.begin(), transitions_.end(), [](const auto& a, const auto& b) { return a.id < b.id; });
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    if (i > 0 && transitions_[i].id == transitions_[i - 1].id)
      throw SchemaError("duplicate transition id " + std::to_string(transitions_[i].id));
    check(transitions_[i].src, "transition source");
    check(transitions_[i].dst, "transition target");
  }
  reindex();
}

void SymbolicAutomaton::reindex() {
  index_.clear();
  out_.assign(locations_.size(), {});
  in_.assign(locations_.size(), {});
  for (std::size_t i = 0; i < transitions_.size(); ++i) {
    const auto& t = transitions_[i];
    index_[t.id] = i;
    out_[t.src].push_back(t.id);
    in_[t.dst].push_back(t.id);
  }
}

const Transition& SymbolicAutomaton::transition(std::size_t id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw ValidationBug("no transition with id " + std::to_string(id));
  return transitions_[it->second];
}

std::size_t SymbolicAutomaton::initial_location() const {
  if (initial_.size() != 1) throw ValidationBug("automaton does not have exactly one initial location");
  return initial_[0];
}

std::vector<std::size_t> SymbolicAutomaton::enabled(std::size_t q, const Valuation& v) const {
  std::vector<std::size_t> out;
  for (auto id : out_.at(q))
    if (evaluate(v, transition(id).guard)) out.push_back(id);
  return out;
}

std::optional<std::size_t> SymbolicAutomaton::error_sink() const {
  for (const auto& l : locations_)
    if (l.kind == LocationKind::error_sink) return l.id;
  return std::nullopt;
}

void SymbolicAutomaton::remove_transition(std::size_t id) {
  auto it = index_.find(id);
  if (it == index_.end()) return;
  transitions_.erase(transitions_.begin() + static_cast<std::ptrdiff_t>(it->second));
  reindex();
}

bool operator==(const SymbolicAutomaton& a, const SymbolicAutomaton& b) {
  return a.vars_ == b.vars_ && a.locations_ == b.locations_ && a.initial_ == b.initial_ && a.final_ == b.final_ &&
         a.transitions_ == b.transitions_ && a.spec_hash_ == b.spec_hash_;
}

ValidationReport validate(const SymbolicAutomaton& a) {
  ValidationReport r;
  const auto& box = a.variables();
  if (a.initial().size() != 1) {
    r.deterministic = false;
    r.witnesses.push_back(std::to_string(a.initial().size()) + " initial locations");
  }
  for (const auto& t : a.transitions()) {
    if (!is_satisfiable(t.guard, box)) {
      r.all_guards_satisfiable = false;
      r.witnesses.push_back("transition " + std::to_string(t.id) + " has unsatisfiable guard '" +
                            to_string(t.guard) + "'");
    }
  }
  for (const auto& loc : a.locations()) {
    const auto& out = a.outgoing(loc.id);
    for (std::size_t i = 0; i < out.size(); ++i)
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        const auto& g1 = a.transition(out[i]).guard;
        const auto& g2 = a.transition(out[j]).guard;
        if (is_satisfiable(g1 && g2, box)) {
          r.deterministic = false;
          r.witnesses.push_back("location " + loc.name + ": transitions " + std::to_string(out[i]) + " and " +
                                std::to_string(out[j]) + " overlap");
        }
      }
    // Every satisfiable cell of the outgoing atoms must imply some guard clause.
    std::set<Atom> atoms;
    for (auto id : out)
      for (const auto& at : a.transition(id).guard.atoms()) atoms.insert(at);
    std::vector<Atom> universe(atoms.begin(), atoms.end());
    for (const auto& m : enumerate_minterms(universe, box, std::max(kDefaultAtomCap, universe.size()))) {
      Clause cell = m.clause(universe);
      bool covered = false;
      for (auto id : out) {
        for (const auto& c : a.transition(id).guard.clauses()) {
          if (std::includes(cell.begin(), cell.end(), c.begin(), c.end())) {
            covered = true;
            break;
          }
        }
        if (covered) break;
      }
      if (!covered) {
        r.complete = false;
        r.witnesses.push_back("location " + loc.name + ": no transition for " + to_string(cell));
      }
    }
  }
  return r;
}

Run induced_run(const SymbolicAutomaton& a, const Signal& w) {
  Run run;
  run.locations.push_back(a.initial_location());
  for (std::size_t t = 0; t < w.size(); ++t) {
    auto en = a.enabled(run.last(), w[t]);
    if (en.size() != 1)
      throw ValidationBug(std::to_string(en.size()) + " transitions enabled at step " + std::to_string(t) +
                          " from location " + a.location(run.last()).name);
    run.transitions.push_back(en[0]);
    run.locations.push_back(a.transition(en[0]).dst);
  }
  return run;
}

void to_json(nlohmann::json& j, const SymbolicAutomaton& a) {
  j = nlohmann::json::object();
  auto& vars = j["variables"] = nlohmann::json::array();
  for (const auto& p : a.variables())
    vars.push_back({{"name", p.name}, {"kind", to_string(p.kind)}, {"lo", p.lo}, {"hi", p.hi}});
  auto& locs = j["locations"] = nlohmann::json::array();
  for (const auto& l : a.locations()) locs.push_back({{"id", l.id}, {"name", l.name}, {"verdict", to_string(l.kind)}});
  j["initial"] = a.initial();
  j["final"] = a.final();
  auto& ts = j["transitions"] = nlohmann::json::array();
  for (const auto& t : a.transitions()) ts.push_back({{"id", t.id}, {"src", t.src}, {"dst", t.dst}, {"guard", t.guard}});
  j["spec_hash"] = a.spec_hash();
}

namespace {

// Runs `f` and prefixes any error with the JSON path.
template <typename F>
auto at_path(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  } catch (const SchemaError& e) {
    throw SchemaError(path + ": " + e.what());
  }
}

const nlohmann::json& field(const nlohmann::json& j, const std::string& path, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw SchemaError(path + ": missing field '" + key + "'");
  return j.at(key);
}

}  // namespace

SymbolicAutomaton automaton_from_json(const nlohmann::json& j) {
  std::vector<VariableProfile> vars;
  const auto& jv = field(j, "$", "variables");
  for (std::size_t i = 0; i < jv.size(); ++i) {
    std::string path = "$.variables[" + std::to_string(i) + "]";
    vars.push_back(at_path(path, [&] {
      return VariableProfile{field(jv[i], path, "name").get<std::string>(),
                             var_kind_from_string(field(jv[i], path, "kind").get<std::string>()),
                             field(jv[i], path, "lo").get<double>(), field(jv[i], path, "hi").get<double>()};
    }));
  }
  std::vector<Location> locs;
  const auto& jl = field(j, "$", "locations");
  for (std::size_t i = 0; i < jl.size(); ++i) {
    std::string path = "$.locations[" + std::to_string(i) + "]";
    locs.push_back(at_path(path, [&] {
      return Location{field(jl[i], path, "id").get<std::size_t>(), field(jl[i], path, "name").get<std::string>(),
                      location_kind_from_string(field(jl[i], path, "verdict").get<std::string>())};
    }));
  }
  std::vector<Transition> ts;
  const auto& jt = field(j, "$", "transitions");
  for (std::size_t i = 0; i < jt.size(); ++i) {
    std::string path = "$.transitions[" + std::to_string(i) + "]";
    ts.push_back(at_path(path, [&] {
      return Transition{field(jt[i], path, "id").get<std::size_t>(), field(jt[i], path, "src").get<std::size_t>(),
                        field(jt[i], path, "dst").get<std::size_t>(),
                        at_path(path + ".guard", [&] { return field(jt[i], path, "guard").get<Predicate>(); })};
    }));
  }
  auto initial = at_path("$.initial", [&] { return field(j, "$", "initial").get<std::vector<std::size_t>>(); });
  auto final = at_path("$.final", [&] { return field(j, "$", "final").get<std::vector<std::size_t>>(); });
  SymbolicAutomaton a = at_path("$", [&] {
    return SymbolicAutomaton(VariableSet(vars), std::move(locs), std::move(initial), std::move(final), std::move(ts));
  });
  if (j.contains("spec_hash")) a.set_spec_hash(at_path("$.spec_hash", [&] { return j.at("spec_hash").get<std::string>(); }));
  return a;
}

SymbolicAutomaton load_automaton(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return automaton_from_json(j);
}

void save_automaton(const SymbolicAutomaton& a, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error("cannot write " + path);
  out << nlohmann::json(a).dump(2) << '\n';
}

std::string fnv1a_hex(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  std::ostringstream os;
  os << std::hex << std::setw(16) << std::setfill('0') << h;
  return os.str();
}

std::string automaton_hash(const SymbolicAutomaton& a) { return fnv1a_hex(nlohmann::json(a).dump()); }

namespace {

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

}  // namespace

std::string export_dot(const SymbolicAutomaton& a, const VisitAnnotation& visits) {
  std::ostringstream os;
  os << "digraph automaton {\n  rankdir=LR;\n  node [style=filled, fontcolor=white];\n";
  os << "  __start [shape=point, style=invis];\n";
  for (const auto& l : a.locations()) {
    auto it = visits.locations.find(l.id);
    bool seen = it != visits.locations.end() && it->second > 0;
    os << "  q" << l.id << " [label=\"" << escape(l.name);
    if (seen) os << "\\n(" << it->second << ")";
    os << "\", fillcolor=" << (seen ? "green" : "red");
    if (l.kind == LocationKind::accepting) os << ", shape=doublecircle";
    if (l.kind == LocationKind::error_sink) os << ", shape=doubleoctagon";
    os << "];\n";
  }
  for (auto q : a.initial()) os << "  __start -> q" << q << ";\n";
  for (const auto& t : a.transitions()) {
    auto it = visits.transitions.find(t.id);
    bool seen = it != visits.transitions.end() && it->second > 0;
    os << "  q" << t.src << " -> q" << t.dst << " [label=\"t" << t.id << ": " << escape(to_string(t.guard));
    if (seen) os << " (" << it->second << ")";
    os << "\", color=" << (seen ? "green" : "red") << "];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace stlcov
