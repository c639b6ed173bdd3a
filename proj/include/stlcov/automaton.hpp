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

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "stlcov/predicate.hpp"
#include "stlcov/signal.hpp"

namespace stlcov {

enum class LocationKind { active, accepting, error_sink };

std::string to_string(LocationKind k);
LocationKind location_kind_from_string(const std::string& text);

struct Location {
  std::size_t id = 0;
  std::string name;
  LocationKind kind = LocationKind::active;

  friend bool operator==(const Location&, const Location&) = default;
};

struct Transition {
  std::size_t id = 0;
  std::size_t src = 0;
  std::size_t dst = 0;
  Predicate guard;

  friend bool operator==(const Transition&, const Transition&) = default;
};

/// q0, δ1, q1, ..., δn, qn.
struct Run {
  std::vector<std::size_t> locations;
  std::vector<std::size_t> transitions;

  std::size_t steps() const { return transitions.size(); }
  std::size_t last() const { return locations.back(); }
  friend bool operator==(const Run&, const Run&) = default;
};

/// (X, Q, init, final, Δ). Location ids are 0..|Q|-1; transition ids are
/// stable and survive removal of other transitions.
class SymbolicAutomaton {
 public:
  SymbolicAutomaton() = default;
  SymbolicAutomaton(VariableSet vars, std::vector<Location> locations, std::vector<std::size_t> initial,
                    std::vector<std::size_t> final, std::vector<Transition> transitions);

  const VariableSet& variables() const { return vars_; }
  VariableSet inputs() const { return vars_.inputs(); }
  VariableSet outputs() const { return vars_.outputs(); }

  const std::vector<Location>& locations() const { return locations_; }
  const Location& location(std::size_t q) const { return locations_.at(q); }
  std::size_t num_locations() const { return locations_.size(); }

  const std::vector<Transition>& transitions() const { return transitions_; }
  const Transition& transition(std::size_t id) const;
  bool has_transition(std::size_t id) const { return index_.count(id) > 0; }
  std::size_t num_transitions() const { return transitions_.size(); }

  const std::vector<std::size_t>& initial() const { return initial_; }
  const std::vector<std::size_t>& final() const { return final_; }
  /// The unique initial location; throws ValidationBug if there is not one.
  std::size_t initial_location() const;

  /// Transition ids leaving / entering q, in id order.
  const std::vector<std::size_t>& outgoing(std::size_t q) const { return out_.at(q); }
  const std::vector<std::size_t>& incoming(std::size_t q) const { return in_.at(q); }

  /// Ids of transitions from q whose guard holds on v.
  std::vector<std::size_t> enabled(std::size_t q, const Valuation& v) const;

  /// First error-sink location, if any.
  std::optional<std::size_t> error_sink() const;

  void remove_transition(std::size_t id);

  const std::string& spec_hash() const { return spec_hash_; }
  void set_spec_hash(std::string h) { spec_hash_ = std::move(h); }

  friend bool operator==(const SymbolicAutomaton& a, const SymbolicAutomaton& b);

 private:
  void reindex();

  VariableSet vars_;
  std::vector<Location> locations_;
  std::vector<std::size_t> initial_;
  std::vector<std::size_t> final_;
  std::vector<Transition> transitions_;
  std::map<std::size_t, std::size_t> index_;
  std::vector<std::vector<std::size_t>> out_;
  std::vector<std::vector<std::size_t>> in_;
  std::string spec_hash_;
};

struct ValidationReport {
  bool deterministic = true;
  bool complete = true;
  bool all_guards_satisfiable = true;
  std::vector<std::string> witnesses;

  bool ok() const { return deterministic && complete && all_guards_satisfiable; }
};

/// Exact determinism, completeness and guard-satisfiability checks.
ValidationReport validate(const SymbolicAutomaton& a);

/// The unique run induced by w. Throws ValidationBug if some step has no or
/// several enabled transitions.
Run induced_run(const SymbolicAutomaton& a, const Signal& w);

void to_json(nlohmann::json& j, const SymbolicAutomaton& a);
/// Throws SchemaError naming the offending JSON path.
SymbolicAutomaton automaton_from_json(const nlohmann::json& j);

SymbolicAutomaton load_automaton(const std::string& path);
void save_automaton(const SymbolicAutomaton& a, const std::string& path);

/// 64-bit FNV-1a, rendered as 16 hex digits.
std::string fnv1a_hex(std::string_view bytes);
/// Hash of the automaton's canonical JSON.
std::string automaton_hash(const SymbolicAutomaton& a);

/// Visit counts for DOT rendering. Visited elements are green and labelled
/// with their count; the rest are red.
struct VisitAnnotation {
  std::map<std::size_t, std::size_t> locations;
  std::map<std::size_t, std::size_t> transitions;
};

std::string export_dot(const SymbolicAutomaton& a, const VisitAnnotation& visits = {});

}  // namespace stlcov
