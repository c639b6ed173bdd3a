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

#include <compare>
#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "stlcov/automaton.hpp"

namespace stlcov {

using LocationSet = std::set<std::size_t>;

/// Index (i, j) of the first fixpoint region containing a location:
/// i cooperative moves, then j force moves.
struct Rank {
  std::size_t i = 0;
  std::size_t j = 0;
  friend bool operator==(const Rank&, const Rank&) = default;
  friend auto operator<=>(const Rank&, const Rank&) = default;
};

std::string to_string(const Rank& r);

/// Per-location cell tables of a deterministic automaton with io-pure
/// guards. Built once, then queried for any target set.
class GameArena {
 public:
  explicit GameArena(const SymbolicAutomaton& a);

  const SymbolicAutomaton& automaton() const { return *a_; }

  /// Inputs that reach S in one step for every output.
  Predicate ins_force(std::size_t q, const LocationSet& s) const;
  /// Inputs for which every output fires transition \`id\` out of q.
  Predicate ins_force_edge(std::size_t q, std::size_t id) const;
  /// Inputs that reach S in one step for some output.
  Predicate ins_coop(std::size_t q, const LocationSet& s) const;

  LocationSet pre_force(const LocationSet& s) const;
  LocationSet pre_coop(const LocationSet& s) const;

 private:
  struct Cells {
    std::vector<Atom> in_atoms;
    std::vector<Minterm> in_cells;
    std::vector<Minterm> out_cells;
    // fired[i][o]: the transition taken on input cell i and output cell o
    std::vector<std::vector<std::optional<std::size_t>>> fired;
  };

  const SymbolicAutomaton* a_;
  std::vector<Cells> cells_;
};

struct Fixpoint {
  /// regions[i][j] = Y_{i,j}; the last entry of each row is Y_{i,inf}.
  std::vector<std::vector<LocationSet>> regions;
  std::map<std::size_t, Rank> rank;
  LocationSet winning;
};

Fixpoint winning_fixpoint(const GameArena& arena, const LocationSet& targets);
Fixpoint winning_fixpoint(const SymbolicAutomaton& a, const LocationSet& targets);

enum class StrategyClass { target, force, coop };

std::string to_string(StrategyClass c);

struct StrategyAutomaton {
  VariableSet variables;
  std::size_t initial = 0;
  LocationSet targets;
  /// Winning region, in id order.
  std::vector<std::size_t> locations;
  std::map<std::size_t, StrategyClass> klass;
  std::map<std::size_t, Predicate> sigma;
  std::map<std::size_t, Rank> rank;
  /// Strategy edges, as transitions of the underlying automaton.
  std::vector<Transition> edges;

  bool contains(std::size_t q) const { return rank.count(q) > 0; }
  /// Strategy edges leaving q, ordered by successor rank then id.
  std::vector<Transition> moves(std::size_t q) const;
};

/// The cooperative strategy towards `targets`, or none when the initial
/// location is outside the winning region.
std::optional<StrategyAutomaton> build_strategy(const SymbolicAutomaton& a, const LocationSet& targets);

void to_json(nlohmann::json& j, const StrategyAutomaton& s);
std::string export_dot(const StrategyAutomaton& s, const SymbolicAutomaton& a);

}  // namespace stlcov
