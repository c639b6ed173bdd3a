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
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "stlcov/atom.hpp"
#include "stlcov/signal.hpp"

namespace stlcov {

/// An atom or its negation. Atoms are kept in canonical non-strict form,
/// so `neg` alone distinguishes `f >= 0` from `f < 0`.
struct Literal {
  Atom atom;
  bool neg = false;

  /// Canonicalizes `atom` (and folds its negation into `neg`).
  static Literal make(const Atom& atom, bool neg = false);

  bool holds(const Valuation& v) const { return atom.holds(v) != neg; }
  Literal complement() const { return Literal{atom, !neg}; }

  friend bool operator==(const Literal&, const Literal&) = default;
  friend auto operator<=>(const Literal&, const Literal&) = default;
};

/// A sorted conjunction of literals without duplicates.
using Clause = std::vector<Literal>;

/// Disjunctive normal form over affine literals. Clauses with complementary
/// literals are dropped; True is the single empty clause, False has none.
class Predicate {
 public:
  Predicate() = default;  // False
  explicit Predicate(std::vector<Clause> clauses);

  static Predicate truth() { return Predicate({Clause{}}); }
  static Predicate falsity() { return Predicate(); }
  static Predicate literal(const Atom& atom, bool neg = false);

  const std::vector<Clause>& clauses() const { return clauses_; }
  bool is_true() const { return clauses_.size() == 1 && clauses_[0].empty(); }
  bool is_false() const { return clauses_.empty(); }

  std::set<std::string> variables() const;
  /// Distinct canonical atoms, sorted.
  std::vector<Atom> atoms() const;

  friend Predicate operator||(const Predicate& a, const Predicate& b);
  friend Predicate operator&&(const Predicate& a, const Predicate& b);
  friend Predicate operator!(const Predicate& a);

  friend bool operator==(const Predicate&, const Predicate&) = default;

 private:
  std::vector<Clause> clauses_;
};

/// Parser-compatible text, e.g. `a >= 4 and b > 0 or a < 4`.
std::string to_string(const Predicate& p);
std::string to_string(const Clause& c);

bool evaluate(const Valuation& v, const Predicate& p);
bool evaluate(const Valuation& v, const Clause& c);

/// Exact satisfiability within the box given by the domains of `box`.
bool is_satisfiable(const Clause& c, const VariableSet& box);
bool is_satisfiable(const Predicate& p, const VariableSet& box);

/// A point of the first satisfiable clause that maximizes the least slack
/// over its literals and the box faces; unconstrained variables sit at the
/// centre of their domain. Returns a valuation over all of `box`.
std::optional<Valuation> find_model(const Clause& c, const VariableSet& box);
std::optional<Valuation> find_model(const Predicate& p, const VariableSet& box);

/// Chebyshev (max-norm) distance from `v` to the closure of the satisfying
/// set within the box; infinity if the set is empty.
double distance(const Valuation& v, const Clause& c, const VariableSet& box);
double distance(const Valuation& v, const Predicate& p, const VariableSet& box);

/// A clause factored into input and output literals.
struct SplitClause {
  Clause inputs;
  Clause outputs;
};

/// Factors every clause; throws MixedAtom if an atom mixes inputs and outputs.
std::vector<SplitClause> split_io(const Predicate& p, const VariableSet& inputs, const VariableSet& outputs);

/// A complete sign assignment over an atom universe.
struct Minterm {
  std::vector<bool> signs;

  Clause clause(const std::vector<Atom>& universe) const;
  friend bool operator==(const Minterm&, const Minterm&) = default;
  friend auto operator<=>(const Minterm&, const Minterm&) = default;
};

inline constexpr std::size_t kDefaultAtomCap = 16;

/// Satisfiable minterms in lexicographic order (true before false).
/// Throws CapExceeded if the universe has more than `cap` atoms.
std::vector<Minterm> enumerate_minterms(const std::vector<Atom>& universe, const VariableSet& box,
                                        std::size_t cap = kDefaultAtomCap);

/// A small DNF equivalent to the disjunction of `on`, treating cells outside
/// `satisfiable` as don't-cares. True when `on` covers every satisfiable cell.
Predicate cover_minterms(const std::vector<Atom>& universe, const std::vector<Minterm>& on,
                         const std::vector<Minterm>& satisfiable);

void to_json(nlohmann::json& j, const Literal& l);
void from_json(const nlohmann::json& j, Literal& l);
void to_json(nlohmann::json& j, const Predicate& p);
void from_json(const nlohmann::json& j, Predicate& p);

}  // namespace stlcov
