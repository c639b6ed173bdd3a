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

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "stlcov/atom.hpp"
#include "stlcov/signal.hpp"

namespace stlcov {

/// [lo, hi] over natural time steps; `hi` empty means [lo, inf).
struct Interval {
  unsigned lo = 0;
  std::optional<unsigned> hi;

  static Interval all() { return {0, std::nullopt}; }
  static Interval bounded(unsigned lo, unsigned hi) { return {lo, hi}; }
  bool is_bounded() const { return hi.has_value(); }

  friend bool operator==(const Interval&, const Interval&) = default;
};

enum class FormulaKind {
  truth,
  atom,
  negation,
  disjunction,
  conjunction,
  implication,
  until,
  since,
  always,
  eventually,
  historically,
  once,
};

/// Immutable IA-STL formula tree. Derived operators are kept as written;
/// `to_core` rewrites them.
class Formula {
 public:
  static Formula truth();
  static Formula falsity() { return negation(truth()); }
  static Formula atom(Atom a);
  static Formula negation(Formula f);
  static Formula disjunction(Formula a, Formula b);
  static Formula conjunction(Formula a, Formula b);
  static Formula implication(Formula a, Formula b);
  static Formula until(Interval i, Formula a, Formula b);
  static Formula since(Interval i, Formula a, Formula b);
  static Formula always(Interval i, Formula f);
  static Formula eventually(Interval i, Formula f);
  static Formula historically(Interval i, Formula f);
  static Formula once(Interval i, Formula f);

  FormulaKind kind() const { return node_->kind; }
  const Atom& atom() const { return node_->atom; }
  const Interval& interval() const { return node_->interval; }
  std::size_t arity() const { return node_->args.size(); }
  const Formula& arg(std::size_t i) const { return node_->args[i]; }

  bool is_temporal() const;
  bool is_future_operator() const;
  bool is_past_operator() const;
  bool has_future() const;
  bool has_past() const;
  std::set<std::string> variables() const;
  /// Height of the tree; atoms and true have depth 0.
  std::size_t depth() const;

  friend bool operator==(const Formula& a, const Formula& b);

 private:
  struct Node {
    FormulaKind kind;
    Atom atom;
    Interval interval;
    std::vector<Formula> args;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(FormulaKind k, Interval i, std::vector<Formula> args);

  std::shared_ptr<const Node> node_;
};

/// Rewrites into true / atom / not / or / until / since only.
Formula to_core(const Formula& f);

/// Concrete syntax accepted by the parser.
std::string to_string(const Formula& f);

/// (X_I, X_O, φ) with bounded variable domains.
struct IaStlSpec {
  VariableSet variables;
  Formula formula = Formula::truth();

  VariableSet inputs() const { return variables.inputs(); }
  VariableSet outputs() const { return variables.outputs(); }
};

/// Parses declarations followed by `formula: <formula>`. Throws ParseError.
IaStlSpec parse_spec(std::string_view text);

/// Parses a bare formula whose variables must be declared in `vars`.
Formula parse_formula(std::string_view text, const VariableSet& vars);

}  // namespace stlcov
