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
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stlcov {

enum class VarKind { input, output };

std::string to_string(VarKind kind);
VarKind var_kind_from_string(const std::string& text);

struct VariableProfile {
  std::string name;
  VarKind kind = VarKind::input;
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double value) const { return value >= lo && value <= hi; }
  friend bool operator==(const VariableProfile&, const VariableProfile&) = default;
};

/// An immutable, name-sorted set of variable profiles with unique names.
/// Copies share storage.
class VariableSet {
 public:
  VariableSet();
  explicit VariableSet(std::vector<VariableProfile> profiles);

  std::size_t size() const { return profiles_->size(); }
  bool empty() const { return profiles_->empty(); }
  const VariableProfile& operator[](std::size_t i) const { return (*profiles_)[i]; }
  auto begin() const { return profiles_->begin(); }
  auto end() const { return profiles_->end(); }

  /// Position of `name`, if present.
  std::optional<std::size_t> index_of(const std::string& name) const;
  bool contains(const std::string& name) const { return index_of(name).has_value(); }
  const VariableProfile& at(const std::string& name) const;

  std::vector<std::string> names() const;
  VariableSet inputs() const;
  VariableSet outputs() const;
  VariableSet subset(const std::vector<std::string>& names) const;

  /// Union of two disjoint sets.
  VariableSet merged(const VariableSet& other) const;
  bool disjoint(const VariableSet& other) const;

  friend bool operator==(const VariableSet& a, const VariableSet& b) {
    return a.profiles_ == b.profiles_ || *a.profiles_ == *b.profiles_;
  }

 private:
  std::shared_ptr<const std::vector<VariableProfile>> profiles_;
};

/// A map from each variable of a set to a real value within its domain.
class Valuation {
 public:
  Valuation() = default;
  /// `values[i]` binds `vars[i]`; throws DomainViolation on out-of-domain values.
  Valuation(VariableSet vars, std::vector<double> values);

  static Valuation from_map(const VariableSet& vars, const std::map<std::string, double>& bindings);

  const VariableSet& variables() const { return vars_; }
  std::span<const double> values() const { return values_; }
  std::size_t size() const { return values_.size(); }

  double at(const std::string& name) const;
  std::optional<double> get(const std::string& name) const;
  std::map<std::string, double> to_map() const;

  friend bool operator==(const Valuation& a, const Valuation& b) {
    return a.vars_ == b.vars_ && a.values_ == b.values_;
  }

 private:
  VariableSet vars_;
  std::vector<double> values_;
};

std::ostream& operator<<(std::ostream& os, const Valuation& v);

/// v1 || v2 over X1 ∪ X2; throws DisjointnessViolation if X1 ∩ X2 ≠ ∅.
Valuation compose(const Valuation& v1, const Valuation& v2);

/// Restriction of `v` to `names`; throws UnknownVariable if a name is not bound.
Valuation project(const Valuation& v, const std::vector<std::string>& names);

/// A finite sequence of valuations over one variable set, indexed from 0.
class Signal {
 public:
  Signal() = default;
  explicit Signal(VariableSet vars) : vars_(std::move(vars)) {}
  Signal(VariableSet vars, std::vector<Valuation> steps);

  const VariableSet& variables() const { return vars_; }
  std::size_t size() const { return steps_.size(); }
  bool empty() const { return steps_.empty(); }
  const Valuation& operator[](std::size_t t) const { return steps_[t]; }
  const Valuation& back() const { return steps_.back(); }
  auto begin() const { return steps_.begin(); }
  auto end() const { return steps_.end(); }

  void push_back(Valuation v);
  /// The first `n` steps.
  Signal prefix(std::size_t n) const;

  friend bool operator==(const Signal&, const Signal&) = default;

 private:
  VariableSet vars_;
  std::vector<Valuation> steps_;
};

/// Step-wise composition; throws LengthMismatch or DisjointnessViolation.
Signal compose_signals(const Signal& w1, const Signal& w2);

/// Builds a signal from per-variable columns, e.g. {"a", {3, 4, 3}}.
Signal signal_from_columns(const VariableSet& vars,
                           const std::map<std::string, std::vector<double>>& columns);

/// Trace CSV: header `t,<var>,...`, one row per step, `t` counting from 0.
Signal read_trace_csv(std::istream& in, const VariableSet& vars);
void write_trace_csv(std::ostream& out, const Signal& w);

}  // namespace stlcov
