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
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "stlcov/automaton.hpp"

namespace stlcov {

enum class CriterionKind { location, transition };

std::string to_string(CriterionKind k);
CriterionKind criterion_kind_from_string(const std::string& text);

struct Criterion {
  CriterionKind kind = CriterionKind::location;
  std::vector<std::size_t> requirements;

  /// C_Q or C_Delta of `a`.
  static Criterion of(const SymbolicAutomaton& a, CriterionKind kind);
};

/// Requirements of `c` met by `run`. For locations this includes the start.
std::set<std::size_t> requirements_of(const Run& run, const Criterion& c);

/// Nonnegative rational kept in lowest terms.
class Rational {
 public:
  Rational(std::uint64_t num = 0, std::uint64_t den = 1);

  std::uint64_t num() const { return num_; }
  std::uint64_t den() const { return den_; }
  double value() const { return static_cast<double>(num_) / static_cast<double>(den_); }
  /// Integer percent, rounding halves up.
  std::uint64_t percent() const;

  friend bool operator==(const Rational&, const Rational&) = default;
  friend bool operator<(const Rational& a, const Rational& b) { return a.num_ * b.den_ < b.num_ * a.den_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

std::string to_string(const Rational& r);

struct TestRecord {
  std::size_t id = 0;
  Signal inputs;
  Run run;
};

class CoverageLedger {
 public:
  explicit CoverageLedger(Criterion c);

  const Criterion& criterion() const { return criterion_; }
  /// Records one test; returns the requirements it satisfied for the first time.
  std::set<std::size_t> record(const Signal& inputs, const Run& run);
  /// Marks requirements directly (no test attached).
  void mark(const std::set<std::size_t>& ids);

  const std::set<std::size_t>& satisfied() const { return satisfied_; }
  bool covers(std::size_t id) const { return satisfied_.count(id) > 0; }
  bool complete() const { return satisfied_.size() == criterion_.requirements.size(); }
  const std::map<std::size_t, std::size_t>& counts() const { return counts_; }
  const std::vector<TestRecord>& tests() const { return tests_; }

  /// |R(T,C)| / |C|; throws DegenerateCriterion when C is empty.
  Rational ratio() const;

 private:
  Criterion criterion_;
  std::set<std::size_t> satisfied_;
  std::map<std::size_t, std::size_t> counts_;
  std::vector<TestRecord> tests_;
};

nlohmann::json signal_to_json(const Signal& w);
Signal signal_from_json(const nlohmann::json& j, const VariableSet& vars);

void to_json(nlohmann::json& j, const CoverageLedger& ledger);
/// Ledger JSON without the per-test records.
nlohmann::json ledger_summary(const CoverageLedger& ledger);

}  // namespace stlcov
