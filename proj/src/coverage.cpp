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

#include "stlcov/coverage.hpp"

#include <numeric>

#include "stlcov/errors.hpp"

namespace stlcov {

std::string to_string(CriterionKind k) { return k == CriterionKind::location ? "location" : "transition"; }

CriterionKind criterion_kind_from_string(const std::string& text) {
  if (text == "location") return CriterionKind::location;
  if (text == "transition") return CriterionKind::transition;
  throw SchemaError("unknown criterion '" + text + "'");
}

Criterion Criterion::of(const SymbolicAutomaton& a, CriterionKind kind) {
  Criterion c{kind, {}};
  if (kind == CriterionKind::location)
    for (const auto& l : a.locations()) c.requirements.push_back(l.id);
  else
    for (const auto& t : a.transitions()) c.requirements.push_back(t.id);
  return c;
}

std::set<std::size_t> requirements_of(const Run& run, const Criterion& c) {
  const auto& seq = c.kind == CriterionKind::location ? run.locations : run.transitions;
  std::set<std::size_t> all(c.requirements.begin(), c.requirements.end());
  std::set<std::size_t> out;
  for (std::size_t id : seq)
    if (all.count(id)) out.insert(id);
  return out;
}

Rational::Rational(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw DegenerateCriterion("zero denominator");
  std::uint64_t g = std::gcd(num, den);
  num_ = num / g;
  den_ = den / g;
}

std::uint64_t Rational::percent() const { return (200 * num_ + den_) / (2 * den_); }

std::string to_string(const Rational& r) { return std::to_string(r.num()) + "/" + std::to_string(r.den()); }

CoverageLedger::CoverageLedger(Criterion c) : criterion_(std::move(c)) {
  for (std::size_t id : criterion_.requirements) counts_[id] = 0;
}

std::set<std::size_t> CoverageLedger::record(const Signal& inputs, const Run& run) {
  std::set<std::size_t> fresh;
  const auto& seq = criterion_.kind == CriterionKind::location ? run.locations : run.transitions;
  for (std::size_t id : seq) {
    auto it = counts_.find(id);
    if (it == counts_.end()) continue;
    ++it->second;
    if (satisfied_.insert(id).second) fresh.insert(id);
  }
  tests_.push_back(TestRecord{tests_.size(), inputs, run});
  return fresh;
}

void CoverageLedger::mark(const std::set<std::size_t>& ids) {
  for (std::size_t id : ids)
    if (counts_.count(id)) satisfied_.insert(id);
}

Rational CoverageLedger::ratio() const {
  if (criterion_.requirements.empty()) throw DegenerateCriterion("criterion has no requirements");
  return Rational(satisfied_.size(), criterion_.requirements.size());
}

nlohmann::json signal_to_json(const Signal& w) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& p : w.variables()) j[p.name] = nlohmann::json::array();
  for (const auto& v : w)
    for (const auto& p : w.variables()) j[p.name].push_back(v.at(p.name));
  return j;
}

Signal signal_from_json(const nlohmann::json& j, const VariableSet& vars) {
  std::map<std::string, std::vector<double>> cols;
  for (const auto& p : vars) {
    if (!j.contains(p.name)) throw SchemaError("signal lacks column '" + p.name + "'");
    cols[p.name] = j.at(p.name).get<std::vector<double>>();
  }
  return signal_from_columns(vars, cols);
}

nlohmann::json ledger_summary(const CoverageLedger& ledger) {
  nlohmann::json counts = nlohmann::json::object();
  for (auto [id, n] : ledger.counts()) counts[std::to_string(id)] = n;
  Rational r = ledger.criterion().requirements.empty() ? Rational(0, 1) : ledger.ratio();
  return {{"criterion", to_string(ledger.criterion().kind)},
          {"total", ledger.criterion().requirements.size()},
          {"satisfied", ledger.satisfied()},
          {"counts", counts},
          {"ratio", to_string(r)},
          {"percent", r.percent()}};
}

void to_json(nlohmann::json& j, const CoverageLedger& ledger) {
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& t : ledger.tests())
    tests.push_back({{"id", t.id},
                     {"inputs", signal_to_json(t.inputs)},
                     {"run", {{"locations", t.run.locations}, {"transitions", t.run.transitions}}}});
  j = ledger_summary(ledger);
  j["tests"] = tests;
}

}  // namespace stlcov
