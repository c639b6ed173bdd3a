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

#include "stlcov/signal.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

#include "stlcov/errors.hpp"

namespace stlcov {

std::string to_string(VarKind kind) { return kind == VarKind::input ? "input" : "output"; }

VarKind var_kind_from_string(const std::string& text) {
  if (text == "input") return VarKind::input;
  if (text == "output") return VarKind::output;
  throw SchemaError("unknown variable kind '" + text + "'");
}

VariableSet::VariableSet() : profiles_(std::make_shared<const std::vector<VariableProfile>>()) {}

VariableSet::VariableSet(std::vector<VariableProfile> profiles) {
  std::sort(profiles.begin(), profiles.end(),
            [](const auto& a, const auto& b) { return a.name < b.name; });
  for (std::size_t i = 0; i < profiles.size(); ++i) {
    const auto& p = profiles[i];
    if (p.name.empty()) throw SchemaError("variable with empty name");
    if (i > 0 && profiles[i - 1].name == p.name)
      throw SchemaError("duplicate variable '" + p.name + "'");
    if (!(p.lo <= p.hi) || !std::isfinite(p.lo) || !std::isfinite(p.hi))
      throw SchemaError("variable '" + p.name + "' needs a bounded domain [lo, hi] with lo <= hi");
  }
  profiles_ = std::make_shared<const std::vector<VariableProfile>>(std::move(profiles));
}

std::optional<std::size_t> VariableSet::index_of(const std::string& name) const {
  auto it = std::lower_bound(profiles_->begin(), profiles_->end(), name,
                             [](const VariableProfile& p, const std::string& n) { return p.name < n; });
  if (it == profiles_->end() || it->name != name) return std::nullopt;
  return static_cast<std::size_t>(it - profiles_->begin());
}

const VariableProfile& VariableSet::at(const std::string& name) const {
  auto i = index_of(name);
  if (!i) throw UnknownVariable("unknown variable '" + name + "'");
  return (*profiles_)[*i];
}

std::vector<std::string> VariableSet::names() const {
  std::vector<std::string> out;
  out.reserve(size());
  for (const auto& p : *profiles_) out.push_back(p.name);
  return out;
}

VariableSet VariableSet::inputs() const {
  std::vector<VariableProfile> out;
  for (const auto& p : *profiles_)
    if (p.kind == VarKind::input) out.push_back(p);
  return VariableSet(std::move(out));
}

VariableSet VariableSet::outputs() const {
  std::vector<VariableProfile> out;
  for (const auto& p : *profiles_)
    if (p.kind == VarKind::output) out.push_back(p);
  return VariableSet(std::move(out));
}

VariableSet VariableSet::subset(const std::vector<std::string>& names) const {
  std::vector<VariableProfile> out;
  for (const auto& n : names) out.push_back(at(n));
  return VariableSet(std::move(out));
}

bool VariableSet::disjoint(const VariableSet& other) const {
  return std::none_of(begin(), end(), [&](const auto& p) { return other.contains(p.name); });
}

VariableSet VariableSet::merged(const VariableSet& other) const {
  std::vector<VariableProfile> all(begin(), end());
  for (const auto& p : other) {
    if (contains(p.name)) throw DisjointnessViolation("variable '" + p.name + "' bound on both sides");
    all.push_back(p);
  }
  return VariableSet(std::move(all));
}

Valuation::Valuation(VariableSet vars, std::vector<double> values)
    : vars_(std::move(vars)), values_(std::move(values)) {
  if (values_.size() != vars_.size())
    throw LengthMismatch("valuation binds " + std::to_string(values_.size()) + " values for " +
                         std::to_string(vars_.size()) + " variables");
  for (std::size_t i = 0; i < values_.size(); ++i) {
    const auto& p = vars_[i];
    if (!p.contains(values_[i])) {
      std::ostringstream msg;
      msg << "value " << values_[i] << " of '" << p.name << "' outside [" << p.lo << ", " << p.hi << "]";
      throw DomainViolation(msg.str());
    }
  }
}

Valuation Valuation::from_map(const VariableSet& vars, const std::map<std::string, double>& bindings) {
  std::vector<double> values;
  values.reserve(vars.size());
  for (const auto& p : vars) {
    auto it = bindings.find(p.name);
    if (it == bindings.end()) throw UnknownVariable("no value for variable '" + p.name + "'");
    values.push_back(it->second);
  }
  if (bindings.size() != vars.size()) {
    for (const auto& [name, value] : bindings)
      if (!vars.contains(name)) throw UnknownVariable("unknown variable '" + name + "'");
  }
  return Valuation(vars, std::move(values));
}

double Valuation::at(const std::string& name) const {
  auto i = vars_.index_of(name);
  if (!i) throw UnknownVariable("variable '" + name + "' not bound");
  return values_[*i];
}

std::optional<double> Valuation::get(const std::string& name) const {
  auto i = vars_.index_of(name);
  if (!i) return std::nullopt;
  return values_[*i];
}

std::map<std::string, double> Valuation::to_map() const {
  std::map<std::string, double> out;
  for (std::size_t i = 0; i < values_.size(); ++i) out[vars_[i].name] = values_[i];
  return out;
}

std::ostream& operator<<(std::ostream& os, const Valuation& v) {
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ", ";
    os << v.variables()[i].name << ':' << v.values()[i];
  }
  return os << '}';
}

Valuation compose(const Valuation& v1, const Valuation& v2) {
  if (!v1.variables().disjoint(v2.variables()))
    throw DisjointnessViolation("cannot compose valuations over overlapping variables");
  auto vars = v1.variables().merged(v2.variables());
  std::vector<double> values(vars.size());
  for (std::size_t i = 0; i < vars.size(); ++i) {
    auto x = v1.get(vars[i].name);
    values[i] = x ? *x : v2.at(vars[i].name);
  }
  return Valuation(std::move(vars), std::move(values));
}

Valuation project(const Valuation& v, const std::vector<std::string>& names) {
  std::vector<VariableProfile> profiles;
  for (const auto& n : names) {
    if (!v.variables().contains(n)) throw UnknownVariable("cannot project onto unbound variable '" + n + "'");
    profiles.push_back(v.variables().at(n));
  }
  VariableSet vars(std::move(profiles));
  std::vector<double> values;
  for (const auto& p : vars) values.push_back(v.at(p.name));
  return Valuation(std::move(vars), std::move(values));
}

Signal::Signal(VariableSet vars, std::vector<Valuation> steps) : vars_(std::move(vars)) {
  for (auto& s : steps) push_back(std::move(s));
}

void Signal::push_back(Valuation v) {
  if (!(v.variables() == vars_)) throw UnknownVariable("signal step over a different variable set");
  steps_.push_back(std::move(v));
}

Signal Signal::prefix(std::size_t n) const {
  Signal out(vars_);
  for (std::size_t t = 0; t < std::min(n, size()); ++t) out.steps_.push_back(steps_[t]);
  return out;
}

Signal compose_signals(const Signal& w1, const Signal& w2) {
  if (w1.size() != w2.size())
    throw LengthMismatch("cannot compose signals of lengths " + std::to_string(w1.size()) + " and " +
                         std::to_string(w2.size()));
  Signal out(w1.variables().merged(w2.variables()));
  for (std::size_t t = 0; t < w1.size(); ++t) out.push_back(compose(w1[t], w2[t]));
  return out;
}

Signal signal_from_columns(const VariableSet& vars,
                           const std::map<std::string, std::vector<double>>& columns) {
  std::optional<std::size_t> n;
  for (const auto& p : vars) {
    auto it = columns.find(p.name);
    if (it == columns.end()) throw UnknownVariable("no column for variable '" + p.name + "'");
    if (n && *n != it->second.size()) throw LengthMismatch("columns differ in length");
    n = it->second.size();
  }
  Signal out(vars);
  for (std::size_t t = 0; t < n.value_or(0); ++t) {
    std::vector<double> row;
    for (const auto& p : vars) row.push_back(columns.at(p.name)[t]);
    out.push_back(Valuation(vars, std::move(row)));
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::istringstream in(line);
  while (std::getline(in, cell, ',')) {
    auto b = cell.find_first_not_of(" \t\r");
    auto e = cell.find_last_not_of(" \t\r");
    cells.push_back(b == std::string::npos ? "" : cell.substr(b, e - b + 1));
  }
  return cells;
}

double parse_number(const std::string& text, std::size_t row) {
  try {
    std::size_t used = 0;
    double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw SchemaError("trace row " + std::to_string(row) + ": '" + text + "' is not a number");
  }
}

}  // namespace

Signal read_trace_csv(std::istream& in, const VariableSet& vars) {
  std::string line;
  if (!std::getline(in, line)) throw SchemaError("trace file is empty");
  auto header = split_csv_line(line);
  if (header.empty() || header[0] != "t") throw SchemaError("trace header must start with 't'");
  std::vector<std::string> names(header.begin() + 1, header.end());
  for (const auto& n : names)
    if (!vars.contains(n)) throw UnknownVariable("trace column '" + n + "' is not declared");
  auto columns_vars = vars.subset(names);
  if (columns_vars.size() != names.size()) throw SchemaError("duplicate trace column");

  Signal out(columns_vars);
  std::size_t row = 0;
  while (std::getline(in, line)) {
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    auto cells = split_csv_line(line);
    if (cells.size() != header.size())
      throw SchemaError("trace row " + std::to_string(row) + " has " + std::to_string(cells.size()) +
                        " cells, expected " + std::to_string(header.size()));
    if (parse_number(cells[0], row) != static_cast<double>(row))
      throw SchemaError("trace row " + std::to_string(row) + ": t must count up from 0");
    std::map<std::string, double> bindings;
    for (std::size_t i = 1; i < cells.size(); ++i) bindings[header[i]] = parse_number(cells[i], row);
    out.push_back(Valuation::from_map(columns_vars, bindings));
    ++row;
  }
  return out;
}

void write_trace_csv(std::ostream& out, const Signal& w) {
  out << 't';
  for (const auto& p : w.variables()) out << ',' << p.name;
  out << '\n';
  auto old_precision = out.precision(17);
  for (std::size_t t = 0; t < w.size(); ++t) {
    out << t;
    for (double v : w[t].values()) out << ',' << v;
    out << '\n';
  }
  out.precision(old_precision);
}

}  // namespace stlcov
