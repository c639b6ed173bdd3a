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

// Independent reference implementations used as test oracles.

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "stlcov/formula.hpp"
#include "stlcov/signal.hpp"

namespace stlcov::testing {

// Evaluates the semantic clauses literally, enumerating every (t', t'') index
// pair with no memoization and no rewriting of derived operators.
inline double brute_rho(const Formula& f, const Signal& w, long t) {
  constexpr double inf = std::numeric_limits<double>::infinity();
  const long n = static_cast<long>(w.size());
  auto window = [&](long from, long to, auto&& body) {
    for (long s = std::max(from, 0L); s <= std::min(to, n - 1); ++s) body(s);
  };
  const long lo = f.is_temporal() ? static_cast<long>(f.interval().lo) : 0;
  const long hi = f.is_temporal() && f.interval().hi ? static_cast<long>(*f.interval().hi) : n;
  switch (f.kind()) {
    case FormulaKind::truth:
      return inf;
    case FormulaKind::atom:
      return f.atom().f.eval(w[t]);
    case FormulaKind::negation:
      return -brute_rho(f.arg(0), w, t);
    case FormulaKind::disjunction:
      return std::max(brute_rho(f.arg(0), w, t), brute_rho(f.arg(1), w, t));
    case FormulaKind::conjunction:
      return std::min(brute_rho(f.arg(0), w, t), brute_rho(f.arg(1), w, t));
    case FormulaKind::implication:
      return std::max(-brute_rho(f.arg(0), w, t), brute_rho(f.arg(1), w, t));
    case FormulaKind::until: {
      double sup = -inf;
      window(t + lo, t + hi, [&](long tp) {
        double inner = inf;
        for (long tpp = t + 1; tpp < tp; ++tpp) inner = std::min(inner, brute_rho(f.arg(0), w, tpp));
        sup = std::max(sup, std::min(brute_rho(f.arg(1), w, tp), inner));
      });
      return sup;
    }
    case FormulaKind::since: {
      double sup = -inf;
      window(t - hi, t - lo, [&](long tp) {
        double inner = inf;
        for (long tpp = tp + 1; tpp < t; ++tpp) inner = std::min(inner, brute_rho(f.arg(0), w, tpp));
        sup = std::max(sup, std::min(brute_rho(f.arg(1), w, tp), inner));
      });
      return sup;
    }
    case FormulaKind::eventually:
    case FormulaKind::always: {
      bool ev = f.kind() == FormulaKind::eventually;
      double acc = ev ? -inf : inf;
      window(t + lo, t + hi, [&](long s) {
        double r = brute_rho(f.arg(0), w, s);
        acc = ev ? std::max(acc, r) : std::min(acc, r);
      });
      return acc;
    }
    case FormulaKind::once:
    case FormulaKind::historically: {
      bool once = f.kind() == FormulaKind::once;
      double acc = once ? -inf : inf;
      window(t - hi, t - lo, [&](long s) {
        double r = brute_rho(f.arg(0), w, s);
        acc = once ? std::max(acc, r) : std::min(acc, r);
      });
      return acc;
    }
  }
  return 0.0;
}

// Random formulas over the given variables with small integer coefficients.
class FormulaGen {
 public:
  FormulaGen(std::vector<std::string> vars, unsigned seed, unsigned max_bound = 3)
      : vars_(std::move(vars)), rng_(seed), max_bound_(max_bound) {}

  Atom atom() {
    std::uniform_int_distribution<int> coeff(-2, 2), off(-3, 3), pick(0, static_cast<int>(vars_.size()) - 1);
    Affine f = Affine::constant(off(rng_));
    f = f + Affine::variable(vars_[pick(rng_)], nonzero(coeff));
    if (coin(0.3)) f = f + Affine::variable(vars_[pick(rng_)], nonzero(coeff));
    if (f.is_constant()) f = f + Affine::variable(vars_[0]);
    return Atom{f, coin(0.5)};
  }

  Interval interval() {
    std::uniform_int_distribution<unsigned> b(0, max_bound_);
    unsigned x = b(rng_), y = b(rng_);
    return Interval::bounded(std::min(x, y), std::max(x, y));
  }

  // Uses every operator, bounded intervals only.
  Formula formula(int depth) {
    std::uniform_int_distribution<int> pick(0, depth == 0 ? 1 : 12);
    switch (pick(rng_)) {
      case 0:
        return coin(0.1) ? Formula::truth() : Formula::atom(atom());
      case 1:
        return Formula::atom(atom());
      case 2:
        return Formula::negation(formula(depth - 1));
      case 3:
        return Formula::disjunction(formula(depth - 1), formula(depth - 1));
      case 4:
        return Formula::conjunction(formula(depth - 1), formula(depth - 1));
      case 5:
        return Formula::implication(formula(depth - 1), formula(depth - 1));
      case 6:
        return Formula::until(interval(), formula(depth - 1), formula(depth - 1));
      case 7:
        return Formula::since(interval(), formula(depth - 1), formula(depth - 1));
      case 8:
        return Formula::always(interval(), formula(depth - 1));
      case 9:
        return Formula::eventually(interval(), formula(depth - 1));
      case 10:
        return Formula::historically(interval(), formula(depth - 1));
      case 11:
        return Formula::once(interval(), formula(depth - 1));
      default:
        return Formula::atom(atom());
    }
  }

  // Values on an integer grid inside each domain, so ties are common.
  Signal trace(const VariableSet& vars, std::size_t length) {
    Signal w(vars);
    for (std::size_t t = 0; t < length; ++t) {
      std::vector<double> vals;
      for (const auto& p : vars) {
        std::uniform_int_distribution<int> d(static_cast<int>(p.lo), static_cast<int>(p.hi));
        vals.push_back(d(rng_));
      }
      w.push_back(Valuation(vars, vals));
    }
    return w;
  }

  std::mt19937& rng() { return rng_; }

 private:
  bool coin(double p) { return std::bernoulli_distribution(p)(rng_); }
  int nonzero(std::uniform_int_distribution<int>& d) {
    int c = 0;
    while (c == 0) c = d(rng_);
    return c;
  }

  std::vector<std::string> vars_;
  std::mt19937 rng_;
  unsigned max_bound_;
};

}  // namespace stlcov::testing
