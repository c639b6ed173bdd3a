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

#include "stlcov/monitor.hpp"

#include <algorithm>
#include <limits>

#include "stlcov/errors.hpp"

namespace stlcov {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Trace = std::vector<double>;

Trace eval(const Formula& f, const Signal& w);

// Until at t: sup over t' in [t+lo, t+hi] of min(r2[t'], inf r1 over (t, t')).
Trace until(const Interval& iv, const Trace& r1, const Trace& r2) {
  const std::size_t n = r1.size();
  Trace out(n, -kInf);
  for (std::size_t t = 0; t < n; ++t) {
    std::size_t last = iv.hi ? std::min<std::size_t>(n - 1, t + *iv.hi) : n - 1;
    double inner = kInf;
    for (std::size_t s = t; s <= last; ++s) {
      if (s >= t + iv.lo) out[t] = std::max(out[t], std::min(r2[s], inner));
      if (s > t) inner = std::min(inner, r1[s]);
      if (inner == -kInf) break;
    }
  }
  return out;
}

Trace since(const Interval& iv, const Trace& r1, const Trace& r2) {
  const std::size_t n = r1.size();
  Trace out(n, -kInf);
  for (std::size_t t = 0; t < n; ++t) {
    if (t < iv.lo) continue;
    std::size_t first = iv.hi && *iv.hi < t ? t - *iv.hi : 0;
    double inner = kInf;
    for (std::size_t s = t + 1; s-- > first;) {
      if (s + iv.lo <= t) out[t] = std::max(out[t], std::min(r2[s], inner));
      if (s < t) inner = std::min(inner, r1[s]);
      if (inner == -kInf) break;
    }
  }
  return out;
}

Trace eval(const Formula& f, const Signal& w) {
  const std::size_t n = w.size();
  switch (f.kind()) {
    case FormulaKind::truth:
      return Trace(n, kInf);
    case FormulaKind::atom: {
      Trace out(n);
      for (std::size_t t = 0; t < n; ++t) out[t] = f.atom().f.eval(w[t]);
      return out;
    }
    case FormulaKind::negation: {
      Trace out = eval(f.arg(0), w);
      for (double& x : out) x = -x;
      return out;
    }
    case FormulaKind::disjunction: {
      Trace a = eval(f.arg(0), w);
      Trace b = eval(f.arg(1), w);
      for (std::size_t t = 0; t < n; ++t) a[t] = std::max(a[t], b[t]);
      return a;
    }
    case FormulaKind::until:
      return until(f.interval(), eval(f.arg(0), w), eval(f.arg(1), w));
    case FormulaKind::since:
      return since(f.interval(), eval(f.arg(0), w), eval(f.arg(1), w));
    default:
      throw EvaluationError("formula not in core form");
  }
}

}  // namespace

std::vector<Robustness> robustness_trace(const Formula& phi, const Signal& w) {
  for (const auto& name : phi.variables())
    if (!w.variables().contains(name)) throw UnknownVariable("signal has no variable '" + name + "'");
  return eval(to_core(phi), w);
}

Robustness robustness(const Formula& phi, const Signal& w, std::size_t t) {
  if (t >= w.size())
    throw EvaluationError("time " + std::to_string(t) + " outside signal of length " + std::to_string(w.size()));
  return robustness_trace(phi, w)[t];
}

std::string to_string(Verdict v) { return v == Verdict::satisfied ? "satisfied" : "violated"; }

Verdict verdict(const Formula& phi, const Signal& w) {
  if (w.empty()) throw EvaluationError("verdict of an empty signal");
  return robustness(phi, w, 0) >= 0.0 ? Verdict::satisfied : Verdict::violated;
}

}  // namespace stlcov
