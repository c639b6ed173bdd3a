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

#include "stlcov/optimizer.hpp"

#include <algorithm>
#include <limits>
#include <random>

namespace stlcov {

std::string to_string(StopReason r) {
  switch (r) {
    case StopReason::goal_met:
      return "goal_met";
    case StopReason::iterations_exhausted:
      return "iterations_exhausted";
    default:
      return "budget_exhausted";
  }
}

bool Box::contains(const std::vector<double>& x) const {
  if (x.size() != dim()) return false;
  for (std::size_t k = 0; k < dim(); ++k)
    if (x[k] < lo[k] || x[k] > hi[k]) return false;
  return true;
}

namespace {

struct Particle {
  std::mt19937_64 rng;
  std::vector<double> x, v, best;
  double best_fitness = std::numeric_limits<double>::infinity();
};

}  // namespace

SearchOutcome pso_minimize(const Objective& f, const Box& box, const PsoConfig& config, SimulationBudget& budget,
                           double threshold) {
  SearchOutcome out;
  out.best_fitness = std::numeric_limits<double>::infinity();
  if (budget.exhausted()) {
    out.reason = StopReason::budget_exhausted;
    return out;
  }
  const std::size_t n = box.dim();
  std::vector<double> vmax(n);
  for (std::size_t k = 0; k < n; ++k) vmax[k] = config.velocity_clamp * (box.hi[k] - box.lo[k]);

  // Returns true when the search must stop.
  auto evaluate = [&](Particle& p) {
    Evaluation e = f(p.x);
    ++out.evaluations;
    budget.consume();
    if (e.fitness < p.best_fitness || p.best.empty()) {
      p.best_fitness = e.fitness;
      p.best = p.x;
    }
    if (e.fitness < out.best_fitness || out.best.empty()) {
      out.best_fitness = e.fitness;
      out.best = p.x;
    }
    if (e.goal && e.fitness <= threshold) {
      out.best = p.x;
      out.best_fitness = e.fitness;
      out.success = true;
      out.reason = StopReason::goal_met;
      return true;
    }
    if (budget.exhausted()) {
      out.reason = StopReason::budget_exhausted;
      return true;
    }
    return false;
  };

  std::vector<Particle> swarm(std::max<std::size_t>(config.swarm_size, 1));
  for (std::size_t i = 0; i < swarm.size(); ++i) {
    Particle& p = swarm[i];
    p.rng.seed(config.seed + 0x9E3779B97F4A7C15ULL * (i + 1));
    p.x.resize(n);
    p.v.resize(n);
    for (std::size_t k = 0; k < n; ++k) {
      p.x[k] = std::uniform_real_distribution<double>(box.lo[k], box.hi[k])(p.rng);
      p.v[k] = vmax[k] > 0 ? std::uniform_real_distribution<double>(-vmax[k], vmax[k])(p.rng) : 0.0;
    }
    if (evaluate(p)) return out;
  }
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (std::size_t it = 1; it < config.max_iterations; ++it) {
    for (Particle& p : swarm) {
      for (std::size_t k = 0; k < n; ++k) {
        double r1 = unit(p.rng), r2 = unit(p.rng);
        double v = config.inertia * p.v[k] + config.cognitive * r1 * (p.best[k] - p.x[k]) +
                   config.social * r2 * (out.best[k] - p.x[k]);
        p.v[k] = std::clamp(v, -vmax[k], vmax[k]);
        p.x[k] = std::clamp(p.x[k] + p.v[k], box.lo[k], box.hi[k]);
      }
      if (evaluate(p)) return out;
    }
  }
  out.reason = StopReason::iterations_exhausted;
  return out;
}

}  // namespace stlcov
