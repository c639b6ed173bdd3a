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

#include <atomic>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace stlcov {

/// Hard cap on system simulations. `remaining` reaches -1 when the last
/// permitted simulation has been spent.
class SimulationBudget {
 public:
  explicit SimulationBudget(long long initial) : initial_(initial), remaining_(initial) {}
  static SimulationBudget unlimited() {
    SimulationBudget b(0);
    b.unlimited_ = true;
    return b;
  }
  SimulationBudget(const SimulationBudget& o)
      : initial_(o.initial_), remaining_(o.remaining_.load()), unlimited_(o.unlimited_) {}

  bool is_unlimited() const { return unlimited_; }
  long long initial() const { return initial_; }
  long long remaining() const { return remaining_.load(); }
  long long used() const { return initial_ - remaining_.load(); }
  bool exhausted() const { return !unlimited_ && remaining_.load() < 0; }
  void consume() { remaining_.fetch_sub(1); }

 private:
  long long initial_;
  std::atomic<long long> remaining_;
  bool unlimited_ = false;
};

struct Box {
  std::vector<double> lo;
  std::vector<double> hi;
  std::size_t dim() const { return lo.size(); }
  bool contains(const std::vector<double>& x) const;
};

struct PsoConfig {
  std::size_t swarm_size = 30;
  std::size_t max_iterations = 50;
  double inertia = 0.7298;
  double cognitive = 1.49618;
  double social = 1.49618;
  /// Per-axis velocity cap as a fraction of the box extent.
  double velocity_clamp = 0.5;
  std::uint64_t seed = 0;
};

enum class StopReason { goal_met, iterations_exhausted, budget_exhausted };

std::string to_string(StopReason r);

struct Evaluation {
  double fitness = 0.0;
  bool goal = false;
};

struct SearchOutcome {
  std::vector<double> best;
  double best_fitness = 0.0;
  std::size_t evaluations = 0;
  bool success = false;
  StopReason reason = StopReason::iterations_exhausted;
};

using Objective = std::function<Evaluation(const std::vector<double>&)>;

/// Global-best PSO. Each evaluation consumes one budget unit; the search
/// stops on the first point with goal && fitness <= threshold, or once the
/// budget goes negative.
SearchOutcome pso_minimize(const Objective& f, const Box& box, const PsoConfig& config, SimulationBudget& budget,
                           double threshold = 0.0);

}  // namespace stlcov
