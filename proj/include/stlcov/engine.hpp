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

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "stlcov/automaton.hpp"
#include "stlcov/coverage.hpp"
#include "stlcov/formula.hpp"
#include "stlcov/game.hpp"
#include "stlcov/optimizer.hpp"
#include "stlcov/sut.hpp"

namespace stlcov {

enum class TargetPolicy { nearest_first, id_order, seeded_random };

std::string to_string(TargetPolicy p);
TargetPolicy target_policy_from_string(const std::string& text);

struct AdaptiveConfig {
  /// Simulation budget; none means unlimited.
  std::optional<long long> budget;
  CriterionKind criterion = CriterionKind::location;
  TargetPolicy policy = TargetPolicy::nearest_first;
  PsoConfig pso;
  std::uint64_t seed = 0;
  std::size_t max_trace_length = 32;
  /// Keep transitions pruned while chasing one target for later targets.
  bool carry_pruning = false;
  /// Direct attempts at a transition's guard before giving up on it.
  std::size_t transition_attempts = 2;
};

struct CampaignEvent {
  double seconds = 0.0;
  long long simulations = 0;
  std::string kind;
  std::size_t id = 0;
};

struct TargetOutcome {
  std::size_t id = 0;
  std::string outcome;  // visited, unreachable, budget
  long long simulations = 0;
};

struct CampaignReport {
  std::string mode;
  CriterionKind criterion = CriterionKind::location;
  std::uint64_t seed = 0;
  std::string automaton_hash;
  std::string spec_hash;
  CoverageLedger locations{Criterion{}};
  CoverageLedger transitions{Criterion{CriterionKind::transition, {}}};
  std::vector<TargetOutcome> targets;
  std::set<std::size_t> unreachable;
  std::optional<long long> budget_initial;
  long long budget_final = 0;
  long long simulations = 0;
  long long simulate_calls = 0;
  double wall_seconds = 0.0;
  std::vector<CampaignEvent> events;
  std::vector<std::size_t> new_locations_per_minute;

  const CoverageLedger& ledger() const { return criterion == CriterionKind::location ? locations : transitions; }
  std::size_t distinct_maximal_tests() const;
  /// Simulations spent when location q was first visited.
  std::optional<long long> simulations_to_visit(std::size_t q) const;
};

void to_json(nlohmann::json& j, const CampaignReport& r);

/// Picks the next target among `candidates` (location ids of `a`).
std::size_t select_target(const std::vector<std::size_t>& candidates, const SymbolicAutomaton& a, TargetPolicy policy,
                          std::mt19937_64& rng);

/// Breadth-first distances from the initial location; unreachable
/// locations get SIZE_MAX.
std::vector<std::size_t> distances_from_initial(const SymbolicAutomaton& a);

/// Campaign state over one automaton and system. Every simulation is
/// recorded into both coverage ledgers against the original automaton.
class Engine {
 public:
  Engine(const SymbolicAutomaton& a, const SystemModel& s, AdaptiveConfig config);

  /// Adaptive testing for location coverage.
  void run_location_campaign();
  /// Adaptive testing with transitions as targets.
  void run_transition_campaign();
  /// Uniform random input signals of length `length`, one per budget unit.
  void run_random(std::size_t length);

  /// Drives the system into location `target`; returns whether it was visited.
  bool reach(std::size_t target);
  /// Attempts to traverse transition `id` of the original automaton.
  bool cover_transition(std::size_t id);
  /// One strategy execution from q; extends `prefix` along the way.
  bool explore(const StrategyAutomaton& strat, std::size_t q, std::size_t target, Signal& prefix);

  SymbolicAutomaton& working() { return working_; }
  const SimulationBudget& budget() const { return budget_; }
  long long simulate_calls() const { return counted_.calls(); }
  CampaignReport report(std::string mode) const;

 private:
  void record(const Signal& tau, const Signal& out);
  Signal simulate_and_record(const Signal& tau);
  SearchOutcome search_guard(const Signal& prefix, const Predicate& guard, std::vector<double>& best);
  void log(const std::string& kind, std::size_t id);
  Valuation input_point(const std::vector<double>& x) const;
  Box input_box() const;

  const SymbolicAutomaton& a_;
  CountingModel counted_;
  AdaptiveConfig config_;
  SimulationBudget budget_;
  SymbolicAutomaton working_;
  GameArena arena_;
  CoverageLedger locations_;
  CoverageLedger transitions_;
  std::vector<TargetOutcome> targets_;
  std::set<std::size_t> unreachable_;
  std::vector<CampaignEvent> events_;
  std::mt19937_64 rng_;
  std::uint64_t episodes_ = 0;
  std::chrono::steady_clock::time_point start_;
};

CampaignReport adaptive_testing(const SymbolicAutomaton& a, const SystemModel& s, const AdaptiveConfig& config);
CampaignReport transition_coverage_campaign(const SymbolicAutomaton& a, const SystemModel& s,
                                            const AdaptiveConfig& config);
CampaignReport random_testing(const SymbolicAutomaton& a, const SystemModel& s, const AdaptiveConfig& config,
                              std::size_t length);

struct FalsifyResult {
  std::optional<Signal> witness;
  double robustness = 0.0;
  long long simulations = 0;
  long long simulate_calls = 0;
  long long budget_final = 0;
  StopReason reason = StopReason::iterations_exhausted;
  double wall_seconds = 0.0;
};

/// Robustness-guided search over whole input signals of length `length`.
FalsifyResult falsify_global(const IaStlSpec& spec, const SystemModel& s, const AdaptiveConfig& config,
                             std::size_t length);

void to_json(nlohmann::json& j, const FalsifyResult& r);

}  // namespace stlcov
