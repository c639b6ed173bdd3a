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

#include "stlcov/engine.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <map>

#include "stlcov/errors.hpp"
#include "stlcov/monitor.hpp"

namespace stlcov {

std::string to_string(TargetPolicy p) {
  switch (p) {
    case TargetPolicy::nearest_first:
      return "nearest-first";
    case TargetPolicy::id_order:
      return "id-order";
    default:
      return "seeded-random";
  }
}

TargetPolicy target_policy_from_string(const std::string& text) {
  if (text == "nearest-first") return TargetPolicy::nearest_first;
  if (text == "id-order") return TargetPolicy::id_order;
  if (text == "seeded-random") return TargetPolicy::seeded_random;
  throw SchemaError("unknown target policy '" + text + "'");
}

std::vector<std::size_t> distances_from_initial(const SymbolicAutomaton& a) {
  std::vector<std::size_t> dist(a.num_locations(), std::numeric_limits<std::size_t>::max());
  std::size_t init = a.initial_location();
  dist[init] = 0;
  std::deque<std::size_t> queue{init};
  while (!queue.empty()) {
    std::size_t q = queue.front();
    queue.pop_front();
    for (std::size_t id : a.outgoing(q)) {
      std::size_t d = a.transition(id).dst;
      if (dist[d] == std::numeric_limits<std::size_t>::max()) {
        dist[d] = dist[q] + 1;
        queue.push_back(d);
      }
    }
  }
  return dist;
}

namespace {

std::size_t pick(const std::vector<std::size_t>& candidates, const std::vector<std::size_t>& key, TargetPolicy policy,
                 std::mt19937_64& rng) {
  if (candidates.empty()) throw Error("no candidate targets");
  switch (policy) {
    case TargetPolicy::id_order:
      return *std::min_element(candidates.begin(), candidates.end());
    case TargetPolicy::seeded_random: {
      std::vector<std::size_t> sorted = candidates;
      std::sort(sorted.begin(), sorted.end());
      return sorted[std::uniform_int_distribution<std::size_t>(0, sorted.size() - 1)(rng)];
    }
    default:
      return *std::min_element(candidates.begin(), candidates.end(), [&](std::size_t x, std::size_t y) {
        return std::pair(key[x], x) < std::pair(key[y], y);
      });
  }
}

bool same_names(const VariableSet& x, const VariableSet& y) {
  auto a = x.names(), b = y.names();
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  return a == b;
}

Signal appended(const Signal& prefix, Valuation v) {
  Signal out = prefix;
  out.push_back(std::move(v));
  return out;
}

}  // namespace

std::size_t select_target(const std::vector<std::size_t>& candidates, const SymbolicAutomaton& a, TargetPolicy policy,
                          std::mt19937_64& rng) {
  return pick(candidates, distances_from_initial(a), policy, rng);
}

Engine::Engine(const SymbolicAutomaton& a, const SystemModel& s, AdaptiveConfig config)
    : a_(a),
      counted_(s),
      config_(std::move(config)),
      budget_(config_.budget ? SimulationBudget(*config_.budget) : SimulationBudget::unlimited()),
      working_(a),
      arena_(a),
      locations_(Criterion::of(a, CriterionKind::location)),
      transitions_(Criterion::of(a, CriterionKind::transition)),
      rng_(config_.seed),
      start_(std::chrono::steady_clock::now()) {
  if (!same_names(a.inputs(), s.inputs()) || !same_names(a.outputs(), s.outputs()))
    throw Error("system variables do not match the automaton's inputs and outputs");
  if (config_.budget && *config_.budget < 0) throw Error("budget must be nonnegative");
}

void Engine::log(const std::string& kind, std::size_t id) {
  double t = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  events_.push_back(CampaignEvent{t, counted_.calls(), kind, id});
}

void Engine::record(const Signal& tau, const Signal& out) {
  Run run = induced_run(a_, compose_signals(tau, out));
  for (std::size_t q : locations_.record(tau, run)) log("new_location", q);
  for (std::size_t t : transitions_.record(tau, run)) log("new_transition", t);
}

Signal Engine::simulate_and_record(const Signal& tau) {
  Signal out = simulate(counted_, tau, budget_);
  record(tau, out);
  return out;
}

Box Engine::input_box() const {
  Box b;
  for (const auto& p : a_.inputs()) {
    b.lo.push_back(p.lo);
    b.hi.push_back(p.hi);
  }
  return b;
}

Valuation Engine::input_point(const std::vector<double>& x) const { return Valuation(a_.inputs(), x); }

SearchOutcome Engine::search_guard(const Signal& prefix, const Predicate& guard, std::vector<double>& best) {
  PsoConfig pso = config_.pso;
  pso.seed = config_.seed * 1000003ULL + episodes_++;
  auto objective = [&](const std::vector<double>& x) {
    Signal tau = appended(prefix, input_point(x));
    Signal out = counted_.run(tau);
    if (out.size() != tau.size()) throw LengthMismatch("system output length differs from its input");
    record(tau, out);
    Valuation v = compose(tau.back(), out.back());
    return Evaluation{distance(v, guard, a_.variables()), evaluate(v, guard)};
  };
  SearchOutcome o = pso_minimize(objective, input_box(), pso, budget_, 0.0);
  best = o.best;
  return o;
}

bool Engine::explore(const StrategyAutomaton& strat, std::size_t q, std::size_t target, Signal& prefix) {
  if (q == target) {
    // Only the initial location is reached without a simulation; the empty
    // test witnesses it.
    if (!locations_.covers(q)) record(prefix, Signal(a_.outputs()));
    return true;
  }
  if (budget_.exhausted() || prefix.size() >= config_.max_trace_length || !strat.contains(q)) return false;

  if (strat.klass.at(q) == StrategyClass::force) {
    auto u = find_model(strat.sigma.at(q), a_.inputs());
    if (!u) return false;
    Signal next = appended(prefix, *u);
    Signal out = simulate_and_record(next);
    auto en = working_.enabled(q, compose(next.back(), out.back()));
    prefix = std::move(next);
    if (en.empty()) return false;
    return explore(strat, working_.transition(en.front()).dst, target, prefix);
  }

  auto moves = strat.moves(q);
  if (moves.empty()) return false;
  const Transition t = moves.front();
  std::vector<double> best;
  SearchOutcome o = search_guard(prefix, t.guard, best);
  if (o.success) {
    prefix.push_back(input_point(best));
    return explore(strat, t.dst, target, prefix);
  }
  if (o.reason != StopReason::budget_exhausted && working_.has_transition(t.id)) {
    working_.remove_transition(t.id);
    log("pruned", t.id);
  }
  return false;
}

bool Engine::reach(std::size_t target) {
  for (;;) {
    if (locations_.covers(target)) return true;
    if (budget_.exhausted()) return false;
    auto strat = build_strategy(working_, {target});
    if (!strat) {
      unreachable_.insert(target);
      log("unreachable", target);
      return false;
    }
    std::size_t before = working_.num_transitions();
    Signal prefix(a_.inputs());
    if (explore(*strat, strat->initial, target, prefix) || locations_.covers(target)) return true;
    if (budget_.exhausted()) return false;
    if (working_.num_transitions() == before) {
      // no progress and nothing pruned: the same attempt would repeat
      unreachable_.insert(target);
      log("stalled", target);
      return false;
    }
  }
}

void Engine::run_location_campaign() {
  for (;;) {
    std::vector<std::size_t> candidates;
    for (std::size_t q : locations_.criterion().requirements)
      if (!locations_.covers(q) && !unreachable_.count(q)) candidates.push_back(q);
    if (candidates.empty() || budget_.exhausted()) break;
    if (!config_.carry_pruning) working_ = a_;
    std::size_t target = select_target(candidates, working_, config_.policy, rng_);
    log("target", target);
    bool ok = reach(target);
    targets_.push_back({target, ok ? "visited" : unreachable_.count(target) ? "unreachable" : "budget",
                        counted_.calls()});
  }
}

bool Engine::cover_transition(std::size_t id) {
  if (transitions_.covers(id)) return true;
  const Transition& t = a_.transition(id);
  for (std::size_t attempt = 0; attempt < config_.transition_attempts; ++attempt) {
    Signal prefix(a_.inputs());
    bool at_source = false;
    for (;;) {
      if (budget_.exhausted()) return false;
      auto strat = build_strategy(working_, {t.src});
      if (!strat) {
        unreachable_.insert(id);
        log("unreachable", id);
        return false;
      }
      std::size_t before = working_.num_transitions();
      prefix = Signal(a_.inputs());
      if (explore(*strat, strat->initial, t.src, prefix)) {
        at_source = true;
        break;
      }
      if (budget_.exhausted()) return false;
      if (working_.num_transitions() == before) break;
    }
    if (transitions_.covers(id)) return true;
    if (!at_source || prefix.size() >= config_.max_trace_length) break;
    Predicate forced = arena_.ins_force_edge(t.src, id);
    if (!forced.is_false()) {
      auto u = find_model(forced, a_.inputs());
      if (u) simulate_and_record(appended(prefix, *u));
    } else {
      std::vector<double> best;
      search_guard(prefix, t.guard, best);
    }
    if (transitions_.covers(id)) return true;
    if (budget_.exhausted()) return false;
  }
  unreachable_.insert(id);
  log("stalled", id);
  return false;
}

void Engine::run_transition_campaign() {
  for (;;) {
    std::vector<std::size_t> candidates;
    for (std::size_t id : transitions_.criterion().requirements)
      if (!transitions_.covers(id) && !unreachable_.count(id)) candidates.push_back(id);
    if (candidates.empty() || budget_.exhausted()) break;
    if (!config_.carry_pruning) working_ = a_;
    auto dist = distances_from_initial(working_);
    std::map<std::size_t, std::size_t> key;
    std::size_t top = 0;
    for (std::size_t id : candidates) top = std::max(top, id);
    std::vector<std::size_t> by_id(top + 1, std::numeric_limits<std::size_t>::max());
    for (std::size_t id : candidates) by_id[id] = dist[a_.transition(id).src];
    std::size_t target = pick(candidates, by_id, config_.policy, rng_);
    log("target", target);
    bool ok = cover_transition(target);
    targets_.push_back({target, ok ? "visited" : unreachable_.count(target) ? "unreachable" : "budget",
                        counted_.calls()});
  }
}

void Engine::run_random(std::size_t length) {
  if (budget_.is_unlimited()) throw Error("random testing needs a finite budget");
  Box box = input_box();
  while (budget_.remaining() > 0) {
    Signal tau(a_.inputs());
    for (std::size_t t = 0; t < length; ++t) {
      std::vector<double> x;
      for (std::size_t k = 0; k < box.dim(); ++k)
        x.push_back(std::uniform_real_distribution<double>(box.lo[k], box.hi[k])(rng_));
      tau.push_back(input_point(x));
    }
    simulate_and_record(tau);
  }
}

CampaignReport Engine::report(std::string mode) const {
  CampaignReport r;
  r.mode = std::move(mode);
  r.criterion = config_.criterion;
  r.seed = config_.seed;
  r.automaton_hash = automaton_hash(a_);
  r.spec_hash = a_.spec_hash();
  r.locations = locations_;
  r.transitions = transitions_;
  r.targets = targets_;
  r.unreachable = unreachable_;
  r.budget_initial = config_.budget;
  r.budget_final = budget_.remaining();
  r.simulations = budget_.used();
  r.simulate_calls = counted_.calls();
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  r.events = events_;
  r.new_locations_per_minute.assign(static_cast<std::size_t>(r.wall_seconds / 60.0) + 1, 0);
  for (const auto& e : events_)
    if (e.kind == "new_location") {
      std::size_t m = std::min(static_cast<std::size_t>(e.seconds / 60.0), r.new_locations_per_minute.size() - 1);
      ++r.new_locations_per_minute[m];
    }
  return r;
}

std::size_t CampaignReport::distinct_maximal_tests() const {
  std::set<std::vector<double>> tests, proper_prefixes;
  for (const auto& t : locations.tests()) {
    std::vector<double> flat;
    std::size_t width = t.inputs.variables().size();
    for (const auto& v : t.inputs) flat.insert(flat.end(), v.values().begin(), v.values().end());
    for (std::size_t n = 0; n + width <= flat.size() && width > 0; n += width)
      if (n < flat.size()) proper_prefixes.emplace(flat.begin(), flat.begin() + static_cast<long>(n));
    tests.insert(std::move(flat));
  }
  std::size_t n = 0;
  for (const auto& t : tests) n += !proper_prefixes.count(t);
  return n;
}

std::optional<long long> CampaignReport::simulations_to_visit(std::size_t q) const {
  for (const auto& e : events)
    if (e.kind == "new_location" && e.id == q) return e.simulations;
  return std::nullopt;
}

void to_json(nlohmann::json& j, const CampaignReport& r) {
  nlohmann::json events = nlohmann::json::array();
  for (const auto& e : r.events)
    events.push_back({{"t", e.seconds}, {"simulations", e.simulations}, {"kind", e.kind}, {"id", e.id}});
  nlohmann::json targets = nlohmann::json::array();
  for (const auto& t : r.targets)
    targets.push_back({{"id", t.id}, {"outcome", t.outcome}, {"simulations", t.simulations}});
  nlohmann::json tests = nlohmann::json::array();
  for (const auto& t : r.locations.tests())
    tests.push_back({{"id", t.id},
                     {"inputs", signal_to_json(t.inputs)},
                     {"run", {{"locations", t.run.locations}, {"transitions", t.run.transitions}}}});
  const CoverageLedger& l = r.ledger();
  j = {{"mode", r.mode},
       {"criterion", to_string(r.criterion)},
       {"seed", r.seed},
       {"automaton_hash", r.automaton_hash},
       {"spec_hash", r.spec_hash},
       {"budget",
        {{"initial", r.budget_initial ? nlohmann::json(*r.budget_initial) : nlohmann::json(nullptr)},
         {"final", r.budget_initial ? nlohmann::json(r.budget_final) : nlohmann::json(nullptr)}}},
       {"simulations", r.simulations},
       {"simulate_calls", r.simulate_calls},
       {"wall_seconds", r.wall_seconds},
       {"ratio", l.criterion().requirements.empty() ? "0/1" : to_string(l.ratio())},
       {"percent", l.criterion().requirements.empty() ? 0 : l.ratio().percent()},
       {"locations", ledger_summary(r.locations)},
       {"transitions", ledger_summary(r.transitions)},
       {"targets", targets},
       {"unreachable", r.unreachable},
       {"events", events},
       {"new_locations_per_minute", r.new_locations_per_minute},
       {"test_count", r.locations.tests().size()},
       {"distinct_maximal_tests", r.distinct_maximal_tests()},
       {"tests", tests}};
}

CampaignReport adaptive_testing(const SymbolicAutomaton& a, const SystemModel& s, const AdaptiveConfig& config) {
  AdaptiveConfig c = config;
  c.criterion = CriterionKind::location;
  Engine e(a, s, c);
  e.run_location_campaign();
  return e.report("adaptive");
}

CampaignReport transition_coverage_campaign(const SymbolicAutomaton& a, const SystemModel& s,
                                            const AdaptiveConfig& config) {
  AdaptiveConfig c = config;
  c.criterion = CriterionKind::transition;
  Engine e(a, s, c);
  e.run_transition_campaign();
  return e.report("transition");
}

CampaignReport random_testing(const SymbolicAutomaton& a, const SystemModel& s, const AdaptiveConfig& config,
                              std::size_t length) {
  if (length == 0) throw Error("trace length must be positive");
  Engine e(a, s, config);
  e.run_random(length);
  return e.report("random");
}

FalsifyResult falsify_global(const IaStlSpec& spec, const SystemModel& s, const AdaptiveConfig& config,
                             std::size_t length) {
  if (length == 0) throw Error("trace length must be positive");
  auto start = std::chrono::steady_clock::now();
  CountingModel counted(s);
  SimulationBudget budget = config.budget ? SimulationBudget(*config.budget) : SimulationBudget::unlimited();
  VariableSet in = spec.variables.inputs();
  const std::size_t width = in.size();
  Box box;
  for (std::size_t t = 0; t < length; ++t)
    for (const auto& p : in) {
      box.lo.push_back(p.lo);
      box.hi.push_back(p.hi);
    }
  auto to_signal = [&](const std::vector<double>& x) {
    Signal tau(in);
    for (std::size_t t = 0; t < length; ++t)
      tau.push_back(Valuation(in, std::vector<double>(x.begin() + static_cast<long>(t * width),
                                                      x.begin() + static_cast<long>((t + 1) * width))));
    return tau;
  };
  auto objective = [&](const std::vector<double>& x) {
    Signal tau = to_signal(x);
    double rho = robustness(spec.formula, compose_signals(tau, counted.run(tau)), 0);
    return Evaluation{rho, rho < 0};
  };
  PsoConfig pso = config.pso;
  pso.seed = config.seed;
  SearchOutcome o = pso_minimize(objective, box, pso, budget, 0.0);
  FalsifyResult r;
  if (o.success) r.witness = to_signal(o.best);
  r.robustness = o.best_fitness;
  r.simulations = budget.used();
  r.simulate_calls = counted.calls();
  r.budget_final = budget.remaining();
  r.reason = o.reason;
  r.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

void to_json(nlohmann::json& j, const FalsifyResult& r) {
  j = {{"mode", "falsify"},
       {"found", r.witness.has_value()},
       {"robustness", std::isfinite(r.robustness) ? nlohmann::json(r.robustness) : nlohmann::json(nullptr)},
       {"simulations", r.simulations},
       {"simulate_calls", r.simulate_calls},
       {"stop_reason", to_string(r.reason)},
       {"wall_seconds", r.wall_seconds}};
  if (r.witness) j["witness"] = signal_to_json(*r.witness);
}

}  // namespace stlcov
