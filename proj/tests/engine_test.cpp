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

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "game_oracles.hpp"
#include "stlcov/compiler.hpp"
#include "stlcov/engine.hpp"
#include "stlcov/monitor.hpp"

namespace stlcov {
namespace {

using testing::example2;

const SymbolicAutomaton& ex2() {
  static const SymbolicAutomaton a = compile(example2());
  return a;
}

// Outputs c and d pinned to zero.
class ZeroModel : public SystemModel {
 public:
  ZeroModel(VariableSet in, VariableSet out) : in_(std::move(in)), out_(std::move(out)) {}
  const VariableSet& inputs() const override { return in_; }
  const VariableSet& outputs() const override { return out_; }
  Signal run(const Signal& tau) const override {
    Signal out(out_);
    for (std::size_t t = 0; t < tau.size(); ++t) out.push_back(Valuation(out_, std::vector<double>(out_.size(), 0.0)));
    return out;
  }

 private:
  VariableSet in_, out_;
};

AdaptiveConfig small_config(std::uint64_t seed, std::optional<long long> budget) {
  AdaptiveConfig c;
  c.seed = seed;
  c.budget = budget;
  return c;
}

// Post-hoc soundness and budget checks shared by every campaign.
void check_report(const CampaignReport& r, const SymbolicAutomaton& a) {
  EXPECT_EQ(r.simulations, r.simulate_calls);
  if (r.budget_initial) {
    EXPECT_EQ(r.simulations, *r.budget_initial - r.budget_final);
    EXPECT_LE(r.simulations, *r.budget_initial + 1);
  }
  std::set<std::size_t> locs, trans;
  for (const auto& t : r.locations.tests()) {
    EXPECT_LE(t.inputs.size(), 32u);
    stlcov::Run run = t.run;
    locs.insert(run.locations.begin(), run.locations.end());
    trans.insert(run.transitions.begin(), run.transitions.end());
  }
  EXPECT_EQ(r.locations.satisfied(), locs);
  EXPECT_EQ(r.transitions.satisfied(), trans);
  (void)a;
}

TEST(SelectTarget, NearestFirst) {
  const auto& a = ex2();
  std::vector<std::size_t> cands;
  for (std::size_t q = 0; q < a.num_locations(); ++q)
    if (q != a.initial_location()) cands.push_back(q);
  std::mt19937_64 rng(1);
  std::size_t q = select_target(cands, a, TargetPolicy::nearest_first, rng);
  // adjacency oracle: some transition from the initial location enters q
  bool adjacent = false;
  for (const auto& t : a.transitions()) adjacent = adjacent || (t.src == a.initial_location() && t.dst == q);
  EXPECT_TRUE(adjacent);
  EXPECT_EQ(q, 1u);  // smallest id among the adjacent ones
  EXPECT_EQ(select_target({3}, a, TargetPolicy::nearest_first, rng), 3u);
  EXPECT_EQ(select_target({4, 2}, a, TargetPolicy::id_order, rng), 2u);
  std::mt19937_64 r1(9), r2(9);
  EXPECT_EQ(select_target(cands, a, TargetPolicy::seeded_random, r1),
            select_target(cands, a, TargetPolicy::seeded_random, r2));
}

TEST(Explore, TargetReachedWithoutSimulation) {
  auto s2 = builtin("s2");
  Engine e(ex2(), *s2, small_config(1, 10));
  auto strat = build_strategy(ex2(), {0});
  ASSERT_TRUE(strat);
  Signal prefix(ex2().inputs());
  EXPECT_TRUE(e.explore(*strat, 0, 0, prefix));
  EXPECT_EQ(e.simulate_calls(), 0);
  EXPECT_EQ(e.budget().used(), 0);
}

TEST(Explore, ForceBranchUsesSigma) {
  const auto& a = ex2();
  auto s2 = builtin("s2");
  Engine e(a, *s2, small_config(1, 10));
  auto strat = build_strategy(a, {3});
  ASSERT_TRUE(strat);
  ASSERT_EQ(strat->klass.at(0), StrategyClass::force);
  Predicate a_lt_4 = Predicate::literal(Atom{Affine::variable("a") - Affine::constant(4), false}, true);
  EXPECT_EQ(strat->sigma.at(0), a_lt_4);
  Signal prefix(a.inputs());
  EXPECT_TRUE(e.explore(*strat, 0, 3, prefix));
  ASSERT_EQ(prefix.size(), 1u);
  EXPECT_TRUE(evaluate(prefix[0], strat->sigma.at(0)));
  EXPECT_EQ(e.simulate_calls(), 1);
  // the followed transition's guard holds on the composed valuation
  Valuation v = compose(prefix[0], s2->run(prefix)[0]);
  EXPECT_TRUE(evaluate(v, a.transition(3).guard));
}

TEST(Explore, CoopFailurePrunesTransition) {
  VariableSet v({{"a", VarKind::input, -5, 5}, {"c", VarKind::output, -5, 5}});
  Predicate c4 = Predicate::literal(Atom{Affine::variable("c") - Affine::constant(4), false});
  std::vector<Location> locs{{0, "q0", LocationKind::active}, {1, "q1", LocationKind::active}};
  std::vector<Transition> ts{{0, 0, 1, c4}, {1, 0, 0, !c4}, {2, 1, 1, Predicate::truth()}};
  SymbolicAutomaton a(v, locs, {0}, {}, ts);
  ZeroModel zero(a.inputs(), a.outputs());
  AdaptiveConfig c = small_config(2, 1000);
  c.pso.swarm_size = 5;
  c.pso.max_iterations = 4;
  Engine e(a, zero, c);
  auto strat = build_strategy(a, {1});
  ASSERT_TRUE(strat);
  ASSERT_EQ(strat->klass.at(0), StrategyClass::coop);
  Signal prefix(a.inputs());
  EXPECT_FALSE(e.explore(*strat, 0, 1, prefix));
  EXPECT_EQ(e.simulate_calls(), 20);
  EXPECT_FALSE(e.working().has_transition(0));
  EXPECT_EQ(e.working().num_transitions(), 2u);
  // with the edge gone the target has no strategy left
  EXPECT_FALSE(build_strategy(e.working(), {1}));
}

TEST(Adaptive, S1NeverReachesErrorSink) {
  auto s1 = builtin("s1");
  CampaignReport r = adaptive_testing(ex2(), *s1, small_config(11, std::nullopt));
  std::size_t sink = *ex2().error_sink();
  EXPECT_FALSE(r.locations.covers(sink));
  for (std::size_t q = 0; q < ex2().num_locations(); ++q)
    if (!r.locations.covers(q)) EXPECT_TRUE(r.unreachable.count(q)) << q;
  EXPECT_LT(r.locations.ratio(), Rational(1, 1));
  check_report(r, ex2());
  for (const auto& t : r.locations.tests())
    if (!t.inputs.empty())
      EXPECT_EQ(verdict(example2().formula, compose_signals(t.inputs, s1->run(t.inputs))), Verdict::satisfied);
}

TEST(Adaptive, S2ReachesErrorSink) {
  auto s2 = builtin("s2");
  CampaignReport r = adaptive_testing(ex2(), *s2, small_config(11, 2000));
  EXPECT_TRUE(r.locations.covers(*ex2().error_sink()));
  EXPECT_EQ(r.locations.ratio(), Rational(1, 1));
  check_report(r, ex2());
  for (const auto& t : r.targets) EXPECT_EQ(t.outcome, "visited");
}

TEST(Adaptive, ZeroBudget) {
  auto s2 = builtin("s2");
  CampaignReport r = adaptive_testing(ex2(), *s2, small_config(3, 0));
  EXPECT_LE(r.simulations, 1);
  EXPECT_LE(r.locations.tests().size(), 2u);  // the empty test plus at most one simulation
  check_report(r, ex2());
}

TEST(Adaptive, MonotoneInBudget) {
  auto s2 = builtin("s2");
  std::set<std::size_t> prev;
  for (long long b : {0, 5, 20, 40, 80, 200}) {
    CampaignReport r = adaptive_testing(ex2(), *s2, small_config(4, b));
    check_report(r, ex2());
    EXPECT_TRUE(std::includes(r.locations.satisfied().begin(), r.locations.satisfied().end(), prev.begin(), prev.end()))
        << b;
    prev = r.locations.satisfied();
  }
}

TEST(Adaptive, CarryPruningSpendsNoMore) {
  auto s1 = builtin("s1");
  AdaptiveConfig c = small_config(11, std::nullopt);
  CampaignReport as_written = adaptive_testing(ex2(), *s1, c);
  c.carry_pruning = true;
  CampaignReport carried = adaptive_testing(ex2(), *s1, c);
  EXPECT_LE(carried.simulations, as_written.simulations);
  EXPECT_EQ(carried.locations.satisfied(), as_written.locations.satisfied());
}

TEST(Adaptive, DeterministicReplay) {
  auto s2 = builtin("s2");
  CampaignReport r1 = adaptive_testing(ex2(), *s2, small_config(6, 300));
  CampaignReport r2 = adaptive_testing(ex2(), *s2, small_config(6, 300));
  EXPECT_EQ(r1.simulations, r2.simulations);
  ASSERT_EQ(r1.locations.tests().size(), r2.locations.tests().size());
  for (std::size_t i = 0; i < r1.locations.tests().size(); ++i)
    EXPECT_EQ(r1.locations.tests()[i].inputs, r2.locations.tests()[i].inputs);
}

TEST(TransitionCampaign, BeatsIncidentalCoverage) {
  auto s2 = builtin("s2");
  CampaignReport loc = adaptive_testing(ex2(), *s2, small_config(11, 5000));
  CampaignReport tr = transition_coverage_campaign(ex2(), *s2, small_config(11, 5000));
  EXPECT_GT(tr.transitions.satisfied().size(), loc.transitions.satisfied().size());
  check_report(tr, ex2());
  std::size_t sink = *ex2().error_sink();
  std::set<std::size_t> into;
  for (std::size_t id : tr.transitions.satisfied())
    if (ex2().transition(id).dst == sink && ex2().transition(id).src != sink) into.insert(id);
  EXPECT_GE(into.size(), 2u);
}

TEST(TransitionCampaign, AlreadyCoveredCostsNothing) {
  auto s2 = builtin("s2");
  Engine e(ex2(), *s2, small_config(11, 5000));
  ASSERT_TRUE(e.cover_transition(3));
  long long used = e.simulate_calls();
  EXPECT_TRUE(e.cover_transition(3));
  EXPECT_EQ(e.simulate_calls(), used);
}

TEST(TransitionCampaign, UnreachableSourceIsEvidence) {
  VariableSet v({{"a", VarKind::input, -5, 5}, {"c", VarKind::output, -5, 5}});
  std::vector<Location> locs{{0, "q0", LocationKind::active}, {1, "q1", LocationKind::active}};
  std::vector<Transition> ts{{0, 0, 0, Predicate::truth()}, {1, 1, 1, Predicate::truth()}};
  SymbolicAutomaton a(v, locs, {0}, {}, ts);
  ZeroModel zero(a.inputs(), a.outputs());
  Engine e(a, zero, small_config(1, 100));
  EXPECT_FALSE(e.cover_transition(1));
  EXPECT_EQ(e.simulate_calls(), 0);
  EXPECT_TRUE(e.report("transition").unreachable.count(1));
}

TEST(Falsify, S2Witness) {
  auto s2 = builtin("s2");
  FalsifyResult r = falsify_global(example2(), *s2, small_config(5, 3000), 3);
  ASSERT_TRUE(r.witness);
  EXPECT_LT(r.robustness, 0);
  EXPECT_LT(robustness(example2().formula, compose_signals(*r.witness, s2->run(*r.witness)), 0), 0);
  EXPECT_EQ(r.simulations, r.simulate_calls);
  EXPECT_EQ(r.simulations, 8);  // frozen under seed 5
}

TEST(Falsify, S1HasNoWitness) {
  auto s1 = builtin("s1");
  AdaptiveConfig c = small_config(5, 400);
  FalsifyResult r = falsify_global(example2(), *s1, c, 3);
  EXPECT_FALSE(r.witness);
  EXPECT_GE(r.robustness, 0);
  EXPECT_EQ(r.reason, StopReason::budget_exhausted);
  EXPECT_EQ(r.simulations, 401);
  FalsifyResult zero = falsify_global(example2(), *s1, small_config(5, 0), 3);
  EXPECT_LE(zero.simulations, 1);
}

TEST(Random, MostlyNoBetterThanAdaptive) {
  // Short random traces hit this sink quickly, so single pairs can go
  // either way at budget 100; the trend must still hold.
  auto s2 = builtin("s2");
  int not_better = 0;
  for (std::uint64_t seed = 1; seed <= 10; ++seed) {
    CampaignReport rnd = random_testing(ex2(), *s2, small_config(seed, 100), 3);
    CampaignReport ad = adaptive_testing(ex2(), *s2, small_config(seed, 100));
    not_better += rnd.locations.ratio() <= ad.locations.ratio();
    EXPECT_EQ(rnd.simulations, 100);
    check_report(rnd, ex2());
  }
  EXPECT_GE(not_better, 7);
}

TEST(Random, ZeroBudgetAndReplay) {
  auto s2 = builtin("s2");
  CampaignReport z = random_testing(ex2(), *s2, small_config(3, 0), 3);
  EXPECT_EQ(z.simulations, 0);
  EXPECT_TRUE(z.locations.satisfied().empty());
  CampaignReport r1 = random_testing(ex2(), *s2, small_config(8, 50), 4);
  CampaignReport r2 = random_testing(ex2(), *s2, small_config(8, 50), 4);
  EXPECT_EQ(r1.locations.counts(), r2.locations.counts());
  EXPECT_EQ(r1.transitions.counts(), r2.transitions.counts());
}

TEST(Report, Json) {
  auto s2 = builtin("s2");
  CampaignReport r = adaptive_testing(ex2(), *s2, small_config(11, 2000));
  nlohmann::json j = r;
  EXPECT_EQ(j["mode"], "adaptive");
  EXPECT_EQ(j["automaton_hash"], automaton_hash(ex2()));
  EXPECT_EQ(j["percent"], 100);
  EXPECT_EQ(j["simulations"], r.simulations);
  EXPECT_EQ(j["tests"].size(), r.locations.tests().size());
  EXPECT_LE(r.distinct_maximal_tests(), r.locations.tests().size());
  EXPECT_GE(r.distinct_maximal_tests(), 1u);
  std::size_t per_minute = 0;
  for (auto n : r.new_locations_per_minute) per_minute += n;
  EXPECT_EQ(per_minute, r.locations.satisfied().size());
}

}  // namespace
}  // namespace stlcov
