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

#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "stlcov/errors.hpp"
#include "stlcov/monitor.hpp"

namespace stlcov {
namespace {

using testing::example2;

constexpr double kInf = std::numeric_limits<double>::infinity();

VariableSet abc() {
  return VariableSet({{"a", VarKind::input, -10, 10},
                      {"b", VarKind::input, -10, 10},
                      {"c", VarKind::output, -10, 10},
                      {"d", VarKind::output, -10, 10}});
}

Formula f(const char* text) { return parse_formula(text, abc()); }

TEST(Parser, Example2) {
  const IaStlSpec& s = example2();
  EXPECT_EQ(s.inputs().names(), (std::vector<std::string>{"a", "b"}));
  EXPECT_EQ(s.outputs().names(), (std::vector<std::string>{"c", "d"}));
  EXPECT_EQ(s.formula.kind(), FormulaKind::always);
  EXPECT_FALSE(s.formula.interval().is_bounded());
  const Formula& body = s.formula.arg(0);
  ASSERT_EQ(body.kind(), FormulaKind::implication);
  EXPECT_EQ(body.arg(0).kind(), FormulaKind::historically);
  EXPECT_EQ(body.arg(0).interval(), Interval::bounded(0, 1));
  EXPECT_EQ(body.arg(1).kind(), FormulaKind::disjunction);
}

TEST(Parser, SpecFileMatchesFixture) {
  std::ifstream in(STLCOV_SOURCE_DIR "/specs/example2.stl");
  std::stringstream ss;
  ss << in.rdbuf();
  IaStlSpec s = parse_spec(ss.str());
  EXPECT_EQ(s.formula, example2().formula);
  EXPECT_EQ(s.variables, example2().variables);
}

TEST(Parser, RejectsInvertedInterval) {
  try {
    parse_spec("input a in [0,1]; formula: G[2,1] a > 0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 1u);
    EXPECT_EQ(e.column(), 29u);
  }
}

TEST(Parser, RejectsUndeclaredVariable) {
  try {
    parse_spec("input a in [0,1];\nformula: F[0,1] z > 0");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_EQ(e.column(), 17u);
    EXPECT_NE(std::string(e.what()).find("'z'"), std::string::npos);
  }
}

TEST(Parser, SyntaxErrorsCarryPosition) {
  EXPECT_THROW(parse_spec("input a in [0,1] formula: a > 0"), ParseError);
  EXPECT_THROW(parse_spec("input a in [0,1]; formula: a >"), ParseError);
  EXPECT_THROW(parse_spec("input a in [0,1]; formula: (a > 0"), ParseError);
  EXPECT_THROW(parse_spec("input a in [0,1]; formula: a * a > 0"), ParseError);
  EXPECT_THROW(parse_spec("input a in [2,1]; formula: a > 0"), ParseError);
  EXPECT_THROW(parse_spec("input a in [0,1]; output a in [0,1]; formula: a > 0"), ParseError);
}

TEST(Parser, AffineTerms) {
  Formula g = f("2*a + 3 b - (c - 1) >= -0.5 * d + 4");
  ASSERT_EQ(g.kind(), FormulaKind::atom);
  // lhs - rhs = 2a + 3b - c + 1 + 0.5 d - 4
  Affine expect;
  expect.coeffs = {{"a", 2}, {"b", 3}, {"c", -1}, {"d", 0.5}};
  expect.offset = -3;
  EXPECT_EQ(g.atom().f, expect);
  EXPECT_FALSE(g.atom().strict);
  Formula h = f("a < 4");
  EXPECT_TRUE(h.atom().strict);
  EXPECT_EQ(h.atom().f, Affine::constant(4) - Affine::variable("a"));
}

TEST(Parser, Precedence) {
  // not > U > and > or > ->
  Formula g = f("not a > 0 and b > 0 U c > 0 or d > 0 -> a > 1 -> b > 1");
  ASSERT_EQ(g.kind(), FormulaKind::implication);
  EXPECT_EQ(g.arg(1).kind(), FormulaKind::implication);
  const Formula& lhs = g.arg(0);
  ASSERT_EQ(lhs.kind(), FormulaKind::disjunction);
  ASSERT_EQ(lhs.arg(0).kind(), FormulaKind::conjunction);
  EXPECT_EQ(lhs.arg(0).arg(0).kind(), FormulaKind::negation);
  EXPECT_EQ(lhs.arg(0).arg(1).kind(), FormulaKind::until);
  EXPECT_FALSE(lhs.arg(0).arg(1).interval().is_bounded());
}

TEST(Parser, CommentsAndUnboundedIntervals) {
  IaStlSpec s = parse_spec("# header\ninput a in [0,1]; # trailing\nformula: a >= 0 S[1,inf) a > 0.5");
  EXPECT_EQ(s.formula.kind(), FormulaKind::since);
  EXPECT_EQ(s.formula.interval().lo, 1u);
  EXPECT_FALSE(s.formula.interval().is_bounded());
}

TEST(Parser, PrintedFormulaReparses) {
  testing::FormulaGen gen({"a", "b", "c", "d"}, 99);
  for (int i = 0; i < 300; ++i) {
    Formula g = gen.formula(4);
    EXPECT_EQ(parse_formula(to_string(g), abc()), g) << to_string(g);
  }
}

TEST(ToCore, Definitions) {
  const Formula t = Formula::truth();
  Formula c4 = f("c >= 4"), a4 = f("a >= 4");
  EXPECT_EQ(to_core(f("F[0,1] c >= 4")), Formula::until(Interval::bounded(0, 1), t, c4));
  EXPECT_EQ(to_core(f("H[0,1] a >= 4")),
            Formula::negation(Formula::since(Interval::bounded(0, 1), t, Formula::negation(a4))));
  Formula core = Formula::until(Interval::bounded(1, 2), a4, Formula::negation(c4));
  EXPECT_EQ(to_core(core), core);
}

TEST(Robustness, AtomIsFunctionValue) {
  Signal w = signal_from_columns(abc(), {{"a", {3}}, {"b", {0}}, {"c", {0}}, {"d", {0}}});
  EXPECT_EQ(robustness(f("a >= 4"), w, 0), -1);
  EXPECT_EQ(robustness(f("a < 4"), w, 0), 1);
}

TEST(Robustness, WindowClippedAtEnd) {
  Signal w = signal_from_columns(abc(), {{"a", {0, 0, 0}}, {"b", {0, 0, 0}}, {"c", {0, 0, 6}}, {"d", {0, 0, 0}}});
  EXPECT_EQ(robustness(f("F[0,1] c >= 4"), w, 2), 2);
  EXPECT_EQ(robustness(f("F[1,1] c >= 4"), w, 2), -kInf);
  EXPECT_EQ(robustness(f("G[1,1] c >= 4"), w, 2), kInf);
  EXPECT_EQ(robustness(f("H[0,1] c >= 4"), w, 0), -4);
}

TEST(Robustness, UntilInnerIntervalIsOpen) {
  // c >= 4 holds only at t=2; a >= 0 fails at t=0 and t=2 but holds at t=1.
  Signal w = signal_from_columns(abc(), {{"a", {-1, 1, -1}}, {"b", {0, 0, 0}}, {"c", {0, 0, 5}}, {"d", {0, 0, 0}}});
  EXPECT_EQ(robustness(f("a >= 0 U[0,2] c >= 4"), w, 0), 1);
  EXPECT_EQ(robustness(f("a >= 0 S[2,2] c >= 0"), w, 2), 0);
}

TEST(Robustness, MatchesBruteForceOracle) {
  testing::FormulaGen gen({"a", "b", "c", "d"}, 1234);
  for (int i = 0; i < 300; ++i) {
    Formula g = gen.formula(4);
    std::size_t n = 1 + gen.rng()() % 12;
    Signal w = gen.trace(abc(), n);
    auto trace = robustness_trace(g, w);
    for (std::size_t t = 0; t < n; ++t)
      ASSERT_EQ(trace[t], testing::brute_rho(g, w, static_cast<long>(t))) << to_string(g) << " t=" << t;
  }
}

TEST(Robustness, NegationDualityAndDerivedOperators) {
  testing::FormulaGen gen({"a", "b", "c", "d"}, 77);
  for (int i = 0; i < 200; ++i) {
    Formula g = gen.formula(3);
    Interval iv = gen.interval();
    Signal w = gen.trace(abc(), 1 + gen.rng()() % 10);
    auto pos = robustness_trace(g, w);
    auto neg = robustness_trace(Formula::negation(g), w);
    auto ev = robustness_trace(Formula::eventually(iv, g), w);
    auto ev_core = robustness_trace(Formula::until(iv, Formula::truth(), g), w);
    auto al = robustness_trace(Formula::always(iv, g), w);
    auto not_ev_not = robustness_trace(Formula::eventually(iv, Formula::negation(g)), w);
    for (std::size_t t = 0; t < w.size(); ++t) {
      EXPECT_EQ(neg[t], -pos[t]);
      EXPECT_EQ(ev[t], ev_core[t]);
      EXPECT_EQ(al[t], -not_ev_not[t]);
    }
  }
}

TEST(Robustness, PastFormulaUnaffectedByExtension) {
  testing::FormulaGen gen({"a", "b", "c", "d"}, 5);
  for (int i = 0; i < 100; ++i) {
    Formula g = Formula::historically(gen.interval(), Formula::since(gen.interval(), Formula::atom(gen.atom()),
                                                                     Formula::atom(gen.atom())));
    Signal w = gen.trace(abc(), 10);
    auto full = robustness_trace(g, w);
    for (std::size_t n = 1; n < 10; ++n) {
      auto part = robustness_trace(g, w.prefix(n));
      for (std::size_t t = 0; t < n; ++t) EXPECT_EQ(part[t], full[t]);
    }
  }
}

TEST(Robustness, Errors) {
  Signal w = signal_from_columns(abc(), {{"a", {0}}, {"b", {0}}, {"c", {0}}, {"d", {0}}});
  EXPECT_THROW(robustness(f("a > 0"), w, 1), EvaluationError);
  EXPECT_THROW(verdict(f("a > 0"), Signal(abc())), EvaluationError);
  Signal only_a = signal_from_columns(VariableSet({{"a", VarKind::input, -1, 1}}), {{"a", {0}}});
  EXPECT_THROW(robustness(f("c > 0"), only_a, 0), UnknownVariable);
}

TEST(Verdict, Example2) {
  using namespace testing;
  const Formula& phi = example2().formula;
  EXPECT_EQ(verdict(phi, compose_signals(tau1(), s1_longhand(tau1()))), Verdict::satisfied);
  EXPECT_EQ(verdict(Formula::truth(), tau1()), Verdict::satisfied);

  // a = 4 and b > 2 is not enough: with b = 3, d = 11 >= 6 at every step.
  Signal b3 = inputs({4, 4, 4}, {3, 3, 3});
  EXPECT_EQ(verdict(phi, compose_signals(b3, s2_longhand(b3))), Verdict::satisfied);
  EXPECT_EQ(brute_rho(phi, compose_signals(b3, s2_longhand(b3)), 0), 3);

  // With a = 4 exactly the antecedent has robustness 0, so a = 4, b = 9 is a
  // tie (satisfied under rho >= 0) even though it is Boolean-violated.
  Signal tie = inputs({4, 4, 4}, {9, 9, 9});
  EXPECT_EQ(brute_rho(phi, compose_signals(tie, s2_longhand(tie)), 0), 0);

  // a = 5: d = 15 - b and c = 10 + b, so b > 9 or b < -6 violates.
  Signal b10 = inputs({5, 5, 5}, {10, 10, 10});
  Signal w = compose_signals(b10, s2_longhand(b10));
  EXPECT_EQ(verdict(phi, w), Verdict::violated);
  EXPECT_EQ(robustness(phi, w, 0), brute_rho(phi, w, 0));
  EXPECT_EQ(brute_rho(phi, w, 0), -1);

  Signal bm7 = inputs({5, 5, 5}, {-7, -7, -7});
  EXPECT_EQ(verdict(phi, compose_signals(bm7, s2_longhand(bm7))), Verdict::violated);
  Signal b9 = inputs({5, 5, 5}, {9, 9, 9});
  EXPECT_EQ(verdict(phi, compose_signals(b9, s2_longhand(b9))), Verdict::satisfied);
}

TEST(Verdict, Example2OnTau2MatchesOracle) {
  using namespace testing;
  Signal w = compose_signals(tau2(), s2_longhand(tau2()));
  for (long t = 0; t < 3; ++t) EXPECT_EQ(robustness(example2().formula, w, t), brute_rho(example2().formula, w, t));
}

}  // namespace
}  // namespace stlcov
