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

#include <sstream>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "stlcov/errors.hpp"
#include "stlcov/signal.hpp"

namespace stlcov {
namespace {

VariableSet vars(std::initializer_list<std::pair<const char*, VarKind>> list, double lo = -10, double hi = 10) {
  std::vector<VariableProfile> out;
  for (auto [n, k] : list) out.push_back({n, k, lo, hi});
  return VariableSet(out);
}

TEST(Valuation, ComposeJoinsDisjointBindings) {
  auto in = vars({{"a", VarKind::input}, {"b", VarKind::input}});
  auto out = vars({{"c", VarKind::output}, {"d", VarKind::output}}, -50, 50);
  Valuation v = compose(Valuation::from_map(in, {{"a", 4}, {"b", 2}}),
                        Valuation::from_map(out, {{"c", 10}, {"d", 12}}));
  EXPECT_EQ(v.to_map(), (std::map<std::string, double>{{"a", 4}, {"b", 2}, {"c", 10}, {"d", 12}}));
}

TEST(Valuation, ComposeWithEmpty) {
  auto out = vars({{"c", VarKind::output}});
  Valuation v = compose(Valuation(), Valuation::from_map(out, {{"c", 1}}));
  EXPECT_EQ(v.to_map(), (std::map<std::string, double>{{"c", 1}}));
}

TEST(Valuation, ComposeRejectsSharedVariable) {
  auto a = vars({{"a", VarKind::input}});
  EXPECT_THROW(compose(Valuation(a, {1}), Valuation(a, {2})), DisjointnessViolation);
}

TEST(Valuation, OutOfDomainValueIsAnError) {
  auto a = vars({{"a", VarKind::input}});
  EXPECT_THROW(Valuation(a, {10.5}), DomainViolation);
  EXPECT_NO_THROW(Valuation(a, {10}));
}

TEST(Valuation, Project) {
  auto x = vars({{"a", VarKind::input}, {"b", VarKind::input}, {"c", VarKind::output}});
  Valuation v(x, {4, 2, 10});
  EXPECT_EQ(project(v, {"a", "b"}).to_map(), (std::map<std::string, double>{{"a", 4}, {"b", 2}}));
  EXPECT_EQ(project(v, x.names()), v);
  EXPECT_THROW(project(Valuation(vars({{"a", VarKind::input}}), {1}), {"z"}), UnknownVariable);
}

TEST(Valuation, ComposeAlgebra) {
  auto a = vars({{"a", VarKind::input}});
  auto b = vars({{"b", VarKind::input}});
  auto c = vars({{"c", VarKind::output}});
  Valuation va(a, {1}), vb(b, {-2}), vc(c, {3});
  EXPECT_EQ(compose(compose(va, vb), vc), compose(va, compose(vb, vc)));
  EXPECT_EQ(compose(va, vb), compose(vb, va));
  EXPECT_EQ(project(compose(va, vb), {"a"}), va);
}

TEST(Signal, ComposeSignalsStepwise) {
  using namespace testing;
  Signal w = compose_signals(tau1(), s2_longhand(tau1()));
  ASSERT_EQ(w.size(), 3u);
  EXPECT_EQ(w.variables().names(), (std::vector<std::string>{"a", "b", "c", "d"}));
  EXPECT_EQ(w[1].at("c"), 10);
  EXPECT_EQ(compose_signals(Signal(), Signal()).size(), 0u);
}

TEST(Signal, ComposeSignalsLengthMismatch) {
  using namespace testing;
  Signal out = s2_longhand(tau1());
  EXPECT_THROW(compose_signals(tau1().prefix(2), out), LengthMismatch);
}

TEST(Signal, CsvRoundTrip) {
  using namespace testing;
  Signal w = compose_signals(tau2(), s2_longhand(tau2()));
  std::stringstream ss;
  write_trace_csv(ss, w);
  EXPECT_EQ(ss.str().substr(0, 10), "t,a,b,c,d\n");
  Signal back = read_trace_csv(ss, w.variables());
  EXPECT_EQ(back, w);
}

TEST(Signal, CsvRejectsBadTimeColumn) {
  auto a = vars({{"a", VarKind::input}});
  std::stringstream ss("t,a\n1,0\n");
  EXPECT_THROW(read_trace_csv(ss, a), SchemaError);
  std::stringstream unknown("t,z\n0,0\n");
  EXPECT_THROW(read_trace_csv(unknown, a), Error);
}

}  // namespace
}  // namespace stlcov
