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

#include <random>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "stlcov/errors.hpp"
#include "stlcov/monitor.hpp"
#include "stlcov/sut.hpp"

namespace stlcov {
namespace {

using namespace testing;

std::vector<double> column(const Signal& w, const std::string& name) {
  std::vector<double> out;
  for (const auto& v : w) out.push_back(v.at(name));
  return out;
}

using Col = std::vector<double>;

std::vector<std::string> script(const std::string& name, std::vector<std::string> extra = {}) {
  std::vector<std::string> argv{STLCOV_PYTHON, std::string(STLCOV_SOURCE_DIR) + "/tools/" + name};
  argv.insert(argv.end(), extra.begin(), extra.end());
  return argv;
}

TEST(Builtin, S2ReproducesReferenceRows) {
  auto s2 = builtin("s2");
  SimulationBudget b(10);
  Signal o1 = simulate(*s2, tau1(), b);
  EXPECT_EQ(column(o1, "c"), (Col{8, 10, 8}));
  EXPECT_EQ(column(o1, "d"), (Col{11, 12, 11}));
  Signal o2 = simulate(*s2, tau2(), b);
  EXPECT_EQ(column(o2, "c"), (Col{10, 0, 6}));
  EXPECT_EQ(column(o2, "d"), (Col{12, 22, 10}));
  EXPECT_EQ(b.used(), 2);
}

TEST(Builtin, S1) {
  auto s1 = builtin("s1");
  Signal o = s1->run(tau1());
  EXPECT_EQ(column(o, "c"), (Col{3, 4, 3}));
  EXPECT_EQ(column(o, "d"), (Col{7, 8, 7}));
  Signal one = s1->run(inputs({3}, {2}));
  EXPECT_EQ(column(one, "d"), (Col{7}));
}

TEST(Builtin, AgreesWithLonghandOnRandomInputs) {
  auto s1 = builtin("s1"), s2 = builtin("s2");
  std::mt19937 rng(1);
  std::uniform_real_distribution<double> d(-10, 10);
  for (int i = 0; i < 100; ++i) {
    Col a, b;
    for (std::size_t t = 0; t < 1 + rng() % 6; ++t) {
      a.push_back(d(rng));
      b.push_back(d(rng));
    }
    Signal tau = inputs(a, b);
    EXPECT_EQ(s1->run(tau), s1_longhand(tau));
    EXPECT_EQ(s2->run(tau), s2_longhand(tau));
    EXPECT_EQ(s2->run(tau), s2->run(tau));
  }
}

TEST(Builtin, LeakyIntegratorIsStatefulWithinACall) {
  auto m = builtin("leaky_integrator", {{"alpha", 0.5}});
  Signal u = signal_from_columns(m->inputs(), {{"u", {1, 1}}});
  EXPECT_EQ(column(m->run(u), "y"), (Col{1, 1.5}));
  // no state leaks between calls
  EXPECT_EQ(column(m->run(u), "y"), (Col{1, 1.5}));
}

TEST(Builtin, UnknownName) { EXPECT_THROW(builtin("s3"), UnknownModel); }

TEST(Budget, OneUnitPerCallRegardlessOfLength) {
  auto s2 = builtin("s2");
  SimulationBudget b(3);
  simulate(*s2, inputs({1, 2, 3, 4, 5, 6}, {0, 0, 0, 0, 0, 0}), b);
  simulate(*s2, inputs({}, {}), b);
  EXPECT_EQ(b.remaining(), 1);
  CountingModel counted(*s2);
  for (int k = 0; k < 4; ++k) simulate(counted, tau1(), b);
  EXPECT_EQ(counted.calls(), 4);
  EXPECT_EQ(b.remaining(), -3);
  EXPECT_TRUE(b.exhausted());
}

TEST(Property, S1SatisfiesExample2) {
  auto s1 = builtin("s1");
  std::mt19937 rng(77);
  std::uniform_real_distribution<double> d(-10, 10);
  for (int i = 0; i < 300; ++i) {
    Col a, b;
    for (std::size_t t = 0; t < 1 + rng() % 10; ++t) {
      // bias a towards the trigger threshold
      a.push_back(rng() % 2 ? d(rng) : 4 + std::abs(d(rng)) / 2);
      b.push_back(d(rng));
    }
    Signal tau = inputs(a, b);
    ASSERT_EQ(verdict(example2().formula, compose_signals(tau, s1->run(tau))), Verdict::satisfied);
  }
}

TEST(External, EchoRoundTrip) {
  VariableSet in({{"a", VarKind::input, -10, 10}}), out({{"c", VarKind::output, -10, 10}});
  auto m = external(script("echo_sut.py", {"c=a"}), in, out);
  Signal tau = signal_from_columns(in, {{"a", {1.5, -2.25, 3.125}}});
  EXPECT_EQ(column(m->run(tau), "c"), column(tau, "a"));
  // the same process serves later calls
  EXPECT_EQ(column(m->run(tau.prefix(1)), "c"), (Col{1.5}));
  EXPECT_EQ(m->run(signal_from_columns(in, {{"a", {}}})).size(), 0u);
}

TEST(External, ShortOutputIsLengthMismatch) {
  VariableSet in({{"a", VarKind::input, -10, 10}}), out({{"c", VarKind::output, -10, 10}});
  auto m = external(script("echo_sut.py", {"--short", "2", "c=a"}), in, out);
  Signal tau = signal_from_columns(in, {{"a", {1, 2, 3}}});
  EXPECT_THROW(m->run(tau), LengthMismatch);
  // restarts after the failure
  EXPECT_EQ(column(m->run(tau.prefix(2)), "c"), (Col{1, 2}));
}

TEST(External, S2ScriptMatchesBuiltin) {
  auto s2 = builtin("s2");
  auto ext = external(script("s2_sut.py"), s2->inputs(), s2->outputs());
  EXPECT_EQ(ext->run(tau1()), s2->run(tau1()));
  EXPECT_EQ(ext->run(tau2()), s2->run(tau2()));
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> d(-10, 10);
  for (int i = 0; i < 20; ++i) {
    Signal tau = inputs({d(rng), d(rng)}, {d(rng), d(rng)});
    EXPECT_EQ(ext->run(tau), s2->run(tau));
  }
}

TEST(External, ProtocolViolations) {
  VariableSet in({{"a", VarKind::input, -10, 10}}), out({{"c", VarKind::output, -10, 10}});
  Signal tau = signal_from_columns(in, {{"a", {1}}});
  auto garbage = external({STLCOV_PYTHON, "-c", "import sys\nfor l in sys.stdin: print('hello', flush=True)"}, in, out);
  EXPECT_THROW(garbage->run(tau), ProtocolError);
  auto wrong = external(
      {STLCOV_PYTHON, "-c", "import sys\nfor l in sys.stdin: print('{\"outputs\": {\"z\": 1}}', flush=True)"}, in, out);
  EXPECT_THROW(wrong->run(tau), ProtocolError);
  auto slow = external({STLCOV_PYTHON, "-c", "import time; time.sleep(5)"}, in, out, std::chrono::milliseconds(300));
  EXPECT_THROW(slow->run(tau), ProtocolError);
  EXPECT_THROW(external({"/nonexistent/binary"}, in, out)->run(tau), UnknownModel);
}

}  // namespace
}  // namespace stlcov
