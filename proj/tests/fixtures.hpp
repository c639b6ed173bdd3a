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

// Shared test data: the running example spec, its traces and the two
// reference systems written out longhand.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "stlcov/formula.hpp"
#include "stlcov/signal.hpp"

namespace stlcov::testing {

inline constexpr const char* kExample2 = R"(
input a in [-10, 10];
input b in [-10, 10];
output c in [-50, 50];
output d in [-50, 50];
formula: G( (H[0,1] a >= 4) -> ((b <= 0 and F[0,1] c >= 4) or (b > 0 and F[0,1] d >= 6)) )
)";

inline const IaStlSpec& example2() {
  static const IaStlSpec spec = parse_spec(kExample2);
  return spec;
}

inline Signal inputs(const std::vector<double>& a, const std::vector<double>& b) {
  return signal_from_columns(example2().inputs(), {{"a", a}, {"b", b}});
}

inline Signal tau1() { return inputs({3, 4, 3}, {2, 2, 2}); }
inline Signal tau2() { return inputs({4, 4, 2}, {2, -8, 2}); }

// Reference arithmetic, independent of the library's builtin models.
inline Signal s1_longhand(const Signal& in) {
  std::vector<double> c, d;
  for (const auto& v : in) {
    c.push_back(v.at("a"));
    d.push_back(v.at("a") + v.at("b") + 2);
  }
  return signal_from_columns(example2().outputs(), {{"c", c}, {"d", d}});
}

inline Signal s2_longhand(const Signal& in) {
  std::vector<double> c, d;
  for (const auto& v : in) {
    c.push_back(2 * v.at("a") + v.at("b"));
    d.push_back(v.at("a") + 10 - v.at("b"));
  }
  return signal_from_columns(example2().outputs(), {{"c", c}, {"d", d}});
}

}  // namespace stlcov::testing
