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

#include <cstddef>
#include <string>
#include <vector>

#include "stlcov/formula.hpp"
#include "stlcov/signal.hpp"

namespace stlcov {

/// Extended real; ±infinity are ordinary IEEE infinities.
using Robustness = double;

/// ρ(φ, w, t) for every t in 0..|w|-1. Until/Since take the inner infimum
/// over indices strictly between the two endpoints.
std::vector<Robustness> robustness_trace(const Formula& phi, const Signal& w);

/// ρ(φ, w, t). Throws EvaluationError if t is out of range and
/// UnknownVariable if the signal lacks a formula variable.
Robustness robustness(const Formula& phi, const Signal& w, std::size_t t);

enum class Verdict { satisfied, violated };

std::string to_string(Verdict v);

/// satisfied iff ρ(φ, w, 0) >= 0. Throws EvaluationError on an empty signal.
Verdict verdict(const Formula& phi, const Signal& w);

}  // namespace stlcov
