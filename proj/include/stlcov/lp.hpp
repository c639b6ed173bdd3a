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

#include <Eigen/Dense>

namespace stlcov {

/// maximize c·z  subject to  A z <= b,  lo <= z <= hi.
/// Lower bounds must be finite; upper bounds may be +infinity.
struct LinearProgram {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;
  Eigen::VectorXd c;
  Eigen::VectorXd lo;
  Eigen::VectorXd hi;

  explicit LinearProgram(Eigen::Index vars = 0);
  /// Appends the row a·z <= rhs.
  void add_row(const Eigen::VectorXd& a, double rhs);
};

enum class LpStatus { optimal, infeasible, unbounded };

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  double value = 0.0;
  Eigen::VectorXd z;
};

/// Dense two-phase simplex with Bland's rule. Intended for the handful of
/// variables a guard clause mentions.
LpResult solve(const LinearProgram& lp);

}  // namespace stlcov
