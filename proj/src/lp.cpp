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

#include "stlcov/lp.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace stlcov {
namespace {

constexpr double kEps = 1e-10;

// Tableau for: maximize c·y, A y <= b, y >= 0, in slack form. Row 0 of
// `t` holds the objective; column 0 holds constants.
class Tableau {
 public:
  Tableau(const Eigen::MatrixXd& A, const Eigen::VectorXd& b, const Eigen::VectorXd& c)
      : m_(A.rows()), n_(A.cols()), t_(Eigen::MatrixXd::Zero(m_ + 1, n_ + m_ + 2)) {
    // columns: 0 = rhs, 1..n = y, n+1..n+m = slack, n+m+1 = auxiliary x0
    for (Eigen::Index i = 0; i < m_; ++i) {
      t_(i + 1, 0) = b(i);
      t_.block(i + 1, 1, 1, n_) = A.row(i);
      t_(i + 1, n_ + 1 + i) = 1.0;
      t_(i + 1, aux()) = -1.0;
      basis_.push_back(n_ + 1 + i);
    }
    c_ = c;
  }

  // Returns false if infeasible.
  bool phase_one() {
    Eigen::Index worst = -1;
    for (Eigen::Index i = 0; i < m_; ++i)
      if (t_(i + 1, 0) < -kEps && (worst < 0 || t_(i + 1, 0) < t_(worst + 1, 0))) worst = i;
    if (worst >= 0) {
      // maximize -x0
      t_.row(0).setZero();
      t_(0, aux()) = 1.0;
      pivot(worst, aux());
      if (!optimize()) return false;
      if (t_(0, 0) < -1e-8) return false;
      for (Eigen::Index i = 0; i < m_; ++i) {
        if (basis_[i] != aux()) continue;
        for (Eigen::Index j = 1; j < aux(); ++j) {
          if (std::abs(t_(i + 1, j)) > kEps) {
            pivot(i, j);
            break;
          }
        }
      }
    }
    t_.col(aux()).setZero();
    // restate the true objective over the current basis
    t_.row(0).setZero();
    for (Eigen::Index j = 0; j < n_; ++j) t_(0, j + 1) = -c_(j);
    for (Eigen::Index i = 0; i < m_; ++i) {
      Eigen::Index j = basis_[i];
      if (j >= 1 && j <= n_ && t_(0, j) != 0.0) t_.row(0) -= t_(0, j) * t_.row(i + 1);
    }
    return true;
  }

  // Returns false if unbounded.
  bool optimize() {
    for (;;) {
      Eigen::Index enter = -1;
      for (Eigen::Index j = 1; j < t_.cols(); ++j)
        if (t_(0, j) < -kEps) {
          enter = j;
          break;
        }
      if (enter < 0) return true;
      Eigen::Index leave = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < m_; ++i) {
        double a = t_(i + 1, enter);
        if (a <= kEps) continue;
        double ratio = t_(i + 1, 0) / a;
        if (ratio < best - kEps || (ratio <= best + kEps && leave >= 0 && basis_[i] < basis_[leave])) {
          best = ratio;
          leave = i;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }

  double value() const { return t_(0, 0); }

  Eigen::VectorXd solution() const {
    Eigen::VectorXd y = Eigen::VectorXd::Zero(n_);
    for (Eigen::Index i = 0; i < m_; ++i)
      if (basis_[i] >= 1 && basis_[i] <= n_) y(basis_[i] - 1) = std::max(0.0, t_(i + 1, 0));
    return y;
  }

 private:
  Eigen::Index aux() const { return n_ + m_ + 1; }

  void pivot(Eigen::Index row, Eigen::Index col) {
    t_.row(row + 1) /= t_(row + 1, col);
    for (Eigen::Index i = 0; i <= m_; ++i) {
      if (i == row + 1) continue;
      double f = t_(i, col);
      if (f != 0.0) t_.row(i) -= f * t_.row(row + 1);
    }
    basis_[row] = col;
  }

  Eigen::Index m_, n_;
  Eigen::MatrixXd t_;
  Eigen::VectorXd c_;
  std::vector<Eigen::Index> basis_;
};

}  // namespace

LinearProgram::LinearProgram(Eigen::Index vars)
    : A(0, vars),
      c(Eigen::VectorXd::Zero(vars)),
      lo(Eigen::VectorXd::Zero(vars)),
      hi(Eigen::VectorXd::Constant(vars, std::numeric_limits<double>::infinity())) {}

void LinearProgram::add_row(const Eigen::VectorXd& a, double rhs) {
  A.conservativeResize(A.rows() + 1, Eigen::NoChange);
  A.row(A.rows() - 1) = a.transpose();
  b.conservativeResize(b.size() + 1);
  b(b.size() - 1) = rhs;
}

LpResult solve(const LinearProgram& lp) {
  const Eigen::Index n = lp.c.size();
  // z = lo + y with y >= 0; finite upper bounds become rows.
  std::vector<Eigen::Index> bounded;
  for (Eigen::Index j = 0; j < n; ++j)
    if (std::isfinite(lp.hi(j))) bounded.push_back(j);
  const Eigen::Index m = lp.A.rows() + static_cast<Eigen::Index>(bounded.size());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, n);
  Eigen::VectorXd b(m);
  A.topRows(lp.A.rows()) = lp.A;
  b.head(lp.A.rows()) = lp.b - lp.A * lp.lo;
  for (std::size_t k = 0; k < bounded.size(); ++k) {
    Eigen::Index r = lp.A.rows() + static_cast<Eigen::Index>(k);
    A(r, bounded[k]) = 1.0;
    b(r) = lp.hi(bounded[k]) - lp.lo(bounded[k]);
  }
  LpResult result;
  Tableau tab(A, b, lp.c);
  if (!tab.phase_one()) return result;
  if (!tab.optimize()) {
    result.status = LpStatus::unbounded;
    return result;
  }
  result.status = LpStatus::optimal;
  result.z = lp.lo + tab.solution();
  result.value = lp.c.dot(result.z);
  return result;
}

}  // namespace stlcov
