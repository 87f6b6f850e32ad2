// Copyright 2026 The CuspForge Authors.
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

#include "cuspforge/simplex.hpp"

#include <limits>
#include <stdexcept>
#include <vector>

namespace cuspforge::lp {

namespace {

// Tableau rows 0..m-1 hold constraints, row m the reduced costs; the last
// column is the right-hand side.
class Tableau {
 public:
  Tableau(Eigen::MatrixXd t, std::vector<Eigen::Index> basis, double eps)
      : t_(std::move(t)), basis_(std::move(basis)), eps_(eps) {}

  Eigen::Index rows() const { return t_.rows() - 1; }
  Eigen::Index rhs_col() const { return t_.cols() - 1; }

  void pivot(Eigen::Index r, Eigen::Index col) {
    t_.row(r) /= t_(r, col);
    for (Eigen::Index i = 0; i < t_.rows(); ++i) {
      if (i == r) continue;
      const double factor = t_(i, col);
      if (factor != 0.0) t_.row(i) -= factor * t_.row(r);
    }
    basis_[r] = col;
  }

  // Runs Bland's rule over columns [0, ncols). Returns false if unbounded.
  bool optimize(Eigen::Index ncols) {
    const std::size_t cap = 50000;
    for (std::size_t iter = 0; iter < cap; ++iter) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < ncols; ++j) {
        if (t_(rows(), j) < -eps_) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;
      Eigen::Index leaving = -1;
      double best = std::numeric_limits<double>::infinity();
      for (Eigen::Index i = 0; i < rows(); ++i) {
        const double a = t_(i, entering);
        if (a <= eps_) continue;
        const double ratio = t_(i, rhs_col()) / a;
        if (leaving < 0 || ratio < best - eps_) {
          best = ratio;
          leaving = i;
        } else if (ratio <= best + eps_ && basis_[i] < basis_[leaving]) {
          best = std::min(best, ratio);
          leaving = i;
        }
      }
      if (leaving < 0) return false;
      pivot(leaving, entering);
    }
    throw std::runtime_error("simplex: iteration cap reached");
  }

  Eigen::MatrixXd& table() { return t_; }
  std::vector<Eigen::Index>& basis() { return basis_; }

 private:
  Eigen::MatrixXd t_;
  std::vector<Eigen::Index> basis_;
  double eps_;
};

}  // namespace

Result minimize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                const Eigen::VectorXd& c, double eps) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m || c.size() != n)
    throw std::invalid_argument("lp::minimize: dimension mismatch");

  Result result;
  if (m == 0) {
    // Only nonnegativity: bounded iff c >= 0, optimum at 0.
    result.x = Eigen::VectorXd::Zero(n);
    result.status = (c.array() >= -eps).all() ? Status::optimal : Status::unbounded;
    return result;
  }

  // Phase one: artificials n..n+m-1.
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double s = b(i) < 0 ? -1.0 : 1.0;
    t.row(i).head(n) = s * A.row(i);
    t(i, n + i) = 1.0;
    t(i, n + m) = s * b(i);
    basis[i] = n + i;
  }
  for (Eigen::Index i = 0; i < m; ++i) t.row(m) -= t.row(i);
  for (Eigen::Index i = 0; i < m; ++i) t(m, n + i) = 0.0;

  Tableau tab(std::move(t), std::move(basis), eps);
  tab.optimize(n + m);
  const double scale = 1.0 + b.cwiseAbs().maxCoeff();
  if (-tab.table()(m, n + m) > 1e3 * eps * scale) {
    result.status = Status::infeasible;
    return result;
  }

  // Drive artificials out of the basis; rows where that is impossible are
  // linearly dependent on the others.
  std::vector<Eigen::Index> keep;
  for (Eigen::Index i = 0; i < m; ++i) {
    if (tab.basis()[i] >= n) {
      Eigen::Index col = -1;
      double best = eps * 1e2;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (std::abs(tab.table()(i, j)) > best) {
          best = std::abs(tab.table()(i, j));
          col = j;
        }
      }
      if (col < 0) continue;
      tab.pivot(i, col);
    }
    keep.push_back(i);
  }

  // Phase two on the kept rows, original columns only.
  const Eigen::Index mk = static_cast<Eigen::Index>(keep.size());
  Eigen::MatrixXd t2 = Eigen::MatrixXd::Zero(mk + 1, n + 1);
  std::vector<Eigen::Index> basis2(mk);
  for (Eigen::Index r = 0; r < mk; ++r) {
    t2.row(r).head(n) = tab.table().row(keep[r]).head(n);
    t2(r, n) = std::max(0.0, tab.table()(keep[r], n + m));
    basis2[r] = tab.basis()[keep[r]];
  }
  t2.row(mk).head(n) = c.transpose();
  for (Eigen::Index r = 0; r < mk; ++r) {
    const double cb = c(basis2[r]);
    if (cb != 0.0) t2.row(mk) -= cb * t2.row(r);
  }
  Tableau tab2(std::move(t2), std::move(basis2), eps);
  if (!tab2.optimize(n)) {
    result.status = Status::unbounded;
    return result;
  }
  result.x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index r = 0; r < mk; ++r)
    result.x(tab2.basis()[r]) = std::max(0.0, tab2.table()(r, n));
  result.objective = c.dot(result.x);
  result.status = Status::optimal;
  return result;
}

}  // namespace cuspforge::lp
