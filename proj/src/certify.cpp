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

#include "cuspforge/certify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "cuspforge/lobachevsky.hpp"
#include "cuspforge/optimizer.hpp"
#include "cuspforge/simplex.hpp"

namespace cuspforge {

namespace {

using Index = Eigen::Index;

constexpr double kReleaseTol = 1e-9;
constexpr double kLogFloor = 1e-300;

// One release variable: raises the coordinates in `up` by w and lowers the
// coordinates in `down` by w.
struct ReleaseVar {
  std::size_t tet = 0;
  std::array<std::size_t, 2> up{};
  std::array<std::size_t, 2> down{};
  double slope = 0.0;
  int partner = -1;  // the other variable of the same tetrahedron
};

double log_floor(double x) { return std::log(std::max(x, kLogFloor)); }

// Φ(w) = Σ s_j w_j + Σ_t g(u_t, v_t), g(u,v) = (u+v)ln(u+v) - u ln u - v ln v.
double release_objective(const std::vector<ReleaseVar>& vars, const Eigen::VectorXd& w) {
  double out = 0.0;
  for (std::size_t j = 0; j < vars.size(); ++j) {
    out += vars[j].slope * w(Index(j)) - xlogx(w(Index(j)));
    const int k = vars[j].partner;
    if (k < 0) {
      out += xlogx(w(Index(j)));
    } else if (k > static_cast<int>(j)) {
      out += xlogx(w(Index(j)) + w(k));
    }
  }
  return out;
}

Eigen::VectorXd release_gradient(const std::vector<ReleaseVar>& vars,
                                 const Eigen::VectorXd& w) {
  Eigen::VectorXd g(w.size());
  for (std::size_t j = 0; j < vars.size(); ++j) {
    const double wj = w(Index(j));
    const int k = vars[j].partner;
    const double total = k < 0 ? wj : wj + w(k);
    g(Index(j)) = vars[j].slope + log_floor(total) - log_floor(wj);
  }
  return g;
}

// max Φ over {w >= 0, K w = 0, Σ w = 1} by Frank-Wolfe with an LP oracle.
double best_release(const std::vector<ReleaseVar>& vars, const Eigen::MatrixXd& K) {
  const Index n = static_cast<Index>(vars.size());
  Eigen::MatrixXd A(K.rows() + 1, n);
  A.topRows(K.rows()) = K;
  A.row(K.rows()).setOnes();
  Eigen::VectorXd b = Eigen::VectorXd::Zero(K.rows() + 1);
  b(K.rows()) = 1.0;

  auto start = lp::minimize(A, b, Eigen::VectorXd::Zero(n));
  if (start.status != lp::Status::optimal) return -std::numeric_limits<double>::infinity();
  Eigen::VectorXd w = start.x;
  double value = release_objective(vars, w);
  for (int iter = 0; iter < 400; ++iter) {
    const Eigen::VectorXd grad = release_gradient(vars, w);
    auto vertex = lp::minimize(A, b, -grad);
    if (vertex.status != lp::Status::optimal) break;
    const Eigen::VectorXd dir = vertex.x - w;
    if (grad.dot(dir) < 1e-13) break;
    // Golden-section search of the concave restriction on [0, 1].
    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    double lo = 0.0, hi = 1.0;
    for (int k = 0; k < 60; ++k) {
      const double m1 = hi - phi * (hi - lo);
      const double m2 = lo + phi * (hi - lo);
      if (release_objective(vars, w + m1 * dir) < release_objective(vars, w + m2 * dir))
        lo = m1;
      else
        hi = m2;
    }
    const Eigen::VectorXd next = w + 0.5 * (lo + hi) * dir;
    const double next_value = release_objective(vars, next);
    if (next_value <= value) break;
    w = next;
    value = next_value;
  }
  return value;
}

}  // namespace

MaximalityCertificate certify(const LinearSystem& sys, const AngleVector& p, double tol) {
  const MembershipResult mem = classify_membership(sys, p, tol);
  if (mem.kind == Membership::infeasible)
    throw std::invalid_argument("certify: point is not in the closure (equality residual " +
                                std::to_string(mem.equality_residual) + ")");
  const std::size_t n = p.size();
  const auto& x = p.values();

  std::vector<bool> at_bound(n, false);
  for (std::size_t i : mem.flat.indices) at_bound[i] = true;
  std::vector<Index> free_idx;
  for (std::size_t i = 0; i < n; ++i)
    if (!at_bound[i]) free_idx.push_back(Index(i));

  const Index rows = sys.eq.rows();
  Eigen::MatrixXd A_free(rows, Index(free_idx.size()));
  Eigen::VectorXd g_free(Index(free_idx.size()));
  for (Index j = 0; j < Index(free_idx.size()); ++j) {
    A_free.col(j) = sys.eq.col(free_idx[j]);
    g_free(j) = 0.5 * lobachevsky_derivative(x(free_idx[j]));
  }

  MaximalityCertificate cert;
  if (rows > 0 && !free_idx.empty()) {
    cert.multipliers = A_free.transpose().completeOrthogonalDecomposition().solve(g_free);
    cert.gradient_residual = (A_free.transpose() * cert.multipliers - g_free).norm();
  } else {
    cert.multipliers = Eigen::VectorXd::Zero(rows);
    cert.gradient_residual = g_free.norm();
  }

  cert.release_rate = -std::numeric_limits<double>::infinity();
  if (mem.flat.empty()) {
    cert.signs_ok = true;
    return cert;
  }

  const RelativeInterior ri = relative_interior(sys);
  std::vector<bool> forced(n, false);
  for (auto& [i, v] : ri.fixed) forced[i] = true;

  const std::vector<TetClass> classes = classify_tetrahedra(p, tol);
  for (std::size_t i : mem.flat.indices)
    if (classes[i / 6] != TetClass::flat && !forced[i]) cert.releasable_partial.push_back(i);

  // Linear part of the one-sided derivative: releasing coordinate i by a_i
  // changes the free coordinates by a compensating amount worth -μ·A_i a_i.
  auto slope_of = [&](std::size_t i) {
    return -sys.eq.col(Index(i)).dot(cert.multipliers);
  };

  std::vector<ReleaseVar> vars;
  for (std::size_t t = 0; t < classes.size(); ++t) {
    if (classes[t] != TetClass::flat) continue;
    cert.active_tets.push_back(t);
    int big = 0;
    for (int k = 1; k < 3; ++k)
      if (x(Index(6 * t + k)) > x(Index(6 * t + big))) big = k;
    const std::array<std::size_t, 2> down{6 * t + big, 6 * t + 5 - big};
    const std::size_t first = vars.size();
    double best = -std::numeric_limits<double>::infinity();
    double lse = 0.0;
    for (int k = 0; k < 3; ++k) {
      if (k == big) continue;
      ReleaseVar v;
      v.tet = t;
      v.up = {6 * t + k, 6 * t + 5 - k};
      v.down = down;
      if (forced[v.up[0]] || forced[v.up[1]] || forced[down[0]] || forced[down[1]]) continue;
      v.slope = slope_of(v.up[0]) + slope_of(v.up[1]) - slope_of(down[0]) - slope_of(down[1]);
      best = std::max(best, v.slope);
      vars.push_back(v);
    }
    for (std::size_t j = first; j < vars.size(); ++j) lse += std::exp(vars[j].slope - best);
    if (vars.size() - first == 2) {
      vars[first].partner = static_cast<int>(first + 1);
      vars[first + 1].partner = static_cast<int>(first);
    }
    const double rate = vars.size() == first ? best : best + std::log(lse);
    cert.active_multipliers.push_back(-rate);
  }

  if (!vars.empty()) {
    // Releases must be compensated inside the range of A_free.
    Eigen::MatrixXd Q;
    if (free_idx.empty()) {
      Q = Eigen::MatrixXd::Identity(rows, rows);
    } else {
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(A_free, Eigen::ComputeFullU);
      const auto& s = svd.singularValues();
      const double threshold = 1e-10 * std::max(1.0, s.size() ? s(0) : 0.0);
      Index rank = 0;
      while (rank < s.size() && s(rank) > threshold) ++rank;
      Q = svd.matrixU().rightCols(rows - rank);
    }
    Eigen::MatrixXd K(Q.cols(), Index(vars.size()));
    for (Index j = 0; j < Index(vars.size()); ++j) {
      const auto& v = vars[std::size_t(j)];
      Eigen::VectorXd col = sys.eq.col(Index(v.up[0])) + sys.eq.col(Index(v.up[1])) -
                            sys.eq.col(Index(v.down[0])) - sys.eq.col(Index(v.down[1]));
      K.col(j) = Q.transpose() * col;
    }
    K = K.unaryExpr([](double k) { return std::abs(k) < 1e-12 ? 0.0 : k; });
    cert.release_rate = best_release(vars, K);
  }

  cert.signs_ok = cert.releasable_partial.empty() && cert.release_rate <= kReleaseTol;
  return cert;
}

}  // namespace cuspforge
