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

#include "cuspforge/polytope.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "cuspforge/simplex.hpp"

namespace cuspforge {

namespace {

using Index = Eigen::Index;

struct SlackSolution {
  bool feasible = false;
  Eigen::VectorXd x;
  double slack = 0.0;
};

// max s  s.t.  A x = b,  s <= x_i <= π - s  for free i,  0 <= x <= π.
SlackSolution max_min_slack(const LinearSystem& sys, const std::vector<bool>& free) {
  const Index m = static_cast<Index>(sys.dimension());
  std::vector<Index> free_idx;
  for (Index i = 0; i < m; ++i)
    if (free[i]) free_idx.push_back(i);
  const Index k = static_cast<Index>(free_idx.size());
  const Index rows = static_cast<Index>(sys.rows());

  if (k == 0) {
    // Nothing to maximize; feasibility of the box plus equalities.
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows + m, 2 * m);
    Eigen::VectorXd b(rows + m);
    A.topLeftCorner(rows, m) = sys.eq;
    b.head(rows) = sys.rhs;
    for (Index i = 0; i < m; ++i) {
      A(rows + i, i) = 1.0;
      A(rows + i, m + i) = 1.0;
      b(rows + i) = sys.upper;
    }
    auto res = lp::minimize(A, b, Eigen::VectorXd::Zero(2 * m));
    SlackSolution out;
    out.feasible = res.status == lp::Status::optimal;
    if (out.feasible) out.x = res.x.head(m);
    return out;
  }

  // Columns: x (m) | s | r (k) | r' (k) | u (m) with x + u = π.
  const Index cols = m + 1 + 2 * k + m;
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows + 2 * k + m, cols);
  Eigen::VectorXd b = Eigen::VectorXd::Zero(rows + 2 * k + m);
  A.topLeftCorner(rows, m) = sys.eq;
  b.head(rows) = sys.rhs;
  for (Index j = 0; j < k; ++j) {
    const Index i = free_idx[j];
    // x_i - s - r_j = 0
    A(rows + j, i) = 1.0;
    A(rows + j, m) = -1.0;
    A(rows + j, m + 1 + j) = -1.0;
    // x_i + s + r'_j = π
    A(rows + k + j, i) = 1.0;
    A(rows + k + j, m) = 1.0;
    A(rows + k + j, m + 1 + k + j) = 1.0;
    b(rows + k + j) = sys.upper;
  }
  for (Index i = 0; i < m; ++i) {
    A(rows + 2 * k + i, i) = 1.0;
    A(rows + 2 * k + i, m + 1 + 2 * k + i) = 1.0;
    b(rows + 2 * k + i) = sys.upper;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(cols);
  c(m) = -1.0;
  auto res = lp::minimize(A, b, c);
  SlackSolution out;
  if (res.status != lp::Status::optimal) return out;
  out.feasible = true;
  out.x = res.x.head(m);
  out.slack = res.x(m);
  return out;
}

// Largest (or smallest) value of coordinate i over the closure.
std::optional<double> extreme_coordinate(const LinearSystem& sys, Index i,
                                         bool maximize) {
  const Index m = static_cast<Index>(sys.dimension());
  const Index rows = static_cast<Index>(sys.rows());
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(rows + m, 2 * m);
  Eigen::VectorXd b(rows + m);
  A.topLeftCorner(rows, m) = sys.eq;
  b.head(rows) = sys.rhs;
  for (Index j = 0; j < m; ++j) {
    A(rows + j, j) = 1.0;
    A(rows + j, m + j) = 1.0;
    b(rows + j) = sys.upper;
  }
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * m);
  c(i) = maximize ? -1.0 : 1.0;
  auto res = lp::minimize(A, b, c);
  if (res.status != lp::Status::optimal) return std::nullopt;
  return res.x(i);
}

}  // namespace

bool FlatSet::contains(std::size_t i) const {
  return std::binary_search(indices.begin(), indices.end(), i);
}

bool FlatSet::tetrahedron_closed() const {
  for (std::size_t t : tetrahedra())
    for (std::size_t k = 0; k < 6; ++k)
      if (!contains(6 * t + k)) return false;
  return true;
}

std::vector<std::size_t> FlatSet::tetrahedra() const {
  std::vector<std::size_t> out;
  for (std::size_t i : indices)
    if (out.empty() || out.back() != i / 6) out.push_back(i / 6);
  return out;
}

LinearSystem build_constraints(const IncidenceIndex& idx) {
  const Index m = static_cast<Index>(idx.size());
  const Index n_triples = static_cast<Index>(idx.triples().size());
  const Index n_edges = static_cast<Index>(idx.n_edges());
  LinearSystem sys;
  sys.eq = Eigen::MatrixXd::Zero(n_triples + n_edges, m);
  sys.rhs = Eigen::VectorXd::Zero(n_triples + n_edges);
  for (Index r = 0; r < n_triples; ++r) {
    for (std::size_t i : idx.triples()[r]) sys.eq(r, static_cast<Index>(i)) = 1.0;
    sys.rhs(r) = kPi;
    sys.kinds.push_back(RowKind::vertex_triple);
  }
  for (Index e = 0; e < n_edges; ++e) {
    sys.rhs(n_triples + e) = 2.0 * kPi;
    sys.kinds.push_back(RowKind::edge);
  }
  for (Index i = 0; i < m; ++i)
    sys.eq(n_triples + static_cast<Index>(idx.edge_of(i)), i) = 1.0;
  return sys;
}

LinearSystem with_pins(const LinearSystem& sys,
                       const std::vector<std::pair<std::size_t, double>>& pins) {
  LinearSystem out = sys;
  const Index r0 = static_cast<Index>(sys.rows());
  const Index np = static_cast<Index>(pins.size());
  out.eq.conservativeResize(r0 + np, Eigen::NoChange);
  out.rhs.conservativeResize(r0 + np);
  out.eq.bottomRows(np).setZero();
  for (Index p = 0; p < np; ++p) {
    if (pins[p].first >= sys.dimension())
      throw std::out_of_range("with_pins: coordinate out of range");
    out.eq(r0 + p, static_cast<Index>(pins[p].first)) = 1.0;
    out.rhs(r0 + p) = pins[p].second;
    out.kinds.push_back(RowKind::pin);
  }
  return out;
}

MembershipResult classify_membership(const LinearSystem& sys,
                                     const AngleVector& x, double tol) {
  if (x.size() != sys.dimension())
    throw std::invalid_argument("classify_membership: dimension mismatch (" +
                                std::to_string(x.size()) + " vs " +
                                std::to_string(sys.dimension()) + ")");
  MembershipResult out;
  out.equality_residual =
      sys.rows() == 0 ? 0.0 : (sys.eq * x.values() - sys.rhs).cwiseAbs().maxCoeff();
  const auto& v = x.values();
  const bool in_box =
      (v.array() >= sys.lower - tol).all() && (v.array() <= sys.upper + tol).all();
  if (out.equality_residual > tol || !in_box) {
    out.kind = Membership::infeasible;
    return out;
  }
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < sys.lower + tol || x[i] > sys.upper - tol) out.flat.indices.push_back(i);
  out.kind = out.flat.empty() ? Membership::interior : Membership::boundary;
  return out;
}

AffineParametrization affine_solutions(const Eigen::MatrixXd& A,
                                       const Eigen::VectorXd& b) {
  AffineParametrization out;
  const Index n = A.cols();
  if (A.rows() == 0) {
    out.origin = Eigen::VectorXd::Zero(n);
    out.basis = Eigen::MatrixXd::Identity(n, n);
    return out;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& s = svd.singularValues();
  const double threshold = 1e-10 * std::max(1.0, s.size() ? s(0) : 0.0);
  Index rank = 0;
  while (rank < s.size() && s(rank) > threshold) ++rank;
  Eigen::VectorXd coeffs = svd.matrixU().leftCols(rank).transpose() * b;
  coeffs.array() /= s.head(rank).array();
  out.origin = svd.matrixV().leftCols(rank) * coeffs;
  out.basis = svd.matrixV().rightCols(n - rank);
  out.residual = (A * out.origin - b).cwiseAbs().maxCoeff();
  return out;
}

RelativeInterior relative_interior(const LinearSystem& sys, double tol) {
  RelativeInterior out;
  if (affine_solutions(sys.eq, sys.rhs).residual > tol) return out;

  const std::size_t m = sys.dimension();
  std::vector<bool> free(m, true);
  LinearSystem pinned = sys;
  while (true) {
    SlackSolution sol = max_min_slack(pinned, free);
    if (!sol.feasible) return out;
    const bool any_free = std::find(free.begin(), free.end(), true) != free.end();
    if (!any_free || sol.slack > tol) {
      out.empty = false;
      out.point = AngleVector(sol.x);
      out.min_free_slack = any_free ? sol.slack : 0.0;
      std::sort(out.fixed.begin(), out.fixed.end());
      return out;
    }
    // Zero max-min slack: some coordinate touching a bound is pinned there
    // on the whole closure. Find all such among the tight ones.
    std::vector<std::pair<std::size_t, double>> newly;
    for (std::size_t i = 0; i < m; ++i) {
      if (!free[i]) continue;
      const double xi = sol.x(static_cast<Index>(i));
      if (xi <= sys.lower + 10 * tol) {
        auto hi = extreme_coordinate(pinned, static_cast<Index>(i), true);
        if (hi && *hi <= sys.lower + tol) newly.emplace_back(i, sys.lower);
      } else if (xi >= sys.upper - 10 * tol) {
        auto lo = extreme_coordinate(pinned, static_cast<Index>(i), false);
        if (lo && *lo >= sys.upper - tol) newly.emplace_back(i, sys.upper);
      }
    }
    if (newly.empty()) {
      // Numerically ambiguous; report what the LP gave.
      out.empty = false;
      out.point = AngleVector(sol.x);
      out.min_free_slack = sol.slack;
      std::sort(out.fixed.begin(), out.fixed.end());
      return out;
    }
    for (auto& pin : newly) {
      free[pin.first] = false;
      out.fixed.push_back(pin);
    }
    pinned = with_pins(pinned, newly);
  }
}

InteriorPointResult interior_point(const LinearSystem& sys, double tol) {
  InteriorPointResult out;
  if (affine_solutions(sys.eq, sys.rhs).residual > tol) return out;
  const std::vector<bool> all_free(sys.dimension(), true);
  SlackSolution sol = max_min_slack(sys, all_free);
  if (!sol.feasible) return out;
  if (sol.slack > tol) {
    out.status = InteriorStatus::found;
    out.point = AngleVector(sol.x);
    out.min_slack = sol.slack;
    return out;
  }
  RelativeInterior ri = relative_interior(sys, tol);
  if (ri.empty) return out;
  out.status = InteriorStatus::empty_interior;
  out.point = ri.point;
  out.min_slack = sol.slack;
  if (!ri.fixed.empty()) out.witness = ri.fixed.front().first;
  return out;
}

AngleVector segment(const AngleVector& p, const AngleVector& q, double t) {
  if (!(t >= 0.0 && t <= 1.0))
    throw std::domain_error("segment: t must lie in [0, 1]");
  if (p.size() != q.size()) throw std::invalid_argument("segment: dimension mismatch");
  return AngleVector((1.0 - t) * p.values() + t * q.values());
}

AngleVector difference_vector(const AngleVector& p, const AngleVector& q) {
  if (p.size() != q.size())
    throw std::invalid_argument("difference_vector: dimension mismatch");
  return AngleVector(q.values() - p.values());
}

}  // namespace cuspforge
