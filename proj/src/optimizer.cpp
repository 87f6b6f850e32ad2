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

#include "cuspforge/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <stdexcept>

#include "cuspforge/certify.hpp"
#include "cuspforge/lobachevsky.hpp"

namespace cuspforge {

namespace {

using Index = Eigen::Index;

constexpr double kSnapTol = 1e-11;
constexpr double kBoundaryFraction = 0.99;
constexpr double kArmijo = 1e-4;
constexpr std::size_t kStallWindow = 10;
constexpr double kStallTol = 1e-13;

// Orthonormal basis of {d : A d = 0, d_i = 0 for pinned i}.
Eigen::MatrixXd direction_basis(const LinearSystem& sys, const std::vector<bool>& pinned) {
  const Index n = Index(sys.dimension());
  const Index n_pins = Index(std::count(pinned.begin(), pinned.end(), true));
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(sys.eq.rows() + n_pins, n);
  M.topRows(sys.eq.rows()) = sys.eq;
  for (Index i = 0, r = sys.eq.rows(); i < n; ++i)
    if (pinned[std::size_t(i)]) M(r++, i) = 1.0;
  return affine_solutions(M, Eigen::VectorXd::Zero(M.rows())).basis;
}

Eigen::VectorXd free_gradient(const Eigen::VectorXd& x, const std::vector<bool>& pinned) {
  Eigen::VectorXd g = Eigen::VectorXd::Zero(x.size());
  for (Index i = 0; i < x.size(); ++i)
    if (!pinned[std::size_t(i)]) g(i) = 0.5 * lobachevsky_derivative(x(i));
  return g;
}

// Largest s with x + s d inside the box for the unpinned coordinates.
double max_step(const Eigen::VectorXd& x, const Eigen::VectorXd& d,
                const std::vector<bool>& pinned, double lower, double upper) {
  double s = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < x.size(); ++i) {
    if (pinned[std::size_t(i)]) continue;
    if (d(i) < 0) s = std::min(s, (x(i) - lower) / -d(i));
    if (d(i) > 0) s = std::min(s, (upper - x(i)) / d(i));
  }
  return s;
}

double min_free_slack(const Eigen::VectorXd& x, const std::vector<bool>& pinned,
                      double lower, double upper) {
  double s = std::numeric_limits<double>::infinity();
  for (Index i = 0; i < x.size(); ++i)
    if (!pinned[std::size_t(i)]) s = std::min({s, x(i) - lower, upper - x(i)});
  return s;
}

// Index k of the (0, 0, π) pattern with angle k at π, or -1.
int flat_pattern(const Eigen::VectorXd& x, std::size_t t, double tol) {
  for (int big = 0; big < 3; ++big) {
    bool match = true;
    for (int k = 0; k < 3 && match; ++k) {
      const double a = x(Index(6 * t + k));
      const double b = x(Index(6 * t + 5 - k));
      if (k == big)
        match = a >= kPi - tol && b >= kPi - tol;
      else
        match = a <= tol && b <= tol;
    }
    if (match) return big;
  }
  return -1;
}

// Moves tetrahedra that have converged onto the flat pattern exactly onto
// it, pins them, and restores the equalities through the other unpinned
// coordinates. Returns true if anything was snapped.
bool snap_flat(const LinearSystem& sys, Eigen::VectorXd& x, std::vector<bool>& pinned) {
  const std::size_t n_tets = sys.n_tets();
  Eigen::VectorXd y = x;
  std::vector<bool> pins = pinned;
  bool any = false;
  for (std::size_t t = 0; t < n_tets; ++t) {
    bool all_pinned = true;
    for (int k = 0; k < 6; ++k) all_pinned = all_pinned && pinned[6 * t + k];
    if (all_pinned) continue;
    const int big = flat_pattern(x, t, kSnapTol);
    if (big < 0) continue;
    for (int k = 0; k < 3; ++k) {
      y(Index(6 * t + k)) = y(Index(6 * t + 5 - k)) = k == big ? sys.upper : sys.lower;
      pins[6 * t + k] = pins[6 * t + 5 - k] = true;
    }
    any = true;
  }
  if (!any) return false;

  std::vector<Index> loose;
  for (Index i = 0; i < y.size(); ++i)
    if (!pins[std::size_t(i)]) loose.push_back(i);
  if (!loose.empty() && sys.eq.rows() > 0) {
    Eigen::MatrixXd A(sys.eq.rows(), Index(loose.size()));
    for (Index j = 0; j < Index(loose.size()); ++j) A.col(j) = sys.eq.col(loose[j]);
    const Eigen::VectorXd r = sys.rhs - sys.eq * y;
    const Eigen::VectorXd delta = A.completeOrthogonalDecomposition().solve(r);
    for (Index j = 0; j < Index(loose.size()); ++j) y(loose[j]) += delta(j);
  }
  if (min_free_slack(y, pins, sys.lower, sys.upper) <= 0) return false;
  x = y;
  pinned = pins;
  return true;
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Point where the ray from `from` through `through` leaves the closure.
AngleVector boundary_hit(const LinearSystem& sys, const Eigen::VectorXd& from,
                         const Eigen::VectorXd& through, const std::vector<bool>& pinned) {
  const Eigen::VectorXd d = through - from;
  const double s = max_step(from, d, pinned, sys.lower, sys.upper);
  if (!std::isfinite(s) || d.cwiseAbs().maxCoeff() < 1e-9) return AngleVector(through);
  Eigen::VectorXd q = from + s * d;
  for (Index i = 0; i < q.size(); ++i) {
    if (q(i) < sys.lower + 1e-12) q(i) = sys.lower;
    if (q(i) > sys.upper - 1e-12) q(i) = sys.upper;
  }
  return AngleVector(q);
}

}  // namespace

std::string_view to_string(OptimizationStatus s) {
  switch (s) {
    case OptimizationStatus::converged: return "converged";
    case OptimizationStatus::iteration_cap: return "iteration-cap";
    case OptimizationStatus::empty_closure: return "empty-closure";
  }
  return "unknown";
}

std::string_view to_string(TetClass c) {
  switch (c) {
    case TetClass::positive: return "positive";
    case TetClass::flat: return "flat";
    case TetClass::invalid: return "invalid";
  }
  return "unknown";
}

std::uint64_t start_seed(std::uint64_t seed, std::size_t k) {
  return splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(k)));
}

std::vector<TetClass> classify_tetrahedra(const AngleVector& p, double tol) {
  std::vector<TetClass> out(p.n_tets(), TetClass::invalid);
  for (std::size_t t = 0; t < out.size(); ++t) {
    if (flat_pattern(p.values(), t, tol) >= 0) {
      out[t] = TetClass::flat;
      continue;
    }
    bool positive = true;
    for (int k = 0; k < 6; ++k) positive = positive && p[6 * t + k] >= tol;
    if (positive) out[t] = TetClass::positive;
  }
  return out;
}

AngleVector random_closure_point(const LinearSystem& sys, const RelativeInterior& ri,
                                 std::mt19937_64& rng) {
  if (ri.empty) throw std::invalid_argument("random_closure_point: empty closure");
  const Eigen::VectorXd& x0 = ri.point.values();
  std::vector<bool> pinned(sys.dimension(), false);
  for (auto& [i, v] : ri.fixed) pinned[i] = true;
  const Eigen::MatrixXd N = direction_basis(sys, pinned);
  if (N.cols() == 0) return ri.point;

  std::bernoulli_distribution coin(0.5);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int attempt = 0; attempt < 100; ++attempt) {
    Eigen::VectorXd v = x0;
    for (Index i = 0; i < v.size(); ++i)
      if (!pinned[std::size_t(i)]) v(i) = coin(rng) ? sys.upper : sys.lower;
    const Eigen::VectorXd y = x0 + N * (N.transpose() * (v - x0));
    if ((y - x0).cwiseAbs().maxCoeff() < 1e-6) continue;
    double lambda = unit(rng);
    for (int k = 0; k < 60 && lambda > 0; ++k, lambda *= 0.5) {
      const Eigen::VectorXd x = x0 + lambda * (y - x0);
      if (min_free_slack(x, pinned, sys.lower, sys.upper) > 1e-12) return AngleVector(x);
    }
  }
  return ri.point;
}

OptimizationResult maximize_volume(const LinearSystem& sys, const OptimizerOptions& opts) {
  OptimizationResult res;
  const RelativeInterior ri = relative_interior(sys);
  if (ri.empty) return res;

  std::vector<bool> pinned(sys.dimension(), false);
  for (auto& [i, v] : ri.fixed) pinned[i] = true;
  Eigen::VectorXd x;
  if (opts.deterministic_start) {
    x = ri.point.values();
  } else {
    std::mt19937_64 rng(opts.seed);
    x = random_closure_point(sys, ri, rng).values();
  }
  for (auto& [i, v] : ri.fixed) x(Index(i)) = v;

  Eigen::MatrixXd N = direction_basis(sys, pinned);
  double vol = volume(AngleVector(x));
  res.volume_history.push_back(vol);
  res.status = OptimizationStatus::iteration_cap;

  std::size_t iter = 0;
  for (; iter < opts.max_iter; ++iter) {
    if (snap_flat(sys, x, pinned)) {
      N = direction_basis(sys, pinned);
      vol = volume(AngleVector(x));
      res.volume_history.push_back(vol);
    }
    const Eigen::VectorXd g = free_gradient(x, pinned);
    const Eigen::VectorXd pg = N.transpose() * g;
    if (pg.size() == 0 || pg.cwiseAbs().maxCoeff() < opts.tol) {
      res.status = OptimizationStatus::converged;
      break;
    }
    const auto& hist = res.volume_history;
    if (hist.size() > kStallWindow &&
        std::abs(hist.back() - hist[hist.size() - 1 - kStallWindow]) <=
            kStallTol * std::max(1.0, std::abs(hist.back()))) {
      res.status = OptimizationStatus::converged;
      break;
    }

    // Newton direction on the face; the reduced Hessian is negative
    // semidefinite because each tetrahedron's angles sum to π.
    Eigen::VectorXd h(x.size());
    for (Index i = 0; i < x.size(); ++i)
      h(i) = pinned[std::size_t(i)] ? 0.0 : -0.5 / std::tan(x(i));
    Eigen::MatrixXd M = -(N.transpose() * h.asDiagonal() * N);
    Eigen::VectorXd d;
    Eigen::LLT<Eigen::MatrixXd> llt(M);
    if (llt.info() == Eigen::Success) d = llt.solve(pg);
    if (d.size() == 0 || !d.allFinite() || d.dot(pg) <= 0) {
      const double shift = 1e-8 * std::max(1.0, M.diagonal().cwiseAbs().maxCoeff());
      Eigen::LLT<Eigen::MatrixXd> reg(M + shift * Eigen::MatrixXd::Identity(M.rows(), M.cols()));
      d = reg.info() == Eigen::Success ? Eigen::VectorXd(reg.solve(pg)) : pg;
      if (!d.allFinite() || d.dot(pg) <= 0) d = pg;
    }
    const Eigen::VectorXd dx = N * d;
    const double slope = g.dot(dx);

    double step = std::min(1.0, kBoundaryFraction * max_step(x, dx, pinned, sys.lower, sys.upper));
    bool accepted = false;
    Eigen::VectorXd next;
    double next_vol = vol;
    for (int k = 0; k < 80 && step > 0; ++k, step *= 0.5) {
      next = x + step * dx;
      if (min_free_slack(next, pinned, sys.lower, sys.upper) <= 0) continue;
      next_vol = volume(AngleVector(next));
      if (next_vol >= vol + kArmijo * step * slope) {
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      // No representable ascent step remains.
      res.status = OptimizationStatus::converged;
      break;
    }
    x = next;
    vol = next_vol;
    res.volume_history.push_back(vol);
  }

  res.iterations = iter;
  res.point = AngleVector(x);
  res.volume = volume(res.point);
  res.active_set = classify_membership(sys, res.point, opts.flat_tol).flat;
  const auto classes = classify_tetrahedra(res.point, opts.flat_tol);
  for (std::size_t t = 0; t < classes.size(); ++t)
    if (classes[t] == TetClass::flat) res.flat_tets.push_back(t);
  try {
    res.kkt_residual = certify(sys, res.point, opts.flat_tol).gradient_residual;
  } catch (const std::invalid_argument&) {
    res.kkt_residual = std::numeric_limits<double>::infinity();
  }
  return res;
}

UniquenessReport uniqueness_probe(const LinearSystem& sys, std::size_t n_starts,
                                  std::uint64_t seed, OptimizerOptions opts) {
  UniquenessReport out;
  std::vector<std::future<OptimizationResult>> runs;
  for (std::size_t k = 0; k < n_starts; ++k) {
    OptimizerOptions o = opts;
    o.seed = start_seed(seed, k);
    o.deterministic_start = false;
    runs.push_back(std::async(std::launch::async, [&sys, o] { return maximize_volume(sys, o); }));
  }
  for (auto& f : runs) {
    OptimizationResult r = f.get();
    out.volumes.push_back(r.volume);
    out.points.push_back(r.point);
    out.statuses.push_back(r.status);
  }
  for (std::size_t a = 0; a < out.points.size(); ++a) {
    for (std::size_t b = a + 1; b < out.points.size(); ++b) {
      if (out.points[a].size() == 0 || out.points[b].size() == 0) continue;
      out.max_spread = std::max(
          out.max_spread,
          (out.points[a].values() - out.points[b].values()).cwiseAbs().maxCoeff());
      out.volume_spread = std::max(out.volume_spread, std::abs(out.volumes[a] - out.volumes[b]));
    }
  }
  return out;
}

DominanceReport dominance_check(const LinearSystem& sys, const AngleVector& p,
                                std::size_t n_samples, std::uint64_t seed, double tol) {
  const MembershipResult mem = classify_membership(sys, p);
  if (mem.kind == Membership::infeasible)
    throw std::invalid_argument("dominance_check: point is not in the closure");
  const RelativeInterior ri = relative_interior(sys);
  std::vector<bool> pinned(sys.dimension(), false);
  for (auto& [i, v] : ri.fixed) pinned[i] = true;

  std::vector<AngleVector> samples;
  samples.push_back(p);

  // One short projected-gradient step from p, along the face of p.
  {
    std::vector<bool> held = pinned;
    for (std::size_t i : mem.flat.indices) held[i] = true;
    const Eigen::MatrixXd N = direction_basis(sys, held);
    const Eigen::VectorXd d = N * (N.transpose() * free_gradient(p.values(), held));
    const double norm = d.size() ? d.cwiseAbs().maxCoeff() : 0.0;
    if (norm > 1e-14) {
      const double s = std::min(1e-3 / norm,
                                0.5 * max_step(p.values(), d, held, sys.lower, sys.upper));
      samples.emplace_back(Eigen::VectorXd(p.values() + s * d));
    }
  }

  std::mt19937_64 rng(seed);
  for (std::size_t k = 0; samples.size() < std::max<std::size_t>(n_samples, 1); ++k) {
    const AngleVector x = random_closure_point(sys, ri, rng);
    if (k % 2 == 0)
      samples.push_back(x);
    else
      samples.push_back(boundary_hit(sys, ri.point.values(), x.values(), pinned));
  }
  samples.resize(std::min(samples.size(), std::max<std::size_t>(n_samples, 1)));

  DominanceReport rep;
  rep.worst_gap = std::numeric_limits<double>::infinity();
  rep.worst_directional = -std::numeric_limits<double>::infinity();
  const double vp = volume(p);
  for (const AngleVector& q : samples) {
    const double gap = vp - volume(q);
    const double dist = (q.values() - p.values()).cwiseAbs().maxCoeff();
    bool ok = gap >= -1e-12;
    if (dist > kStrictRadius) {
      rep.worst_gap = std::min(rep.worst_gap, gap);
      ok = ok && gap > 0;
    }
    const double dir = boundary_derivative_limit(p, q, mem.flat).value;
    rep.worst_directional = std::max(rep.worst_directional, dir);
    ok = ok && dir <= tol;
    if (!ok && rep.all_dominated) {
      rep.all_dominated = false;
      rep.witness = q;
    }
  }
  rep.samples = samples.size();
  return rep;
}

}  // namespace cuspforge
