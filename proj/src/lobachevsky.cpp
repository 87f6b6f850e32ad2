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

#include "cuspforge/lobachevsky.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace cuspforge {

namespace {

constexpr int kClausenTerms = 32;

// ζ(2k) / (k (2k+1)), the coefficients of the Clausen expansion
//   Cl2(x) = x - x ln x + Σ_k ζ(2k)/(k(2k+1)) x (x/2π)^{2k},  |x| < 2π.
const std::array<double, kClausenTerms>& clausen_coefficients() {
  static const std::array<double, kClausenTerms> coeffs = [] {
    std::array<double, kClausenTerms> c{};
    for (int k = 1; k <= kClausenTerms; ++k)
      c[k - 1] = std::riemann_zeta(2.0 * k) / (k * (2.0 * k + 1.0));
    return c;
  }();
  return coeffs;
}

// Cl2 on [0, π]; the series ratio is at most 1/4 there.
double clausen2(double x) {
  if (x == 0.0) return 0.0;
  const double r = x / (2.0 * kPi);
  const double r2 = r * r;
  const auto& c = clausen_coefficients();
  double sum = 0.0;
  double power = r2;
  for (int k = 0; k < kClausenTerms; ++k) {
    const double term = c[k] * power;
    sum += term;
    if (term < 1e-18 * std::abs(sum)) break;
    power *= r2;
  }
  return x - x * std::log(x) + x * sum;
}

constexpr double kConventionZero = 1e-14;
constexpr double kBoundSlack = 1e-12;

}  // namespace

double abs_sin(double theta) {
  double r = std::fmod(theta, kPi);
  if (r < 0) r += kPi;
  return std::sin(std::min(r, kPi - r));
}

double xlogx(double x) { return x == 0.0 ? 0.0 : x * std::log(x); }

double lobachevsky(double theta) {
  if (!std::isfinite(theta)) return std::numeric_limits<double>::quiet_NaN();
  // Reduce to [-π/2, π/2], then use oddness.
  double r = theta - kPi * std::nearbyint(theta / kPi);
  const double sign = r < 0 ? -1.0 : 1.0;
  r = std::abs(r);
  return sign * 0.5 * clausen2(2.0 * r);
}

double lobachevsky_derivative(double theta) {
  const double s = abs_sin(theta);
  if (s == 0.0) return std::numeric_limits<double>::infinity();
  return -std::log(2.0 * s);
}

double volume(const AngleVector& x) {
  double sum = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sum += lobachevsky(x[i]);
  return 0.5 * sum;
}

std::vector<double> tetrahedron_volumes(const AngleVector& x) {
  std::vector<double> out(x.n_tets(), 0.0);
  for (std::size_t i = 0; i < x.size(); ++i) out[i / 6] += 0.5 * lobachevsky(x[i]);
  return out;
}

SegmentDerivativeReport segment_derivative(const AngleVector& p,
                                           const AngleVector& q, double t) {
  if (!(t > 0.0 && t < 1.0))
    throw std::domain_error("segment_derivative: t must lie in (0, 1)");
  if (p.size() != q.size())
    throw std::invalid_argument("segment_derivative: dimension mismatch");
  SegmentDerivativeReport rep;
  rep.t = t;
  double sum = 0.0;
  double sum2 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double a = q[i] - p[i];
    const double x = (1.0 - t) * p[i] + t * q[i];
    const bool at_bound = x <= kBoundSlack || kPi - x <= kBoundSlack;
    if (std::abs(a) <= kConventionZero && at_bound) {
      ++rep.convention_terms;
      continue;
    }
    if (a == 0.0) continue;
    const double ls = std::log(abs_sin(x));
    sum += a * ls;
    sum2 += a * (ls + std::log(2.0));
  }
  rep.value = -0.5 * sum;
  rep.value_two_sin = -0.5 * sum2;
  return rep;
}

BoundaryLimitReport boundary_derivative_limit(const AngleVector& p,
                                              const AngleVector& q,
                                              const FlatSet& flat, double tol) {
  if (p.size() != q.size())
    throw std::invalid_argument("boundary_derivative_limit: dimension mismatch");
  BoundaryLimitReport rep;
  double a_scale = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const double a = q[i] - p[i];
    a_scale = std::max(a_scale, std::abs(a));
    const bool at_bound = p[i] <= tol || p[i] >= kPi - tol;
    const bool in_flat = flat.contains(i);
    if (at_bound != in_flat)
      throw std::invalid_argument(
          "boundary_derivative_limit: inconsistent flat set at coordinate " +
          std::to_string(i));
    if (in_flat) {
      rep.entropy_part += a == 0.0 ? 0.0 : a * std::log(std::abs(a));
      rep.log_coefficient += a;
    } else {
      rep.smooth_part += a * std::log(abs_sin(p[i]));
    }
  }
  rep.divergent = std::abs(rep.log_coefficient) > 1e-9 * std::max(1.0, a_scale);
  if (rep.divergent) {
    // f'(t) ≈ -½ log_coefficient · ln t.
    rep.value = rep.log_coefficient > 0 ? std::numeric_limits<double>::infinity()
                                        : -std::numeric_limits<double>::infinity();
  } else {
    rep.value = -0.5 * (rep.smooth_part + rep.entropy_part);
  }
  return rep;
}

EntropyInequalityResult entropy_inequality(double x, double y, double a,
                                           double b, double c) {
  if (x < 0 || y < 0 || a < 0 || b < 0 || c < 0)
    throw std::domain_error("entropy_inequality: arguments must be nonnegative");
  EntropyInequalityResult out;
  out.lhs = xlogx(x + y) - xlogx(x) - xlogx(y) - (c - a) * x - (c - b) * y;
  out.satisfied = out.lhs <= 1e-12;
  return out;
}

}  // namespace cuspforge
