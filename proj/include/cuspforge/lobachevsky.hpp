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

#pragma once

#include <cstddef>
#include <vector>

#include "cuspforge/polytope.hpp"

namespace cuspforge {

/// Λ(θ) = -∫_0^θ ln|2 sin u| du, odd and π-periodic. Absolute error below
/// 1e-15 on [0, π].
double lobachevsky(double theta);

/// Λ'(θ) = -ln|2 sin θ|; +inf at multiples of π.
double lobachevsky_derivative(double theta);

/// |sin θ| evaluated without cancellation near multiples of π.
double abs_sin(double theta);

/// x ln x with 0 ln 0 = 0.
double xlogx(double x);

/// Hyperbolic volume ½ Σ Λ(x_i), i.e. the sum over tetrahedra of
/// Λ(α) + Λ(β) + Λ(γ).
double volume(const AngleVector& x);

/// Per-tetrahedron volumes.
std::vector<double> tetrahedron_volumes(const AngleVector& x);

struct SegmentDerivativeReport {
  double t = 0.0;
  /// f'(t) = -½ Σ a_i ln|sin x_i(t)| with a = q - p.
  double value = 0.0;
  /// The same derivative written with ln|2 sin x_i(t)|; equal to `value`
  /// whenever Σ a_i = 0.
  double value_two_sin = 0.0;
  /// Terms set to zero by the 0·ln 0 convention (a_i = 0 at a bound).
  std::size_t convention_terms = 0;
};

/// Derivative of t ↦ volume((1-t)p + tq) for t in (0, 1).
SegmentDerivativeReport segment_derivative(const AngleVector& p,
                                           const AngleVector& q, double t);

struct BoundaryLimitReport {
  /// lim_{t→0+} f'(t) = -(smooth_part + entropy_part) / 2. Infinite when the
  /// ln t terms do not cancel (see log_coefficient).
  double value = 0.0;
  /// Σ_{i∉J} a_i ln|sin p_i|
  double smooth_part = 0.0;
  /// Σ_{i∈J} a_i ln|a_i|, with 0 ln 0 = 0
  double entropy_part = 0.0;
  /// Σ_{i∈J} a_i, the coefficient of ln t in f'(t). Zero whenever every
  /// tetrahedron meeting J is flat in p.
  double log_coefficient = 0.0;
  bool divergent = false;
};

/// One-sided derivative of the volume at p in the direction q - p. J must
/// be exactly the coordinates of p that sit at 0 or π (within tol).
BoundaryLimitReport boundary_derivative_limit(const AngleVector& p,
                                              const AngleVector& q,
                                              const FlatSet& flat,
                                              double tol = kDefaultFlatTol);

struct EntropyInequalityResult {
  double lhs = 0.0;
  bool satisfied = false;
};

/// Evaluates (x+y)ln(x+y) - x ln x - y ln y - (c-a)x - (c-b)y, which is
/// nonpositive when e^c >= e^a + e^b. Throws std::domain_error on negative
/// inputs.
EntropyInequalityResult entropy_inequality(double x, double y, double a,
                                           double b, double c);

}  // namespace cuspforge
