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

#include <Eigen/Dense>

#include "cuspforge/polytope.hpp"

namespace cuspforge {

/// First-order optimality witness for the volume at a closure point.
///
/// Coordinates away from the bounds must carry a gradient in the span of
/// the equality normals. Coordinates at a bound are handled through the
/// one-sided derivative of the volume: partially flat tetrahedra can only
/// be maximal if the bound is forced, and flat tetrahedra need every
/// feasible release to lose volume.
struct MaximalityCertificate {
  /// One per equality row.
  Eigen::VectorXd multipliers;
  /// One per tetrahedron at the (0, 0, π) pattern: minus the best rate at
  /// which releasing it alone changes the volume. Nonnegative at a maximum.
  std::vector<double> active_multipliers;
  std::vector<std::size_t> active_tets;
  /// |∇_free vol - A_free^T multipliers|_2
  double gradient_residual = 0.0;
  /// Best one-sided derivative over joint releases of all flat
  /// tetrahedra (normalized to unit total release); -inf if none exists.
  double release_rate = 0.0;
  /// Bound coordinates outside the flat pattern that are not forced.
  std::vector<std::size_t> releasable_partial;
  bool signs_ok = false;
};

/// Throws std::invalid_argument when p is not in the closure within tol.
MaximalityCertificate certify(const LinearSystem& sys, const AngleVector& p,
                              double tol = kDefaultFlatTol);

}  // namespace cuspforge
