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

#include <Eigen/Dense>
#include <cstddef>
#include <numbers>
#include <optional>
#include <utility>
#include <vector>

#include "cuspforge/triangulation.hpp"

namespace cuspforge {

inline constexpr double kPi = std::numbers::pi;

/// A point of R^I in radians, ordered as IncidenceIndex entries.
class AngleVector {
 public:
  AngleVector() = default;
  explicit AngleVector(Eigen::VectorXd values) : values_(std::move(values)) {}
  static AngleVector constant(std::size_t n, double value) {
    return AngleVector(
        Eigen::VectorXd::Constant(static_cast<Eigen::Index>(n), value));
  }

  const Eigen::VectorXd& values() const { return values_; }
  std::size_t size() const { return static_cast<std::size_t>(values_.size()); }
  double operator[](std::size_t i) const {
    return values_(static_cast<Eigen::Index>(i));
  }
  std::size_t n_tets() const { return size() / 6; }

 private:
  Eigen::VectorXd values_;
};

/// Coordinates of a vector that sit at 0 or π.
struct FlatSet {
  std::vector<std::size_t> indices;  // sorted

  bool contains(std::size_t i) const;
  bool empty() const { return indices.empty(); }
  /// True when every tetrahedron meeting the set lies in it with all six
  /// coordinates.
  bool tetrahedron_closed() const;
  /// Tetrahedra with at least one coordinate in the set.
  std::vector<std::size_t> tetrahedra() const;
};

enum class RowKind { vertex_triple, edge, pin };

/// Equality rows (coefficients in {0,1}) with the box 0 <= x_i <= π.
/// Row order: vertex triples (rhs π), then edge classes (rhs 2π), then any
/// pinned coordinates.
struct LinearSystem {
  Eigen::MatrixXd eq;
  Eigen::VectorXd rhs;
  std::vector<RowKind> kinds;
  double lower = 0.0;
  double upper = kPi;

  std::size_t dimension() const { return static_cast<std::size_t>(eq.cols()); }
  std::size_t n_tets() const { return dimension() / 6; }
  std::size_t rows() const { return static_cast<std::size_t>(eq.rows()); }
};

LinearSystem build_constraints(const IncidenceIndex& idx);
/// Adds rows x_i = value for each pin.
LinearSystem with_pins(const LinearSystem& sys,
                       const std::vector<std::pair<std::size_t, double>>& pins);

enum class Membership { interior, boundary, infeasible };

struct MembershipResult {
  Membership kind = Membership::infeasible;
  FlatSet flat;                    // filled for boundary
  double equality_residual = 0.0;  // max |row·x - rhs|
};

inline constexpr double kDefaultFlatTol = 1e-8;

MembershipResult classify_membership(const LinearSystem& sys,
                                     const AngleVector& x,
                                     double tol = kDefaultFlatTol);

/// x = origin + basis * y parametrizes the solutions of A x = b; basis has
/// orthonormal columns. residual is |A origin - b|_inf.
struct AffineParametrization {
  Eigen::VectorXd origin;
  Eigen::MatrixXd basis;
  double residual = 0.0;
};
AffineParametrization affine_solutions(const Eigen::MatrixXd& A,
                                       const Eigen::VectorXd& b);

enum class InteriorStatus { found, empty_interior, empty_closure };

struct InteriorPointResult {
  InteriorStatus status = InteriorStatus::empty_closure;
  /// A max-min-slack point when found; a point of the relative interior of
  /// the closure for empty_interior; empty for empty_closure.
  AngleVector point;
  double min_slack = 0.0;
  /// For empty_interior, a coordinate pinned to a bound on the whole closure.
  std::optional<std::size_t> witness;
};

inline constexpr double kInteriorTol = 1e-9;

/// Maximizes min_i min(x_i, π - x_i) subject to the equalities.
InteriorPointResult interior_point(const LinearSystem& sys,
                                   double tol = kInteriorTol);

/// The smallest face of the closure: coordinates pinned to a bound on every
/// closure point, plus a point strictly inside the remaining bounds.
struct RelativeInterior {
  bool empty = true;
  AngleVector point;
  std::vector<std::pair<std::size_t, double>> fixed;  // sorted by index
  double min_free_slack = 0.0;
};
RelativeInterior relative_interior(const LinearSystem& sys,
                                   double tol = kInteriorTol);

/// (1 - t) p + t q.
AngleVector segment(const AngleVector& p, const AngleVector& q, double t);
/// q - p.
AngleVector difference_vector(const AngleVector& p, const AngleVector& q);

}  // namespace cuspforge
