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
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <vector>

#include "cuspforge/polytope.hpp"

namespace cuspforge {

struct OptimizerOptions {
  /// Projected-gradient tolerance.
  double tol = 1e-9;
  std::size_t max_iter = 100000;
  std::uint64_t seed = 0;
  double flat_tol = kDefaultFlatTol;
  /// Start from the relative-interior point instead of a seeded random one.
  bool deterministic_start = false;
};

enum class OptimizationStatus { converged, iteration_cap, empty_closure };
std::string_view to_string(OptimizationStatus s);

enum class TetClass { positive, flat, invalid };
std::string_view to_string(TetClass c);

struct OptimizationResult {
  AngleVector point;
  double volume = 0.0;
  OptimizationStatus status = OptimizationStatus::empty_closure;
  std::vector<std::size_t> flat_tets;
  FlatSet active_set;
  /// Gradient residual of the certificate at the returned point.
  double kkt_residual = 0.0;
  std::size_t iterations = 0;
  /// Volume after every accepted iterate, starting point first.
  std::vector<double> volume_history;
};

/// Maximizes ½ Σ Λ(x_i) over the closure of the angle-structure polytope.
///
/// Damped Newton ascent on the smallest face of the closure, with a
/// fraction-to-boundary rule. Tetrahedra that degenerate towards the
/// (0, 0, π) pattern are snapped onto it and frozen.
OptimizationResult maximize_volume(const LinearSystem& sys,
                                   const OptimizerOptions& opts = {});

/// A random point strictly inside the free bounds of the smallest face:
/// the relative-interior point moved towards the projection of a random
/// box vertex, shrinking until feasible.
AngleVector random_closure_point(const LinearSystem& sys,
                                 const RelativeInterior& ri, std::mt19937_64& rng);

/// Per-tetrahedron shape of a closure point.
std::vector<TetClass> classify_tetrahedra(const AngleVector& p,
                                          double tol = kDefaultFlatTol);

struct UniquenessReport {
  double max_spread = 0.0;
  double volume_spread = 0.0;
  std::vector<double> volumes;
  std::vector<AngleVector> points;
  std::vector<OptimizationStatus> statuses;
};

/// Runs maximize_volume from n_starts seeded random starts (concurrently;
/// results are ordered by start index).
UniquenessReport uniqueness_probe(const LinearSystem& sys, std::size_t n_starts,
                                  std::uint64_t seed, OptimizerOptions opts = {});

/// Seed for start k of a multi-start run.
std::uint64_t start_seed(std::uint64_t seed, std::size_t k);

struct DominanceReport {
  bool all_dominated = true;
  /// Smallest vol(p) - vol(q) over samples with |q - p|_inf > strict_radius.
  double worst_gap = 0.0;
  /// Largest one-sided derivative of the volume at p towards a sample.
  double worst_directional = 0.0;
  std::size_t samples = 0;
  std::optional<AngleVector> witness;
};

inline constexpr double kStrictRadius = 1e-4;
inline constexpr double kDirectionalTol = 1e-10;

/// Samples q in the closure (q = p, a gradient step from p, interior and
/// boundary points) and checks vol(p) >= vol(q), strictly away from p, and
/// that the volume does not increase to first order towards q.
/// Throws std::invalid_argument when p is not in the closure.
DominanceReport dominance_check(const LinearSystem& sys, const AngleVector& p,
                                std::size_t n_samples, std::uint64_t seed,
                                double tol = kDirectionalTol);

}  // namespace cuspforge
