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


#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "cuspforge/lobachevsky.hpp"
#include "oracles.hpp"

using namespace cuspforge;

namespace {

LinearSystem fig8_system() { return build_constraints(IncidenceIndex(oracle::load("fig8.tri"))); }

AngleVector regular(std::size_t n_tets) { return AngleVector::constant(6 * n_tets, kPi / 3); }

AngleVector pinned_point(const std::vector<std::pair<std::size_t, double>>& pins) {
  return relative_interior(with_pins(fig8_system(), pins)).point;
}

double segment_volume(const AngleVector& p, const AngleVector& q, double t) {
  return volume(segment(p, q, t));
}

}  // namespace

TEST(Lobachevsky, MatchesQuadratureOnAThousandPoints) {
  double worst = 0.0;
  for (int k = 0; k <= 1000; ++k) {
    const double theta = kPi * k / 1000.0;
    worst = std::max(worst, std::abs(lobachevsky(theta) - oracle::lobachevsky_quadrature(theta)));
  }
  EXPECT_LT(worst, 1e-10);
}

TEST(Lobachevsky, RandomPointsMatchQuadrature) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(0.0, kPi);
  for (int k = 0; k < 200; ++k) {
    const double theta = u(rng);
    EXPECT_NEAR(lobachevsky(theta), oracle::lobachevsky_quadrature(theta), 1e-10) << theta;
  }
}

TEST(Lobachevsky, ZerosOddnessAndPeriod) {
  EXPECT_EQ(lobachevsky(0.0), 0.0);
  EXPECT_NEAR(lobachevsky(kPi), 0.0, 1e-15);
  EXPECT_NEAR(lobachevsky(kPi / 2), 0.0, 1e-15);
  for (double t : {0.1, 0.7, 1.3, 2.9}) {
    EXPECT_NEAR(lobachevsky(-t), -lobachevsky(t), 1e-15);
    EXPECT_NEAR(lobachevsky(t + kPi), lobachevsky(t), 1e-14);
    EXPECT_NEAR(lobachevsky(t - 3 * kPi), lobachevsky(t), 1e-13);
  }
}

TEST(Lobachevsky, DuplicationFormula) {
  // Λ(2θ) = 2Λ(θ) + 2Λ(θ + π/2).
  for (double t : {0.05, 0.4, 0.9, 1.2, 2.5}) {
    EXPECT_NEAR(lobachevsky(2 * t), 2 * lobachevsky(t) + 2 * lobachevsky(t + kPi / 2), 1e-14);
  }
}

TEST(Lobachevsky, RegularIdealTetrahedron) {
  // 3Λ(π/3) is the volume of the regular ideal tetrahedron.
  EXPECT_NEAR(3 * lobachevsky(kPi / 3), 3 * oracle::lobachevsky_quadrature(kPi / 3), 1e-13);
  // Maximum of Λ is at π/6.
  EXPECT_GT(lobachevsky(kPi / 6), lobachevsky(kPi / 6 + 1e-3));
  EXPECT_GT(lobachevsky(kPi / 6), lobachevsky(kPi / 6 - 1e-3));
}

TEST(Lobachevsky, DerivativeMatchesFiniteDifference) {
  for (double t : {0.2, 0.5, 1.0, 1.5, 2.0, 2.8}) {
    const double fd = oracle::central_difference([](double x) { return lobachevsky(x); }, t, 1e-5);
    EXPECT_NEAR(lobachevsky_derivative(t), fd, 1e-8) << t;
  }
  EXPECT_TRUE(std::isinf(lobachevsky_derivative(0.0)));
  EXPECT_GT(lobachevsky_derivative(0.0), 0.0);
}

TEST(Lobachevsky, AbsSinAndXLogX) {
  EXPECT_EQ(abs_sin(0.0), 0.0);
  EXPECT_NEAR(abs_sin(kPi - 1e-12), 1e-12, 1e-15);
  EXPECT_NEAR(abs_sin(-1.0), std::sin(1.0), 1e-16);
  EXPECT_EQ(xlogx(0.0), 0.0);
  EXPECT_NEAR(xlogx(2.0), 2 * std::log(2.0), 1e-15);
}

TEST(Volume, SumsTetrahedra) {
  const AngleVector x = regular(2);
  const auto per = tetrahedron_volumes(x);
  ASSERT_EQ(per.size(), 2u);
  const double expected = 3 * oracle::lobachevsky_quadrature(kPi / 3);
  EXPECT_NEAR(per[0], expected, 1e-12);
  EXPECT_NEAR(volume(x), 2 * expected, 1e-12);
  EXPECT_NEAR(volume(AngleVector::constant(6, 0.0)), 0.0, 1e-15);
}

TEST(SegmentDerivative, MatchesFiniteDifferenceOfVolume) {
  const AngleVector p = regular(2);
  const AngleVector q = pinned_point({{0, 0.0}});
  for (double t : {0.1, 0.3, 0.5, 0.9}) {
    const auto rep = segment_derivative(p, q, t);
    const double fd =
        oracle::central_difference([&](double s) { return segment_volume(p, q, s); }, t, 1e-5);
    EXPECT_NEAR(rep.value, fd, 1e-7) << t;
    // a sums to zero, so the two sine conventions agree.
    EXPECT_NEAR(rep.value, rep.value_two_sin, 1e-12);
  }
  EXPECT_THROW(segment_derivative(p, q, 0.0), std::domain_error);
  EXPECT_THROW(segment_derivative(p, q, 1.0), std::domain_error);
}

TEST(SegmentDerivative, AntisymmetricUnderReversal) {
  const AngleVector p = regular(2);
  const AngleVector q = pinned_point({{6, kPi}});
  for (double t : {0.2, 0.5, 0.7})
    EXPECT_NEAR(segment_derivative(p, q, t).value, -segment_derivative(q, p, 1 - t).value, 1e-12);
}

TEST(SegmentDerivative, ConventionTermsAtSharedBounds) {
  // Both endpoints have tetrahedron 0 at (0, β, π - β), so coordinates 0
  // and 5 stay at 0 along the segment and drop out by the 0·ln 0 convention.
  const AngleVector p = pinned_point({{0, 0.0}});
  const AngleVector q = pinned_point({{0, 0.0}, {1, 1.0}});
  ASSERT_NEAR(q[1], 1.0, 1e-12);
  const auto rep = segment_derivative(p, q, 0.5);
  EXPECT_EQ(rep.convention_terms, 2u);
  EXPECT_TRUE(std::isfinite(rep.value));
  const double fd =
      oracle::central_difference([&](double s) { return segment_volume(p, q, s); }, 0.5, 1e-5);
  EXPECT_NEAR(rep.value, fd, 1e-7);
}

TEST(SegmentDerivative, FlatEndpointsGiveZero) {
  // In fig8 one flat tetrahedron forces the other flat as well.
  const AngleVector p = pinned_point({{0, 0.0}, {1, 0.0}});
  const auto rep = segment_derivative(p, p, 0.5);
  EXPECT_EQ(rep.convention_terms, 12u);
  EXPECT_EQ(rep.value, 0.0);
}

TEST(SegmentDerivative, ConcaveAlongInteriorSegments) {
  const AngleVector p = pinned_point({{6, 0.4}});
  const AngleVector q = pinned_point({{7, 2.0}});
  double prev = segment_derivative(p, q, 0.01).value;
  for (int k = 2; k < 100; ++k) {
    const double cur = segment_derivative(p, q, k / 100.0).value;
    EXPECT_LE(cur, prev + 1e-12);
    prev = cur;
  }
}

TEST(BoundaryLimit, InteriorStartMatchesRichardson) {
  const AngleVector p = pinned_point({{6, 0.4}});
  const AngleVector q = regular(2);
  const auto rep = boundary_derivative_limit(p, q, FlatSet{});
  EXPECT_FALSE(rep.divergent);
  EXPECT_EQ(rep.entropy_part, 0.0);
  const double limit = oracle::richardson([&](double h) { return segment_derivative(p, q, h).value; }, 1e-2);
  EXPECT_NEAR(rep.value, limit, 1e-8);
}

TEST(BoundaryLimit, FlatTetrahedronMatchesRichardson) {
  const AngleVector p = pinned_point({{0, 0.0}, {1, 0.0}});
  const AngleVector q = regular(2);
  const auto m = classify_membership(fig8_system(), p);
  ASSERT_EQ(m.kind, Membership::boundary);
  const auto rep = boundary_derivative_limit(p, q, m.flat);
  EXPECT_FALSE(rep.divergent);
  EXPECT_NEAR(rep.log_coefficient, 0.0, 1e-12);
  const double limit = oracle::richardson([&](double h) { return segment_derivative(p, q, h).value; }, 1e-2);
  EXPECT_NEAR(rep.value, limit, 1e-7);
  // Moving toward the regular point increases volume.
  EXPECT_GT(rep.value, 0.0);
}

TEST(BoundaryLimit, PartiallyFlatDiverges) {
  const AngleVector p = pinned_point({{0, 0.0}});
  const AngleVector q = regular(2);
  const auto m = classify_membership(fig8_system(), p);
  ASSERT_EQ(m.kind, Membership::boundary);
  ASSERT_FALSE(m.flat.tetrahedron_closed());
  const auto rep = boundary_derivative_limit(p, q, m.flat);
  EXPECT_TRUE(rep.divergent);
  EXPECT_GT(rep.log_coefficient, 0.0);
  EXPECT_EQ(rep.value, std::numeric_limits<double>::infinity());
  // f'(t) grows like -½ log_coefficient ln t.
  const double d1 = segment_derivative(p, q, 1e-6).value;
  const double d2 = segment_derivative(p, q, 1e-8).value;
  EXPECT_NEAR((d2 - d1) / std::log(100.0), 0.5 * rep.log_coefficient, 1e-4);
}

TEST(BoundaryLimit, InconsistentFlatSetThrows) {
  const AngleVector p = pinned_point({{0, 0.0}, {1, 0.0}});
  EXPECT_THROW(boundary_derivative_limit(p, regular(2), FlatSet{}), std::invalid_argument);
  EXPECT_THROW(boundary_derivative_limit(regular(2), p, FlatSet{{3}}), std::invalid_argument);
  EXPECT_THROW(boundary_derivative_limit(p, regular(1), FlatSet{}), std::invalid_argument);
}

TEST(Entropy, EqualityAndStrictCases) {
  EXPECT_NEAR(entropy_inequality(1.0, 1.0, 0.0, 0.0, std::log(2.0)).lhs, 0.0, 1e-15);
  // Equality holds when x : y = e^a : e^b and e^c = e^a + e^b.
  const double a = 0.3, b = 1.1, c = std::log(std::exp(a) + std::exp(b));
  EXPECT_NEAR(entropy_inequality(std::exp(a), std::exp(b), a, b, c).lhs, 0.0, 1e-14);
  EXPECT_LT(entropy_inequality(1.0, 3.0, a, b, c).lhs, -1e-3);
  EXPECT_EQ(entropy_inequality(0.0, 0.0, 1.0, 1.0, 2.0).lhs, 0.0);
  EXPECT_TRUE(entropy_inequality(2.0, 0.0, 0.0, 0.0, 1.0).satisfied);
  EXPECT_THROW(entropy_inequality(-1.0, 1.0, 0.0, 0.0, 1.0), std::domain_error);
}

TEST(Entropy, HundredThousandRandomDraws) {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> pos(0.0, 10.0), ex(0.0, 5.0), margin(0.0, 2.0);
  double worst = -1.0;
  for (int k = 0; k < 100000; ++k) {
    const double x = pos(rng), y = pos(rng), a = ex(rng), b = ex(rng);
    const double c = std::log(std::exp(a) + std::exp(b)) + margin(rng);
    worst = std::max(worst, entropy_inequality(x, y, a, b, c).lhs);
  }
  EXPECT_LE(worst, 1e-12);
}

TEST(Entropy, ViolatedWhenExponentTooSmall) {
  // e^c < e^a + e^b admits a positive left side at x : y = e^a : e^b.
  const double a = 0.0, b = 0.0, c = 0.5;
  EXPECT_GT(entropy_inequality(1.0, 1.0, a, b, c).lhs, 0.0);
}
