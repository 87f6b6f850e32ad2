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

#include <algorithm>
#include <random>

#include "cuspforge/polytope.hpp"
#include "cuspforge/simplex.hpp"
#include "oracles.hpp"

using namespace cuspforge;

namespace {

LinearSystem system_of(const char* name) { return build_constraints(IncidenceIndex(oracle::load(name))); }

// Extreme value of coordinate i over {A x = b, 0 <= x <= π} written as a
// standard-form LP with explicit upper slack variables.
double coordinate_extreme(const LinearSystem& sys, std::size_t i, bool maximize) {
  const Eigen::Index m = sys.dimension(), r = sys.rows();
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(r + m, 2 * m);
  Eigen::VectorXd b(r + m);
  A.topLeftCorner(r, m) = sys.eq;
  b.head(r) = sys.rhs;
  A.bottomLeftCorner(m, m).setIdentity();
  A.bottomRightCorner(m, m).setIdentity();
  b.tail(m).setConstant(kPi);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(2 * m);
  c(i) = maximize ? -1.0 : 1.0;
  const auto res = lp::minimize(A, b, c);
  EXPECT_EQ(res.status, lp::Status::optimal);
  return res.x(i);
}

AngleVector regular(std::size_t n_tets) { return AngleVector::constant(6 * n_tets, kPi / 3); }

}  // namespace

TEST(Constraints, Fig8Shape) {
  const LinearSystem sys = system_of("fig8.tri");
  EXPECT_EQ(sys.dimension(), 12u);
  ASSERT_EQ(sys.rows(), 10u);
  std::size_t triples = 0, edges = 0;
  for (std::size_t r = 0; r < sys.rows(); ++r) {
    if (sys.kinds[r] == RowKind::vertex_triple) {
      ++triples;
      EXPECT_DOUBLE_EQ(sys.rhs(r), kPi);
      EXPECT_EQ(sys.eq.row(r).sum(), 3.0);
    } else {
      ++edges;
      EXPECT_EQ(r >= 8, true);
      EXPECT_DOUBLE_EQ(sys.rhs(r), 2 * kPi);
      EXPECT_EQ(sys.eq.row(r).sum(), 6.0);
    }
  }
  EXPECT_EQ(triples, 8u);
  EXPECT_EQ(edges, 2u);
  EXPECT_TRUE((sys.eq.array() == 0.0 || sys.eq.array() == 1.0).all());
  // Every coordinate lies in exactly one edge row and two triple rows.
  for (Eigen::Index i = 0; i < 12; ++i) {
    EXPECT_EQ(sys.eq.col(i).head(8).sum(), 2.0);
    EXPECT_EQ(sys.eq.col(i).tail(2).sum(), 1.0);
  }
}

TEST(Constraints, EdgeRowsMatchOrbitOracle) {
  const Triangulation tri = oracle::load("fig8.tri");
  const LinearSystem sys = build_constraints(IncidenceIndex(tri));
  const auto orbits = oracle::edge_orbits(tri);
  for (std::size_t r = 8; r < sys.rows(); ++r) {
    std::set<oracle::EdgeNode> members;
    for (Eigen::Index i = 0; i < 12; ++i)
      if (sys.eq(r, i) == 1.0) {
        auto [a, b] = kVertexPairs[i % 6];
        members.insert({static_cast<std::size_t>(i / 6), a, b});
      }
    EXPECT_NE(std::find(orbits.begin(), orbits.end(), members), orbits.end());
  }
}

TEST(Membership, RegularPointIsInterior) {
  const LinearSystem sys = system_of("fig8.tri");
  const auto m = classify_membership(sys, regular(2));
  EXPECT_EQ(m.kind, Membership::interior);
  EXPECT_LT(m.equality_residual, 1e-14);
  EXPECT_TRUE(m.flat.empty());
}

TEST(Membership, PerturbedPointIsInfeasible) {
  const LinearSystem sys = system_of("fig8.tri");
  Eigen::VectorXd v = regular(2).values();
  v(3) += 1e-6;
  EXPECT_EQ(classify_membership(sys, AngleVector(v)).kind, Membership::infeasible);
  v(3) -= 1e-6;
  v(0) = -0.1;
  EXPECT_EQ(classify_membership(sys, AngleVector(v)).kind, Membership::infeasible);
  EXPECT_THROW(classify_membership(sys, regular(1)), std::invalid_argument);
}

TEST(Membership, BoundaryPointReportsFlatCoordinates) {
  const LinearSystem sys = system_of("fig8.tri");
  const RelativeInterior ri = relative_interior(with_pins(sys, {{0, 0.0}}));
  ASSERT_FALSE(ri.empty);
  const auto m = classify_membership(sys, ri.point);
  EXPECT_EQ(m.kind, Membership::boundary);
  EXPECT_TRUE(m.flat.contains(0));
  // The opposite pair carries the same angle.
  EXPECT_TRUE(m.flat.contains(5));
}

TEST(Membership, FlatTetrahedron) {
  // Tetrahedron 0 flattened to (0, 0, π) with tetrahedron 1 in the same
  // shape; check the edge rows and classify.
  const LinearSystem sys = system_of("fig8.tri");
  const RelativeInterior ri = relative_interior(with_pins(sys, {{0, 0.0}, {1, 0.0}}));
  ASSERT_FALSE(ri.empty);
  const auto m = classify_membership(sys, ri.point);
  ASSERT_EQ(m.kind, Membership::boundary);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_TRUE(m.flat.contains(k)) << k;
  EXPECT_NEAR(ri.point[2], kPi, 1e-9);
}

TEST(Interior, MaxMinSlackIsAThirdOfPi) {
  // Angles of a tetrahedron sum to π, so the smallest is at most π/3; the
  // regular structure attains it.
  for (const char* name : {"fig8.tri", "gieseking.tri"}) {
    const auto res = interior_point(system_of(name));
    ASSERT_EQ(res.status, InteriorStatus::found) << name;
    EXPECT_NEAR(res.min_slack, kPi / 3, 1e-9) << name;
    EXPECT_EQ(classify_membership(system_of(name), res.point).kind, Membership::interior);
  }
}

TEST(Interior, PinnedSystemHasEmptyInterior) {
  const LinearSystem sys = with_pins(system_of("fig8.tri"), {{0, 0.0}});
  const auto res = interior_point(sys);
  ASSERT_EQ(res.status, InteriorStatus::empty_interior);
  ASSERT_TRUE(res.witness.has_value());
  const std::size_t w = *res.witness;
  const double lo = coordinate_extreme(sys, w, false), hi = coordinate_extreme(sys, w, true);
  EXPECT_NEAR(hi - lo, 0.0, 1e-9);
  EXPECT_TRUE(std::abs(lo) < 1e-9 || std::abs(lo - kPi) < 1e-9);
}

TEST(Interior, DoubledTetrahedronHasEmptyClosure) {
  const LinearSystem sys = system_of("doubled_tet.tri");
  // Σ over triple rows counts each coordinate twice (4π per tetrahedron);
  // the edge rows count each once and sum to 12π.
  EXPECT_NEAR(sys.rhs.head(8).sum() / 2, 4 * kPi, 1e-12);
  EXPECT_NEAR(sys.rhs.tail(6).sum(), 12 * kPi, 1e-12);
  EXPECT_EQ(interior_point(sys).status, InteriorStatus::empty_closure);
  EXPECT_TRUE(relative_interior(sys).empty);
}

TEST(Interior, BoxInfeasibleIsEmptyClosure) {
  // Consistent equalities but a pin outside [0, π].
  const LinearSystem sys = with_pins(system_of("gieseking.tri"), {{0, 4.0}});
  EXPECT_EQ(interior_point(sys).status, InteriorStatus::empty_closure);
}

TEST(RelativeInterior, FreeCoordinatesHaveSlack) {
  const LinearSystem sys = with_pins(system_of("fig8.tri"), {{0, 0.0}});
  const auto ri = relative_interior(sys);
  ASSERT_FALSE(ri.empty);
  EXPECT_GT(ri.min_free_slack, 1e-6);
  for (const auto& [i, v] : ri.fixed) {
    EXPECT_NEAR(coordinate_extreme(sys, i, false), v, 1e-9);
    EXPECT_NEAR(coordinate_extreme(sys, i, true), v, 1e-9);
  }
  for (std::size_t i = 0; i < 12; ++i) {
    const bool fixed = std::any_of(ri.fixed.begin(), ri.fixed.end(),
                                   [&](const auto& f) { return f.first == i; });
    if (!fixed) {
      EXPECT_GT(ri.point[i], 1e-6);
      EXPECT_LT(ri.point[i], kPi - 1e-6);
    }
  }
}

TEST(Affine, ParametrizationSolvesSystem) {
  const LinearSystem sys = system_of("fig8.tri");
  const auto aff = affine_solutions(sys.eq, sys.rhs);
  EXPECT_LT(aff.residual, 1e-12);
  Eigen::FullPivLU<Eigen::MatrixXd> lu(sys.eq);
  EXPECT_EQ(aff.basis.cols(), 12 - lu.rank());
  EXPECT_LT((sys.eq * aff.basis).cwiseAbs().maxCoeff(), 1e-12);
  EXPECT_LT((aff.basis.transpose() * aff.basis - Eigen::MatrixXd::Identity(aff.basis.cols(), aff.basis.cols()))
                .cwiseAbs()
                .maxCoeff(),
            1e-12);
}

TEST(Segment, EndpointsAndErrors) {
  const AngleVector p = regular(2);
  const AngleVector q = relative_interior(with_pins(system_of("fig8.tri"), {{0, 0.0}})).point;
  EXPECT_EQ(segment(p, q, 0.0).values(), p.values());
  EXPECT_LT((segment(p, q, 1.0).values() - q.values()).cwiseAbs().maxCoeff(), 1e-15);
  EXPECT_THROW(segment(p, q, 1.5), std::domain_error);
  EXPECT_THROW(segment(p, q, -0.1), std::domain_error);
  EXPECT_THROW(segment(p, regular(1), 0.5), std::invalid_argument);
  EXPECT_THROW(difference_vector(p, regular(1)), std::invalid_argument);
}

TEST(Segment, DifferenceOfClosurePointsIsTangent) {
  const LinearSystem sys = system_of("fig8.tri");
  const AngleVector p = regular(2);
  const AngleVector q = relative_interior(with_pins(sys, {{0, 0.0}})).point;
  const AngleVector a = difference_vector(p, q);
  EXPECT_LT((sys.eq * a.values()).cwiseAbs().maxCoeff(), 1e-12);
  // Each tetrahedron's angles sum to π at both ends.
  for (std::size_t t = 0; t < 2; ++t) EXPECT_NEAR(a.values().segment(6 * t, 6).sum(), 0.0, 1e-12);
}

TEST(Convexity, RandomCombinationsStayInClosure) {
  const LinearSystem sys = system_of("fig8.tri");
  std::vector<AngleVector> pts{regular(2)};
  for (std::size_t i : {0u, 1u, 2u, 6u, 7u, 8u})
    for (double v : {0.0, kPi}) {
      const auto ri = relative_interior(with_pins(sys, {{i, v}}));
      if (!ri.empty) pts.push_back(ri.point);
    }
  ASSERT_GE(pts.size(), 3u);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < 200; ++k) {
    const AngleVector& p = pts[rng() % pts.size()];
    const AngleVector& q = pts[rng() % pts.size()];
    EXPECT_NE(classify_membership(sys, segment(p, q, u(rng))).kind, Membership::infeasible);
  }
}

TEST(FlatSet, TetrahedronClosure) {
  FlatSet full{{0, 1, 2, 3, 4, 5}};
  EXPECT_TRUE(full.tetrahedron_closed());
  EXPECT_EQ(full.tetrahedra(), std::vector<std::size_t>{0});
  FlatSet partial{{0, 5}};
  EXPECT_FALSE(partial.tetrahedron_closed());
  FlatSet two{{0, 1, 2, 3, 4, 5, 7}};
  EXPECT_FALSE(two.tetrahedron_closed());
  EXPECT_EQ(two.tetrahedra(), (std::vector<std::size_t>{0, 1}));
  EXPECT_TRUE(FlatSet{}.tetrahedron_closed());
}

TEST(FlatSet, FlatOnlyBoundaryPointIsClosed) {
  const LinearSystem sys = system_of("fig8.tri");
  const auto ri = relative_interior(with_pins(sys, {{0, 0.0}, {1, 0.0}}));
  ASSERT_FALSE(ri.empty);
  const auto m = classify_membership(sys, ri.point);
  EXPECT_TRUE(m.flat.tetrahedron_closed());
}
