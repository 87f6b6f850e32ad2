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

#include "cuspforge/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "cuspforge/triangulation.hpp"

namespace cuspforge {

namespace {

using Complex = std::complex<double>;

// Arc at v inside the face spanned by v, u, w (any may be ∞ = vertex 0).
double arc(const DecoratedTetrahedron& tet, int v, int u, int w) {
  const auto& dec = tet.decoration();
  if (v == 0) return std::abs(tet.position(u) - tet.position(w)) / dec[0];
  const Complex pv = tet.position(v);
  if (u == 0) return dec[v] / std::abs(tet.position(w) - pv);
  if (w == 0) return dec[v] / std::abs(tet.position(u) - pv);
  const Complex pu = tet.position(u);
  const Complex pw = tet.position(w);
  return dec[v] * std::abs(pu - pw) / (std::abs(pu - pv) * std::abs(pw - pv));
}

std::array<int, 2> others(int a, int b) {
  std::array<int, 2> out{};
  for (int v = 0, k = 0; v < 4; ++v)
    if (v != a && v != b) out[k++] = v;
  return out;
}

}  // namespace

DecoratedTetrahedron tetrahedron_from_angles(double alpha, double beta,
                                             double gamma) {
  if (!(alpha > 0 && beta > 0 && gamma > 0))
    throw std::domain_error("tetrahedron_from_angles: angles must be positive");
  if (std::abs(alpha + beta + gamma - std::numbers::pi) > 1e-12)
    throw std::domain_error("tetrahedron_from_angles: angles must sum to pi");
  DecoratedTetrahedron tet;
  tet.angles_ = {alpha, beta, gamma};
  const Complex z = std::polar(std::sin(beta) / std::sin(gamma), alpha);
  tet.positions_ = {Complex(0.0, 0.0), Complex(1.0, 0.0), z};
  return tet;
}

DecoratedTetrahedron set_decoration(const DecoratedTetrahedron& tet,
                                    const std::array<double, 4>& params) {
  for (double p : params)
    if (!(p > 0) || !std::isfinite(p))
      throw std::domain_error("set_decoration: parameters must be positive");
  DecoratedTetrahedron out = tet;
  out.decoration_ = params;
  return out;
}

std::array<double, 3> extract_dihedral_angles(const DecoratedTetrahedron& tet) {
  const Complex p0 = tet.position(1);
  const Complex p1 = tet.position(2);
  const Complex z = tet.position(3);
  return {std::abs(std::arg((z - p0) / (p1 - p0))),
          std::abs(std::arg((p0 - p1) / (z - p1))),
          std::abs(std::arg((p1 - z) / (p0 - z)))};
}

EdgeLengths edge_lengths(const DecoratedTetrahedron& tet) {
  EdgeLengths out;
  const auto& dec = tet.decoration();
  for (int k = 0; k < 6; ++k) {
    auto [u, v] = kVertexPairs[k];
    if (u == 0) {
      // Vertical geodesic from the top of the horoball (height d) to height h.
      out.L[k] = std::log(dec[0] / dec[v]);
    } else {
      const double r = std::abs(tet.position(u) - tet.position(v));
      out.L[k] = std::log(r * r / (dec[u] * dec[v]));
    }
  }
  return out;
}

HorocycleData horocycle_arcs(const DecoratedTetrahedron& tet) {
  HorocycleData out;
  for (int f = 0; f < 4; ++f) {
    for (int v = 0; v < 4; ++v) {
      if (v == f) {
        out.arcs[f][v] = std::numeric_limits<double>::quiet_NaN();
        continue;
      }
      auto [u, w] = others(f, v);
      out.arcs[f][v] = arc(tet, v, u, w);
    }
  }
  return out;
}

HorocycleData::Split HorocycleData::split(int pair) const {
  Split s;
  auto [u, w] = kVertexPairs[pair];
  auto [u2, w2] = kVertexPairs[5 - pair];
  // Faces containing e are opposite u2 and w2, and vice versa.
  s.along_edge = {at(u2, u), at(u2, w), at(w2, u), at(w2, w)};
  s.along_opposite = {at(u, u2), at(u, w2), at(w, u2), at(w, w2)};
  s.remaining = {at(u2, w2), at(w2, u2), at(u, w), at(w, u)};
  return s;
}

AverageLengths average_lengths(const DecoratedTetrahedron& tet) {
  const EdgeLengths l = edge_lengths(tet);
  AverageLengths out;
  for (int k = 0; k < 6; ++k) out.W[k] = 0.5 * (l.L[k] + l.L[5 - k]);
  return out;
}

double cosine_law_residual(const DecoratedTetrahedron& tet) {
  const EdgeLengths l = edge_lengths(tet);
  const HorocycleData h = horocycle_arcs(tet);
  double worst = 0.0;
  for (int f = 0; f < 4; ++f) {
    for (int k = 0; k < 6; ++k) {
      auto [u, w] = kVertexPairs[k];
      if (u == f || w == f) continue;
      const double r = l.L[k] + std::log(h.at(f, u)) + std::log(h.at(f, w));
      worst = std::max(worst, std::abs(r));
    }
  }
  return worst;
}

double edge_arc_residual(const DecoratedTetrahedron& tet) {
  const EdgeLengths l = edge_lengths(tet);
  const HorocycleData h = horocycle_arcs(tet);
  double worst = 0.0;
  for (int k = 0; k < 6; ++k) {
    double sum = 0.0;
    for (double a : h.split(k).along_edge) sum += std::log(a);
    worst = std::max(worst, std::abs(l.L[k] + 0.5 * sum));
  }
  return worst;
}

SineOffsetReport sine_offset_report(const DecoratedTetrahedron& tet) {
  return sine_offset_report(tet, average_lengths(tet));
}

SineOffsetReport sine_offset_report(const DecoratedTetrahedron& tet,
                                    const AverageLengths& w) {
  const auto& th = tet.angles();
  for (double t : th)
    if (t < kNearFlatGuard || std::numbers::pi - t < kNearFlatGuard)
      throw std::domain_error("sine_offset_report: tetrahedron is (nearly) flat");
  SineOffsetReport rep;
  for (int k = 0; k < 3; ++k) rep.offsets[k] = w.W[k] - std::log(std::sin(th[k]));
  rep.constant = (rep.offsets[0] + rep.offsets[1] + rep.offsets[2]) / 3.0;
  for (double d : rep.offsets) rep.spread = std::max(rep.spread, std::abs(d - rep.constant));
  return rep;
}

TriangleCheck average_length_triangle_check(const AverageLengths& w, int vertex) {
  if (vertex < 0 || vertex > 3)
    throw std::out_of_range("average_length_triangle_check: vertex must be 0..3");
  std::array<double, 3> side{};
  for (int k = 0, s = 0; k < 6; ++k) {
    auto [a, b] = kVertexPairs[k];
    if (a == vertex || b == vertex) side[s++] = std::exp(w.W[k]);
  }
  TriangleCheck out;
  out.slack = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    const double lhs = side[(k + 1) % 3] + side[(k + 2) % 3];
    const double rhs = side[k];
    const double slack = (lhs - rhs) / rhs;
    if (slack < out.slack) {
      out.slack = slack;
      out.lhs = lhs;
      out.rhs = rhs;
    }
  }
  out.satisfied = out.slack >= -1e-12;
  return out;
}

TriangleCheck average_length_triangle_check(const DecoratedTetrahedron& tet,
                                            int vertex) {
  return average_length_triangle_check(average_lengths(tet), vertex);
}

}  // namespace cuspforge
