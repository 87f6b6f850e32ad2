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

// Decorated ideal tetrahedra in the upper half-space model.
//
// Vertex 0 is the point at infinity and vertices 1, 2, 3 sit at 0, 1 and z
// on the boundary plane. Edges use the vertex-pair order 01,02,03,12,13,23;
// opposite pairs (k, 5-k) carry equal dihedral angles, so the three angles
// are indexed by k = 0, 1, 2:
//   α: edges 01 (∞0) and 23 (1z), the Euclidean angle at 0,
//   β: edges 02 (∞1) and 13 (0z), the Euclidean angle at 1,
//   γ: edges 03 (∞z) and 12 (01), the Euclidean angle at z.
// A decoration is one positive number per vertex: the height of the
// horizontal horosphere at ∞, and the Euclidean diameter of the horoball
// at each finite vertex.

#include <array>
#include <complex>

namespace cuspforge {

class DecoratedTetrahedron {
 public:
  const std::array<double, 3>& angles() const { return angles_; }
  /// Dihedral angle at vertex pair 0..5.
  double dihedral_angle(int pair) const { return angles_[pair < 3 ? pair : 5 - pair]; }
  /// Position of a finite vertex (1, 2 or 3) on the boundary plane.
  std::complex<double> position(int vertex) const { return positions_[vertex - 1]; }
  const std::array<double, 4>& decoration() const { return decoration_; }

 private:
  friend DecoratedTetrahedron tetrahedron_from_angles(double, double, double);
  friend DecoratedTetrahedron set_decoration(const DecoratedTetrahedron&,
                                             const std::array<double, 4>&);

  std::array<double, 3> angles_{};
  std::array<std::complex<double>, 3> positions_{};
  std::array<double, 4> decoration_{1.0, 1.0, 1.0, 1.0};
};

/// The ideal tetrahedron with dihedral angles (α, β, γ), vertices at
/// ∞, 0, 1, z and unit decoration. Throws std::domain_error unless all
/// angles are positive and sum to π within 1e-12.
DecoratedTetrahedron tetrahedron_from_angles(double alpha, double beta,
                                             double gamma);

/// Same tetrahedron, new horospheres. Throws on nonpositive parameters.
DecoratedTetrahedron set_decoration(const DecoratedTetrahedron& tet,
                                    const std::array<double, 4>& params);

/// Dihedral angles recomputed from the vertex positions.
std::array<double, 3> extract_dihedral_angles(const DecoratedTetrahedron& tet);

/// Signed horosphere-to-horosphere distances, indexed by vertex pair.
struct EdgeLengths {
  std::array<double, 6> L{};
};
EdgeLengths edge_lengths(const DecoratedTetrahedron& tet);

/// Horocyclic arc lengths inside the four decorated face triangles.
struct HorocycleData {
  /// arcs[f][v]: arc at vertex v inside the face opposite vertex f; the
  /// diagonal is unused.
  std::array<std::array<double, 4>, 4> arcs{};

  double at(int face, int vertex) const { return arcs[face][vertex]; }

  /// The twelve arcs split with respect to an opposite edge pair (e, e'):
  /// four arcs at the ends of e in the faces containing e, four likewise
  /// for e', and the four remaining arcs.
  struct Split {
    std::array<double, 4> along_edge{};
    std::array<double, 4> along_opposite{};
    std::array<double, 4> remaining{};
  };
  Split split(int pair) const;
};
HorocycleData horocycle_arcs(const DecoratedTetrahedron& tet);

/// W(e) = ½ (L(e) + L(e')), indexed by vertex pair.
struct AverageLengths {
  std::array<double, 6> W{};
};
AverageLengths average_lengths(const DecoratedTetrahedron& tet);

/// Worst |l + ln a_j + ln a_k| over every face and every edge of it, where
/// a_j, a_k are the arcs at the ends of the edge in that face.
double cosine_law_residual(const DecoratedTetrahedron& tet);
/// Worst |L(e) + ½ Σ ln a_i| over edges, the sum running over the four arcs
/// at the ends of e in the two faces containing e.
double edge_arc_residual(const DecoratedTetrahedron& tet);

/// Offsets d_k = W(e_k) - ln sin θ(e_k) for the three opposite pairs; the
/// spread is max |d_k - mean|.
struct SineOffsetReport {
  std::array<double, 3> offsets{};
  double constant = 0.0;
  double spread = 0.0;
};
inline constexpr double kNearFlatGuard = 1e-6;
/// Throws std::domain_error for angles below kNearFlatGuard.
SineOffsetReport sine_offset_report(const DecoratedTetrahedron& tet);
/// Same, from externally supplied average lengths (used for fault injection
/// and for tetrahedra whose lengths come from elsewhere).
SineOffsetReport sine_offset_report(const DecoratedTetrahedron& tet,
                                    const AverageLengths& w);

/// Triangle inequality among e^{W(e_1)}, e^{W(e_2)}, e^{W(e_3)} for the
/// edges at a vertex, in all three orderings. lhs/rhs describe the tightest
/// ordering; slack is (lhs - rhs) / rhs.
struct TriangleCheck {
  double lhs = 0.0;
  double rhs = 0.0;
  double slack = 0.0;
  bool satisfied = false;
};
TriangleCheck average_length_triangle_check(const DecoratedTetrahedron& tet,
                                            int vertex);
TriangleCheck average_length_triangle_check(const AverageLengths& w, int vertex);

}  // namespace cuspforge
