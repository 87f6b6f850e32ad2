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

#include "cuspforge/triangulation.hpp"

namespace cuspforge {

namespace {

Perm4 from_images(const std::array<int, 4>& img) {
  return Perm4(img[0], img[1], img[2], img[3]);
}

}  // namespace

// Let A, B share the face opposite apex a in A (apex b in B) and let
// x0 < x1 < x2 be the face vertices named in A. New tetrahedron T_k has
// vertices (a, b, x_{k+1}, x_{k+2}); its face 1 replaces A's face x_k, its
// face 0 replaces B's face perm(x_k), and its faces 2 and 3 are glued to
// T_{k+1} and T_{k-1} around the new edge ab.
Triangulation pachner_23(const Triangulation& tri, FaceRef face) {
  if (face.tet >= tri.size() || face.face < 0 || face.face > 3)
    throw std::out_of_range("pachner_23: no face (" + std::to_string(face.tet) +
                            "," + std::to_string(face.face) + ")");
  const std::size_t ta = face.tet;
  const Gluing& shared = tri.gluing(face);
  const std::size_t tb = shared.tet;
  if (ta == tb) throw UnsupportedMove("unsupported self-gluing: face glued to its own tetrahedron");

  const int a = face.face;
  const Perm4 ab = shared.perm;  // A vertices -> B vertices
  const int b = ab[a];
  std::array<int, 3> x{};
  for (int v = 0, k = 0; v < 4; ++v)
    if (v != a) x[k++] = v;

  const std::size_t n = tri.size();
  const std::array<std::size_t, 3> tk{ta, tb, n};

  // Vertex maps from A (resp. B) to T_k for the external face replaced by
  // T_k's face 1 (resp. face 0).
  std::array<Perm4, 3> from_a{};
  std::array<Perm4, 3> from_b{};
  for (int k = 0; k < 3; ++k) {
    std::array<int, 4> ia{}, ib{};
    ia[a] = 0;
    ia[x[k]] = 1;
    ia[x[(k + 1) % 3]] = 2;
    ia[x[(k + 2) % 3]] = 3;
    ib[b] = 1;
    ib[ab[x[k]]] = 0;
    ib[ab[x[(k + 1) % 3]]] = 2;
    ib[ab[x[(k + 2) % 3]]] = 3;
    from_a[k] = from_images(ia);
    from_b[k] = from_images(ib);
  }

  struct NewFace {
    std::size_t tet;
    int face;
    Perm4 map;  // old tetrahedron vertices -> new tetrahedron vertices
  };
  auto relocate = [&](std::size_t old_tet, int old_face) -> NewFace {
    for (int k = 0; k < 3; ++k) {
      if (old_tet == ta && old_face == x[k]) return {tk[k], 1, from_a[k]};
      if (old_tet == tb && old_face == ab[x[k]]) return {tk[k], 0, from_b[k]};
    }
    throw std::logic_error("pachner_23: face is not external");
  };

  std::vector<std::array<Gluing, 4>> out(n + 1);
  for (std::size_t t = 0; t < n; ++t)
    if (t != ta && t != tb)
      for (int f = 0; f < 4; ++f) out[t][f] = tri.gluing(t, f);

  const Perm4 around(0, 1, 3, 2);
  for (int k = 0; k < 3; ++k) {
    out[tk[k]][2] = Gluing{tk[(k + 1) % 3], around};
    out[tk[k]][3] = Gluing{tk[(k + 2) % 3], around};
  }

  for (const std::size_t old_tet : {ta, tb}) {
    for (int f = 0; f < 4; ++f) {
      if ((old_tet == ta && f == a) || (old_tet == tb && f == b)) continue;
      const NewFace src = relocate(old_tet, f);
      const Gluing& g = tri.gluing(old_tet, f);
      const int target_face = g.perm[f];
      if (g.tet == ta || g.tet == tb) {
        const NewFace dst = relocate(g.tet, target_face);
        out[src.tet][src.face] = Gluing{dst.tet, dst.map * g.perm * src.map.inverse()};
      } else {
        out[src.tet][src.face] = Gluing{g.tet, g.perm * src.map.inverse()};
        out[g.tet][target_face] = Gluing{src.tet, src.map * g.perm.inverse()};
      }
    }
  }
  return Triangulation(std::move(out), tri.label());
}

}  // namespace cuspforge
