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

#include <algorithm>
#include <map>
#include <numeric>
#include <queue>
#include <set>

namespace cuspforge {

namespace {

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }
  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }
  // Keeps the smaller root so class representatives are minimal members.
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

 private:
  std::vector<std::size_t> parent_;
};

std::string face_name(std::size_t tet, int face) {
  return "(" + std::to_string(tet) + "," + std::to_string(face) + ")";
}

// Corner triangles (tet, v) of the vertex links, indexed 4 * tet + v.
UnionFind vertex_classes(const Triangulation& tri) {
  UnionFind uf(4 * tri.size());
  for (std::size_t t = 0; t < tri.size(); ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      for (int v = 0; v < 4; ++v) {
        if (v == f) continue;
        uf.unite(4 * t + v, 4 * g.tet + g.perm[v]);
      }
    }
  }
  return uf;
}

}  // namespace

ParseError::ParseError(std::size_t line, std::size_t column,
                       const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + what),
      line_(line),
      column_(column) {}

bool Perm4::is_bijection() const {
  std::array<bool, 4> seen{};
  for (auto v : image_) {
    if (v > 3 || seen[v]) return false;
    seen[v] = true;
  }
  return true;
}

Perm4 Perm4::inverse() const {
  Perm4 out;
  for (int i = 0; i < 4; ++i) out.image_[image_[i]] = static_cast<std::uint8_t>(i);
  return out;
}

Perm4 Perm4::operator*(const Perm4& other) const {
  Perm4 out;
  for (int i = 0; i < 4; ++i) out.image_[i] = image_[other.image_[i]];
  return out;
}

int Perm4::sign() const {
  int inversions = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (image_[i] > image_[j]) ++inversions;
  return inversions % 2 == 0 ? 1 : -1;
}

std::string Perm4::to_string() const {
  std::string s;
  for (auto v : image_) s.push_back(static_cast<char>('0' + v));
  return s;
}

int pair_index(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int k = 0; k < 6; ++k)
    if (kVertexPairs[k].first == a && kVertexPairs[k].second == b) return k;
  throw std::invalid_argument("pair_index: not a vertex pair");
}

Triangulation::Triangulation(std::vector<std::array<Gluing, 4>> gluings,
                             std::string label)
    : gluings_(std::move(gluings)), label_(std::move(label)) {
  const std::size_t n = gluings_.size();
  for (std::size_t t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = gluings_[t][f];
      if (g.tet >= n)
        throw InvalidTriangulation(
            InvalidTriangulation::Kind::bad_index,
            "face " + face_name(t, f) + " glued to missing tetrahedron " +
                std::to_string(g.tet));
      if (!g.perm.is_bijection())
        throw InvalidTriangulation(
            InvalidTriangulation::Kind::non_bijective,
            "non-bijective permutation at face " + face_name(t, f));
      const int tf = g.perm[f];
      const Gluing& back = gluings_[g.tet][tf];
      if (back.tet != t || back.perm != g.perm.inverse())
        throw InvalidTriangulation(
            InvalidTriangulation::Kind::non_involutive,
            "non-involutive gluing: " + face_name(t, f) + " -> " +
                face_name(g.tet, tf) + " but " + face_name(g.tet, tf) +
                " -> " + face_name(back.tet, back.perm[tf]));
    }
  }
}

Triangulation validate(const PartialGluings& partial) {
  if (partial.faces.size() != partial.n_tets)
    throw InvalidTriangulation(InvalidTriangulation::Kind::bad_index,
                               "face table size does not match tet count");
  std::vector<std::array<Gluing, 4>> full(partial.n_tets);
  for (std::size_t t = 0; t < partial.n_tets; ++t) {
    for (int f = 0; f < 4; ++f) {
      if (!partial.faces[t][f])
        throw InvalidTriangulation(InvalidTriangulation::Kind::unglued_face,
                                   "unglued face " + face_name(t, f));
      full[t][f] = *partial.faces[t][f];
    }
  }
  return Triangulation(std::move(full), partial.label);
}

std::vector<EdgeClass> edge_classes(const Triangulation& tri) {
  const std::size_t n = tri.size();
  UnionFind uf(6 * n);
  for (std::size_t t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      for (int k = 0; k < 6; ++k) {
        auto [a, b] = kVertexPairs[k];
        if (a == f || b == f) continue;
        uf.unite(6 * t + k, 6 * g.tet + pair_index(g.perm[a], g.perm[b]));
      }
    }
  }
  std::map<std::size_t, std::size_t> root_to_id;
  std::vector<EdgeClass> classes;
  for (std::size_t i = 0; i < 6 * n; ++i) {
    const std::size_t r = uf.find(i);
    auto [it, inserted] = root_to_id.emplace(r, classes.size());
    if (inserted) classes.push_back(EdgeClass{classes.size(), {}});
    classes[it->second].members.push_back(
        EdgeRef{i / 6, static_cast<int>(i % 6)});
  }
  return classes;
}

std::vector<VertexLink> vertex_links(const Triangulation& tri) {
  const std::size_t n = tri.size();
  UnionFind corners = vertex_classes(tri);

  // Link vertices are (tet, v, w), w != v: the end of edge vw near v.
  UnionFind ends(16 * n);
  for (std::size_t t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      for (int v = 0; v < 4; ++v) {
        for (int w = 0; w < 4; ++w) {
          if (v == w || v == f || w == f) continue;
          ends.unite(16 * t + 4 * v + w, 16 * g.tet + 4 * g.perm[v] + g.perm[w]);
        }
      }
    }
  }

  std::map<std::size_t, std::size_t> root_to_id;
  std::vector<VertexLink> links;
  for (std::size_t c = 0; c < 4 * n; ++c) {
    auto [it, inserted] = root_to_id.emplace(corners.find(c), links.size());
    if (inserted) links.push_back(VertexLink{links.size(), 0, true, {}});
    links[it->second].corners.emplace_back(c / 4, static_cast<int>(c % 4));
  }

  for (VertexLink& link : links) {
    const long faces = static_cast<long>(link.corners.size());
    // Each side (corner, face) is paired with exactly one side, possibly
    // itself when a face is folded onto itself.
    long sides = 0;
    long self_paired = 0;
    std::set<std::size_t> end_roots;
    for (auto [t, v] : link.corners) {
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        ++sides;
        const Gluing& g = tri.gluing(t, f);
        if (g.tet == t && g.perm[v] == v && g.perm[f] == f) ++self_paired;
      }
      for (int w = 0; w < 4; ++w)
        if (w != v) end_roots.insert(ends.find(16 * t + 4 * v + w));
    }
    const long edges = (sides + self_paired) / 2;
    const long vertices = static_cast<long>(end_roots.size());
    link.euler_characteristic = static_cast<int>(vertices - edges + faces);

    // Orientability: a sign per corner triangle with
    // s(t', perm v) = -sign(perm) * s(t, v) across every side.
    std::map<std::pair<std::size_t, int>, int> sign;
    std::queue<std::pair<std::size_t, int>> todo;
    sign[link.corners.front()] = 1;
    todo.push(link.corners.front());
    while (!todo.empty() && link.orientable) {
      auto [t, v] = todo.front();
      todo.pop();
      const int s = sign.at({t, v});
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        const Gluing& g = tri.gluing(t, f);
        const std::pair<std::size_t, int> next{g.tet, g.perm[v]};
        const int expected = -g.perm.sign() * s;
        auto found = sign.find(next);
        if (found == sign.end()) {
          sign.emplace(next, expected);
          todo.push(next);
        } else if (found->second != expected) {
          link.orientable = false;
        }
      }
    }
  }
  return links;
}

bool is_cusped(const std::vector<VertexLink>& links) {
  return std::all_of(links.begin(), links.end(),
                     [](const VertexLink& l) { return l.is_cusp(); });
}

int euler_characteristic(const Triangulation& tri) {
  const long t = static_cast<long>(tri.size());
  const long f = 2 * t;  // every face glued to exactly one other
  const long e = static_cast<long>(edge_classes(tri).size());
  UnionFind corners = vertex_classes(tri);
  std::set<std::size_t> roots;
  for (std::size_t c = 0; c < 4 * tri.size(); ++c) roots.insert(corners.find(c));
  const long v = static_cast<long>(roots.size());
  return static_cast<int>(v - e + f - t);
}

IncidenceIndex::IncidenceIndex(const Triangulation& tri) {
  const std::size_t n = tri.size();
  entries_.reserve(6 * n);
  for (std::size_t t = 0; t < n; ++t)
    for (int k = 0; k < 6; ++k) entries_.push_back(EdgeRef{t, k});

  triples_.reserve(4 * n);
  for (std::size_t t = 0; t < n; ++t) {
    for (int v = 0; v < 4; ++v) {
      std::array<std::size_t, 3> triple{};
      int slot = 0;
      for (int k = 0; k < 6; ++k) {
        auto [a, b] = kVertexPairs[k];
        if (a == v || b == v) triple[slot++] = 6 * t + k;
      }
      triples_.push_back(triple);
    }
  }

  const auto classes = edge_classes(tri);
  n_edges_ = classes.size();
  edge_of_.assign(6 * n, 0);
  for (const EdgeClass& c : classes)
    for (const EdgeRef& m : c.members) edge_of_[6 * m.tet + m.pair] = c.id;
}

}  // namespace cuspforge
