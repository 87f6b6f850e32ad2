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

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace cuspforge {

/// A permutation of the four vertices {0,1,2,3} of a tetrahedron.
class Perm4 {
 public:
  constexpr Perm4() : image_{0, 1, 2, 3} {}
  constexpr Perm4(int a, int b, int c, int d)
      : image_{static_cast<std::uint8_t>(a), static_cast<std::uint8_t>(b),
               static_cast<std::uint8_t>(c), static_cast<std::uint8_t>(d)} {}

  constexpr int operator[](int v) const { return image_[v]; }

  bool is_bijection() const;
  Perm4 inverse() const;
  /// Composition: (this ∘ other)(v) = this[other[v]].
  Perm4 operator*(const Perm4& other) const;
  /// +1 for even permutations, -1 for odd ones.
  int sign() const;
  std::string to_string() const;

  friend bool operator==(const Perm4&, const Perm4&) = default;

 private:
  std::array<std::uint8_t, 4> image_;
};

/// Face f of a tetrahedron is the face opposite vertex f.
struct FaceRef {
  std::size_t tet = 0;
  int face = 0;
  friend bool operator==(const FaceRef&, const FaceRef&) = default;
};

/// Where a face goes: the target tetrahedron and the vertex map from the
/// source tetrahedron to the target. The target face is perm[source face].
struct Gluing {
  std::size_t tet = 0;
  Perm4 perm;
  friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// Thrown for malformed gluing text. Carries a 1-based line and column.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

/// Thrown when gluing data does not describe a closed pseudo-manifold.
class InvalidTriangulation : public std::runtime_error {
 public:
  enum class Kind { unglued_face, non_involutive, non_bijective, bad_index };
  InvalidTriangulation(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Index 0..5 of an unordered vertex pair, ordered 01,02,03,12,13,23.
/// The opposite pair of k is 5 - k.
constexpr std::array<std::pair<int, int>, 6> kVertexPairs{
    {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
int pair_index(int a, int b);
constexpr int opposite_pair(int k) { return 5 - k; }

/// Ordering convention string carried by serialized angle vectors.
inline constexpr std::string_view kOrderingConvention =
    "tet-lex;edges=01,02,03,12,13,23";

/// An ideal triangulation given by face-pairing data. Immutable once built;
/// the constructor checks that every face is glued, permutations are
/// bijections and the gluings are mutually inverse.
class Triangulation {
 public:
  explicit Triangulation(std::vector<std::array<Gluing, 4>> gluings,
                         std::string label = {});

  std::size_t size() const { return gluings_.size(); }
  const Gluing& gluing(std::size_t tet, int face) const {
    return gluings_[tet][face];
  }
  const Gluing& gluing(FaceRef f) const { return gluings_[f.tet][f.face]; }
  FaceRef target(FaceRef f) const {
    const Gluing& g = gluing(f);
    return {g.tet, g.perm[f.face]};
  }
  const std::string& label() const { return label_; }

  friend bool operator==(const Triangulation&, const Triangulation&) = default;

 private:
  std::vector<std::array<Gluing, 4>> gluings_;
  std::string label_;
};

/// Builder input that may still have unglued faces; used by the parser and
/// by tests to exercise validation.
struct PartialGluings {
  std::size_t n_tets = 0;
  std::vector<std::array<std::optional<Gluing>, 4>> faces;
  std::string label;
};
Triangulation validate(const PartialGluings& partial);

Triangulation parse_triangulation(std::string_view text);
/// Canonical text form; parse_triangulation(write_triangulation(t)) == t.
std::string write_triangulation(const Triangulation& tri);

/// (tet, vertex pair) with pair in 0..5.
struct EdgeRef {
  std::size_t tet = 0;
  int pair = 0;
  friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
};

struct EdgeClass {
  std::size_t id = 0;
  std::vector<EdgeRef> members;
  std::size_t degree() const { return members.size(); }
};

struct VertexLink {
  std::size_t id = 0;
  int euler_characteristic = 0;
  bool orientable = true;
  /// Corners (tet, vertex) whose triangles make up the link.
  std::vector<std::pair<std::size_t, int>> corners;
  bool is_cusp() const { return euler_characteristic == 0; }
};

/// Edge classes ordered by their smallest member; members sorted.
std::vector<EdgeClass> edge_classes(const Triangulation& tri);
/// One link per vertex class of the closed pseudo-manifold.
std::vector<VertexLink> vertex_links(const Triangulation& tri);
bool is_cusped(const std::vector<VertexLink>& links);
/// V - E + F - T of the closed pseudo-manifold.
int euler_characteristic(const Triangulation& tri);

/// The set I of (edge, tetrahedron) incidences together with the vertex
/// triples and the opposite-edge pairing. Entry i corresponds to
/// (tet = i / 6, pair = i % 6).
class IncidenceIndex {
 public:
  explicit IncidenceIndex(const Triangulation& tri);

  std::size_t size() const { return entries_.size(); }
  std::size_t n_tets() const { return entries_.size() / 6; }
  std::size_t n_edges() const { return n_edges_; }
  const std::vector<EdgeRef>& entries() const { return entries_; }
  /// Four triples per tetrahedron, ordered by tet then by common vertex.
  const std::vector<std::array<std::size_t, 3>>& triples() const {
    return triples_;
  }
  std::size_t opposite(std::size_t i) const {
    return 6 * (i / 6) + opposite_pair(static_cast<int>(i % 6));
  }
  std::size_t edge_of(std::size_t i) const { return edge_of_[i]; }
  static std::size_t tet_of(std::size_t i) { return i / 6; }

  friend bool operator==(const IncidenceIndex&, const IncidenceIndex&) =
      default;

 private:
  std::vector<EdgeRef> entries_;
  std::vector<std::array<std::size_t, 3>> triples_;
  std::vector<std::size_t> edge_of_;
  std::size_t n_edges_ = 0;
};

/// Replaces the two distinct tetrahedra sharing `face` by three tetrahedra
/// around a new edge. The first tetrahedron keeps its index, the second
/// keeps its index and the third is appended.
Triangulation pachner_23(const Triangulation& tri, FaceRef face);

/// Thrown by pachner_23 for faces it cannot flip.
class UnsupportedMove : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cuspforge
