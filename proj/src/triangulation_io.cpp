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

// Plain-text gluing format:
//
//   tri 1
//   tets <N>
//   glue <t> <f> <t'> <p0><p1><p2><p3>     (4N lines)
//
// `#` starts a comment. A comment of the form `# name: <label>` sets the
// triangulation label.

#include <charconv>
#include <sstream>

#include "cuspforge/triangulation.hpp"

namespace cuspforge {

namespace {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

std::vector<Token> tokenize(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    if (i >= line.size()) break;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r')
      ++i;
    out.push_back({line.substr(start, i - start), start + 1});
  }
  return out;
}

std::size_t parse_count(const Token& tok, std::size_t line, const char* what) {
  std::size_t value = 0;
  auto [ptr, ec] =
      std::from_chars(tok.text.data(), tok.text.data() + tok.text.size(), value);
  if (ec != std::errc{} || ptr != tok.text.data() + tok.text.size())
    throw ParseError(line, tok.column,
                     std::string("expected ") + what + ", got '" +
                         std::string(tok.text) + "'");
  return value;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
    s.remove_suffix(1);
  return s;
}

}  // namespace

Triangulation parse_triangulation(std::string_view text) {
  PartialGluings partial;
  bool have_version = false;
  bool have_count = false;
  std::size_t line_no = 0;
  std::size_t last_line = 0;

  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = text.find('\n', pos);
    std::string_view line = text.substr(
        pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
    pos = eol == std::string_view::npos ? text.size() + 1 : eol + 1;
    ++line_no;

    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      std::string_view comment = trim(line.substr(hash + 1));
      if (comment.starts_with("name:"))
        partial.label = std::string(trim(comment.substr(5)));
      line = line.substr(0, hash);
    }
    const auto tokens = tokenize(line);
    if (tokens.empty()) continue;
    last_line = line_no;

    if (!have_version) {
      if (tokens.size() != 2 || tokens[0].text != "tri" || tokens[1].text != "1")
        throw ParseError(line_no, tokens[0].column,
                         "expected format version line 'tri 1'");
      have_version = true;
      continue;
    }
    if (!have_count) {
      if (tokens[0].text != "tets")
        throw ParseError(line_no, tokens[0].column, "expected 'tets <N>'");
      if (tokens.size() != 2)
        throw ParseError(line_no, tokens[0].column, "expected 'tets <N>'");
      partial.n_tets = parse_count(tokens[1], line_no, "tetrahedron count");
      if (partial.n_tets == 0)
        throw ParseError(line_no, tokens[1].column, "tetrahedron count must be positive");
      partial.faces.assign(partial.n_tets, {});
      have_count = true;
      continue;
    }
    if (tokens[0].text != "glue")
      throw ParseError(line_no, tokens[0].column,
                       "unknown directive '" + std::string(tokens[0].text) + "'");
    if (tokens.size() != 5)
      throw ParseError(line_no, tokens[0].column,
                       "expected 'glue <t> <f> <t'> <perm>'");
    const std::size_t t = parse_count(tokens[1], line_no, "tetrahedron index");
    const std::size_t f = parse_count(tokens[2], line_no, "face index");
    const std::size_t t2 = parse_count(tokens[3], line_no, "tetrahedron index");
    if (t >= partial.n_tets)
      throw ParseError(line_no, tokens[1].column, "tetrahedron index out of range");
    if (f > 3) throw ParseError(line_no, tokens[2].column, "face index must be 0..3");
    if (t2 >= partial.n_tets)
      throw ParseError(line_no, tokens[3].column, "tetrahedron index out of range");
    const std::string_view p = tokens[4].text;
    if (p.size() != 4)
      throw ParseError(line_no, tokens[4].column, "permutation must be four digits");
    std::array<int, 4> img{};
    for (int k = 0; k < 4; ++k) {
      if (p[k] < '0' || p[k] > '3')
        throw ParseError(line_no, tokens[4].column + k,
                         "permutation digits must be 0..3");
      img[k] = p[k] - '0';
    }
    const Perm4 perm(img[0], img[1], img[2], img[3]);
    if (!perm.is_bijection())
      throw InvalidTriangulation(
          InvalidTriangulation::Kind::non_bijective,
          "non-bijective permutation " + std::string(p) + " at line " +
              std::to_string(line_no));
    if (partial.faces[t][f])
      throw ParseError(line_no, tokens[0].column,
                       "duplicate gluing for face (" + std::to_string(t) + "," +
                           std::to_string(f) + ")");
    partial.faces[t][f] = Gluing{t2, perm};
  }

  if (!have_version) throw ParseError(last_line + 1, 1, "missing 'tri 1' header");
  if (!have_count) throw ParseError(last_line + 1, 1, "missing 'tets <N>' line");
  return validate(partial);
}

std::string write_triangulation(const Triangulation& tri) {
  std::ostringstream out;
  out << "tri 1\n";
  if (!tri.label().empty()) out << "# name: " << tri.label() << "\n";
  out << "tets " << tri.size() << "\n";
  for (std::size_t t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      out << "glue " << t << " " << f << " " << g.tet << " " << g.perm.to_string()
          << "\n";
    }
  return out.str();
}

}  // namespace cuspforge
