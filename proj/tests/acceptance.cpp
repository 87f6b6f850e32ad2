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


// Acceptance checks. Prints one PASS/FAIL line per criterion; with
// --criterion N only that one runs. Exit status is nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "cuspforge/certify.hpp"
#include "cuspforge/cli.hpp"
#include "cuspforge/geometry.hpp"
#include "cuspforge/lobachevsky.hpp"
#include "cuspforge/optimizer.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace cuspforge;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

LinearSystem fig8_system() { return build_constraints(IncidenceIndex(oracle::load("fig8.tri"))); }

// Random closure points: interior ones from the optimizer's sampler and
// boundary ones from pinning a coordinate to a bound.
std::vector<AngleVector> closure_samples(const LinearSystem& sys, std::size_t n, std::mt19937_64& rng) {
  const RelativeInterior ri = relative_interior(sys);
  std::vector<AngleVector> boundary;
  for (std::size_t i = 0; i < sys.dimension(); ++i)
    for (double v : {sys.lower, sys.upper}) {
      const auto r = relative_interior(with_pins(sys, {{i, v}}));
      if (!r.empty) boundary.push_back(r.point);
    }
  std::vector<AngleVector> out;
  for (std::size_t k = 0; k < n; ++k) {
    if (k % 3 == 2 && !boundary.empty())
      out.push_back(boundary[rng() % boundary.size()]);
    else
      out.push_back(random_closure_point(sys, ri, rng));
  }
  return out;
}

Outcome criterion1() {
  const auto t0 = std::chrono::steady_clock::now();
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.0, kPi);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double th = u(rng);
    worst = std::max(worst, std::abs(lobachevsky(th) - oracle::lobachevsky_quadrature(th)));
  }
  const double l6 = lobachevsky(kPi / 6), l3 = lobachevsky(kPi / 3);
  const double secs = seconds_since(t0);
  const bool ok = worst < 1e-10 && std::abs(l6 - 0.5074708) <= 1e-7 &&
                  std::abs(l3 - 0.3383213) <= 1e-7 && secs < 1.0;
  return {ok, fmt("max |err| %.2e, L(pi/6) %.10f (want 0.5074708), L(pi/3) %.10f (want 0.3383213), %.3f s",
                  worst, l6, l3, secs)};
}

Outcome criterion2() {
  const auto t0 = std::chrono::steady_clock::now();
  const std::string path = oracle::data_path("fig8.tri");
  const char* argv[] = {"cuspforge", "solve", path.c_str()};
  std::ostringstream out, err;
  const int code = cli::run_cli(3, argv, out, err);
  const double secs = seconds_since(t0);
  if (code != 0) return {false, "solve exited with " + std::to_string(code) + ": " + err.str()};
  const auto res = nlohmann::json::parse(out.str())["results"];
  double dist = 0.0;
  for (const auto& x : res["point"]) dist = std::max(dist, std::abs(x.get<double>() - kPi / 3));
  const double vol = res["volume"].get<double>();
  const double expected = 6 * oracle::lobachevsky_quadrature(kPi / 3);
  const bool ok = res["status"] == "converged" && dist < 1e-6 && std::abs(vol - expected) <= 1e-6 &&
                  std::abs(vol - 2.0298832) <= 1e-6 && secs < 1.0;
  return {ok, fmt("dist to pi/3 %.2e, volume %.10f (oracle %.10f), %.3f s", dist, vol, expected, secs)};
}

Outcome criterion3() {
  const LinearSystem sys = fig8_system();
  const auto best = maximize_volume(sys);
  const auto cert = certify(sys, best.point);
  const auto aff = affine_solutions(sys.eq, sys.rhs);
  const AngleVector off(best.point.values() + 0.1 * aff.basis.col(0));
  const auto bad = certify(sys, off);
  const bool ok = cert.gradient_residual < 1e-8 && cert.signs_ok && bad.gradient_residual > 1e-3;
  return {ok, fmt("optimum residual %.2e signs_ok %d, perturbed residual %.3e", cert.gradient_residual,
                  int(cert.signs_ok), bad.gradient_residual)};
}

Outcome criterion4() {
  const auto rep = uniqueness_probe(fig8_system(), 20, 2026);
  bool all = true;
  for (auto s : rep.statuses) all = all && s == OptimizationStatus::converged;
  const bool ok = all && rep.max_spread < 1e-5 && rep.volume_spread < 1e-8;
  return {ok, fmt("20 starts, pairwise spread %.2e, volume spread %.2e", rep.max_spread, rep.volume_spread)};
}

Outcome criterion5() {
  const LinearSystem sys = fig8_system();
  const auto best = maximize_volume(sys);
  const auto rep = dominance_check(sys, best.point, 1000, 5);
  const bool ok = rep.all_dominated && rep.worst_directional <= 1e-10 && rep.samples == 1000;
  return {ok, fmt("%zu samples, worst strict gap %.3e, worst one-sided derivative %.2e", rep.samples,
                  rep.worst_gap, rep.worst_directional)};
}

Outcome criterion6() {
  const LinearSystem sys = fig8_system();
  const RelativeInterior ri = relative_interior(sys);
  std::mt19937_64 rng(6);
  std::uniform_real_distribution<double> ut(0.1, 0.9);
  double worst_rel = 0.0;
  for (int k = 0; k < 100; ++k) {
    const AngleVector p = random_closure_point(sys, ri, rng), q = random_closure_point(sys, ri, rng);
    const double t = ut(rng);
    const double fd = oracle::central_difference([&](double s) { return volume(segment(p, q, s)); }, t, 1e-5);
    const double d = segment_derivative(p, q, t).value;
    worst_rel = std::max(worst_rel, std::abs(d - fd) / std::max(1e-3, std::abs(fd)));
  }
  // Flat-boundary starts: tetrahedron 0 or 1 at (0, 0, π).
  double worst_limit = 0.0;
  int cases = 0;
  for (auto pins : {std::vector<std::pair<std::size_t, double>>{{0, 0.0}, {1, 0.0}},
                    std::vector<std::pair<std::size_t, double>>{{6, 0.0}, {7, 0.0}},
                    std::vector<std::pair<std::size_t, double>>{{1, 0.0}, {2, 0.0}}}) {
    const auto b = relative_interior(with_pins(sys, pins));
    if (b.empty) continue;
    const FlatSet flat = classify_membership(sys, b.point).flat;
    for (int k = 0; k < 5; ++k) {
      const AngleVector q = random_closure_point(sys, ri, rng);
      const auto lim = boundary_derivative_limit(b.point, q, flat);
      const double r = oracle::richardson([&](double h) { return segment_derivative(b.point, q, h).value; }, 1e-2);
      worst_limit = std::max(worst_limit, std::abs(lim.value - r));
      ++cases;
    }
  }
  const bool ok = worst_rel < 1e-6 && cases > 0 && worst_limit < 1e-4;
  return {ok, fmt("100 segments, worst relative error %.2e; %d flat-boundary limits, worst gap %.2e",
                  worst_rel, cases, worst_limit)};
}

Outcome criterion7() {
  const LinearSystem sys = fig8_system();
  std::mt19937_64 rng(7);
  const auto pts = closure_samples(sys, 200, rng);
  double worst = -INFINITY;
  const double h = 1e-3;
  for (int k = 0; k < 100; ++k) {
    const AngleVector& p = pts[2 * k];
    const AngleVector& q = pts[2 * k + 1];
    for (int j = 1; j < 20; ++j) {
      const double t = j / 20.0;
      const double d2 = volume(segment(p, q, t - h)) - 2 * volume(segment(p, q, t)) + volume(segment(p, q, t + h));
      worst = std::max(worst, d2);
    }
  }
  return {worst <= 1e-8, fmt("100 segments x 19 points, largest second difference %.2e", worst)};
}

DecoratedTetrahedron random_tet(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0), s(-2.0, 2.0);
  while (true) {
    double a = u(rng), b = u(rng);
    if (a > b) std::swap(a, b);
    const double x = kPi * a, y = kPi * (b - a), z = kPi - x - y;
    if (std::min({x, y, z}) < 1e-3) continue;
    return set_decoration(tetrahedron_from_angles(x, y, z),
                          {std::exp(s(rng)), std::exp(s(rng)), std::exp(s(rng)), std::exp(s(rng))});
  }
}

Outcome criterion8() {
  std::mt19937_64 rng(8);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) worst = std::max(worst, sine_offset_report(random_tet(rng)).spread);
  return {worst < 1e-9, fmt("1000 tetrahedra, worst spread %.2e", worst)};
}

Outcome criterion9() {
  std::mt19937_64 rng(9);
  double worst = INFINITY;
  for (int k = 0; k < 1000; ++k) {
    const auto tet = random_tet(rng);
    for (int v = 0; v < 4; ++v) worst = std::min(worst, average_length_triangle_check(tet, v).slack);
  }
  const double eps = 1e-4;
  const auto w = average_lengths(tetrahedron_from_angles(eps, eps, kPi - 2 * eps)).W;
  const double ratio = (std::exp(w[0]) + std::exp(w[1])) / std::exp(w[2]);
  const bool ok = worst >= -1e-12 && ratio >= 1.0 && ratio <= 1.001;
  return {ok, fmt("worst slack %.3e over 4000 checks, near-flat ratio %.12f", worst, ratio)};
}

Outcome criterion10() {
  std::mt19937_64 rng(10);
  std::uniform_real_distribution<double> pos(0.0, 10.0), ex(0.0, 5.0), margin(0.0, 2.0);
  std::bernoulli_distribution tight(0.1);
  double worst = -INFINITY;
  for (int k = 0; k < 100000; ++k) {
    const double x = pos(rng), y = pos(rng), a = ex(rng), b = ex(rng);
    // Some draws sit on e^c = e^a + e^b, some with x : y = e^a : e^b too.
    const double c = std::log(std::exp(a) + std::exp(b)) + (tight(rng) ? 0.0 : margin(rng));
    if (k % 50 == 0) {
      const double s = x / (std::exp(a) + std::exp(b));
      worst = std::max(worst, entropy_inequality(s * std::exp(a), s * std::exp(b), a, b,
                                                 std::log(std::exp(a) + std::exp(b))).lhs);
    }
    worst = std::max(worst, entropy_inequality(x, y, a, b, c).lhs);
  }
  const double eq = entropy_inequality(1.0, 1.0, 0.0, 0.0, std::log(2.0)).lhs;
  return {worst <= 1e-12 && std::abs(eq) < 1e-14,
          fmt("1e5 draws, largest lhs %.3e; equality configuration %.2e", worst, eq)};
}

Outcome criterion11() {
  const Triangulation fig8 = oracle::load("fig8.tri");
  const auto edges = edge_classes(fig8);
  const auto links = vertex_links(fig8);
  bool ok = edges.size() == 2 && edges[0].degree() == 6 && edges[1].degree() == 6 && links.size() == 1 &&
            links[0].euler_characteristic == 0 && links[0].orientable;
  const Triangulation one = pachner_23(fig8, {0, 0});
  const auto l1 = vertex_links(one);
  ok = ok && one.size() == 3 && edge_classes(one).size() == 3 && l1.size() == 1 &&
       l1[0].euler_characteristic == 0;
  Triangulation tri = fig8;
  for (int k = 0; k < 5; ++k) tri = pachner_23(tri, {0, 0});
  const auto ip = interior_point(build_constraints(IncidenceIndex(tri)));
  const char* status = ip.status == InteriorStatus::found            ? "found"
                       : ip.status == InteriorStatus::empty_interior ? "empty-interior"
                                                                     : "empty-closure";
  ok = ok && tri.size() == 7 && ip.status != InteriorStatus::empty_closure;
  return {ok, fmt("fig8 edges %zu, after one move %zu tets %zu edges, after five %zu tets, interior %s",
                  edges.size(), one.size(), edge_classes(one).size(), tri.size(), status)};
}

Outcome criterion12() {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(-10.0, 10.0);
  double worst = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const double y = u(rng);
    worst = std::max(worst, std::abs(lobachevsky(-y) + lobachevsky(y)));
    worst = std::max(worst, std::abs(lobachevsky(y + kPi) - lobachevsky(y)));
    for (double x : {0.0, kPi}) worst = std::max(worst, std::abs(lobachevsky(x) + lobachevsky(y) + lobachevsky(kPi - x - y)));
  }
  return {worst < 1e-11, fmt("1000 draws, worst identity error %.2e", worst)};
}

const std::vector<std::pair<const char*, std::function<Outcome()>>> kCriteria{
    {"Lobachevsky accuracy", criterion1},
    {"figure-eight solve", criterion2},
    {"maximality certificate", criterion3},
    {"uniqueness over 20 starts", criterion4},
    {"dominance sampling", criterion5},
    {"derivative consistency", criterion6},
    {"concavity along segments", criterion7},
    {"sine-offset spread", criterion8},
    {"average-length triangle check", criterion9},
    {"entropy inequality", criterion10},
    {"combinatorics and 2-3 moves", criterion11},
    {"Lobachevsky identities", criterion12},
};

}  // namespace

int main(int argc, char** argv) {
  std::size_t only = 0;
  for (int i = 1; i < argc; ++i) {
    if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
      only = std::stoul(argv[++i]);
    } else {
      std::cerr << "usage: acceptance [--criterion N]\n";
      return 2;
    }
  }
  if (only > kCriteria.size()) {
    std::cerr << "no criterion " << only << "\n";
    return 2;
  }
  int failures = 0;
  for (std::size_t k = 0; k < kCriteria.size(); ++k) {
    if (only && only != k + 1) continue;
    Outcome o;
    try {
      o = kCriteria[k].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << k + 1 << " (" << kCriteria[k].first
              << "): " << o.detail << "\n";
    failures += !o.pass;
  }
  return failures ? 1 : 0;
}
