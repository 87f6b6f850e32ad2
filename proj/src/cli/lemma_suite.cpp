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

#include "lemma_suite.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "cuspforge/geometry.hpp"
#include "cuspforge/lobachevsky.hpp"

namespace cuspforge::cli {

namespace {

constexpr double kMinAngle = 1e-3;
constexpr double kFaultShift = 1e-3;

DecoratedTetrahedron random_tetrahedron(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  std::uniform_real_distribution<double> log_scale(-2.0, 2.0);
  while (true) {
    double u = unit(rng), v = unit(rng);
    if (u > v) std::swap(u, v);
    const double a = kPi * u, b = kPi * (v - u);
    const double c = kPi - a - b;
    if (std::min({a, b, c}) < kMinAngle) continue;
    std::array<double, 4> dec{};
    for (double& d : dec) d = std::exp(log_scale(rng));
    return set_decoration(tetrahedron_from_angles(a, b, c), dec);
  }
}

}  // namespace

std::vector<SuiteResult> run_lemma_suites(std::size_t samples, std::uint64_t seed,
                                          const std::string& fault) {
  std::vector<SuiteResult> out;
  for (const auto& name : suite_names()) out.push_back({name});
  SuiteResult& cosine = out[0];
  SuiteResult& edge = out[1];
  SuiteResult& sine = out[2];
  SuiteResult& triangle = out[3];
  SuiteResult& entropy = out[4];
  cosine.threshold = edge.threshold = 1e-10;
  sine.threshold = 1e-9;
  triangle.threshold = -1e-12;
  entropy.threshold = 1e-12;
  triangle.worst = std::numeric_limits<double>::infinity();
  entropy.worst = -std::numeric_limits<double>::infinity();

  auto injected = [&](const SuiteResult& r) { return fault == r.name ? kFaultShift : 0.0; };

  std::mt19937_64 rng(seed);
  for (std::size_t s = 0; s < samples; ++s) {
    const DecoratedTetrahedron tet = random_tetrahedron(rng);
    cosine.worst = std::max(cosine.worst, cosine_law_residual(tet) + injected(cosine));
    edge.worst = std::max(edge.worst, edge_arc_residual(tet) + injected(edge));
    ++cosine.checks;
    ++edge.checks;

    AverageLengths w = average_lengths(tet);
    if (fault == sine.name) w.W[0] += kFaultShift;
    sine.worst = std::max(sine.worst, sine_offset_report(tet, w).spread);
    ++sine.checks;

    AverageLengths wt = average_lengths(tet);
    if (fault == triangle.name) wt.W[0] = wt.W[5] = std::max({wt.W[0], wt.W[1], wt.W[2]}) + 5.0;
    for (int v = 0; v < 4; ++v) {
      triangle.worst = std::min(triangle.worst, average_length_triangle_check(wt, v).slack);
      ++triangle.checks;
    }
  }
  // Near-flat degeneration: the inequality tends to equality.
  {
    const double eps = 1e-4;
    const DecoratedTetrahedron tet = tetrahedron_from_angles(eps, eps, kPi - 2 * eps);
    const AverageLengths w = average_lengths(tet);
    triangle.extra = (std::exp(w.W[0]) + std::exp(w.W[1])) / std::exp(w.W[2]);
  }
  cosine.passed = cosine.worst < cosine.threshold;
  edge.passed = edge.worst < edge.threshold;
  sine.passed = sine.worst < sine.threshold;
  triangle.passed = samples == 0 || triangle.worst >= triangle.threshold;
  triangle.passed = triangle.passed && triangle.extra >= 1.0 && triangle.extra <= 1.001;
  if (samples == 0) triangle.worst = 0.0;

  std::uniform_real_distribution<double> pos(0.0, 10.0);
  std::uniform_real_distribution<double> expo(0.0, 5.0);
  std::uniform_real_distribution<double> margin(0.0, 2.0);
  std::bernoulli_distribution zero(0.05);
  for (std::size_t s = 0; s < 100 * samples; ++s) {
    const double x = zero(rng) ? 0.0 : pos(rng);
    const double y = zero(rng) ? 0.0 : pos(rng);
    const double a = expo(rng), b = expo(rng);
    const double c = std::log(std::exp(a) + std::exp(b)) + (zero(rng) ? 0.0 : margin(rng));
    const double lhs = entropy_inequality(x, y, a, b, c).lhs + injected(entropy);
    entropy.worst = std::max(entropy.worst, lhs);
    ++entropy.checks;
  }
  entropy.extra = entropy_inequality(1.0, 1.0, 0.0, 0.0, std::log(2.0)).lhs;
  if (samples == 0) entropy.worst = 0.0;
  entropy.passed = entropy.worst <= entropy.threshold && std::abs(entropy.extra) < 1e-14;
  return out;
}

}  // namespace cuspforge::cli
