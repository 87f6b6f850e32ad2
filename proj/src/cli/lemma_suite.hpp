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

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace cuspforge::cli {

// Sampling checks of the decorated-tetrahedron identities and the entropy
// inequality.
struct SuiteResult {
  std::string name;
  std::size_t checks = 0;
  /// Worst observed value of the suite's statistic.
  double worst = 0.0;
  double threshold = 0.0;
  bool passed = false;
  /// Extra scalar reported by some suites (near-flat ratio, equality case).
  double extra = 0.0;
};

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "cosine_law", "edge_arc", "sine_offset", "average_length_triangle", "entropy"};
  return names;
}

/// Runs every suite on `samples` random decorated tetrahedra (entropy uses
/// 100 draws per sample). `fault` names a suite whose inputs get perturbed.
std::vector<SuiteResult> run_lemma_suites(std::size_t samples, std::uint64_t seed,
                                          const std::string& fault = {});

}  // namespace cuspforge::cli
