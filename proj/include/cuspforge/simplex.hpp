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

#include <Eigen/Dense>

namespace cuspforge::lp {

enum class Status { optimal, infeasible, unbounded };

struct Result {
  Status status = Status::infeasible;
  Eigen::VectorXd x;
  double objective = 0.0;
};

/// Dense two-phase simplex with Bland's rule for
///   minimize c'x  subject to  A x = b,  x >= 0.
/// Redundant equality rows are detected and dropped after phase one.
/// Intended for the small systems arising from angle structures.
Result minimize(const Eigen::MatrixXd& A, const Eigen::VectorXd& b,
                const Eigen::VectorXd& c, double eps = 1e-10);

}  // namespace cuspforge::lp
