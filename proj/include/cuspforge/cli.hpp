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

#include <ostream>

namespace cuspforge::cli {

enum ExitCode : int {
  kOk = 0,
  kRuntimeError = 1,
  kUsageError = 2,  // also parse errors in input files
  kEmptyClosure = 3,
  kIterationCap = 4,
  kLemmaFailure = 5,
};

/// Entry point of the `cuspforge` tool. Reports go to `out`, diagnostics to
/// `err`; the return value is the process exit code.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cuspforge::cli
