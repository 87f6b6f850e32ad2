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

#include <stdexcept>
#include <string>

#include "json.hpp"

#include "cuspforge/certify.hpp"
#include "cuspforge/lobachevsky.hpp"
#include "cuspforge/optimizer.hpp"
#include "cuspforge/polytope.hpp"

namespace cuspforge::cli {

using nlohmann::json;

/// Malformed user input (bad JSON, wrong length, unreadable file).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path);
/// Lowercase hex SHA-256 of the bytes of a file.
std::string sha256_hex(const std::string& bytes);

/// Accepts a bare array, {"point": [...]}, or a run report carrying
/// results.point. Throws InputError unless it has `expected` entries.
AngleVector parse_angles(const std::string& text, std::size_t expected,
                         const std::string& source);

json to_json(const AngleVector& x);
json to_json(const FlatSet& s);
json to_json(const MaximalityCertificate& c);
json to_json(const BoundaryLimitReport& r);
json to_json(const DominanceReport& r);

}  // namespace cuspforge::cli
