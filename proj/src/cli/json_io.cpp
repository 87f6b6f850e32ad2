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

#include "json_io.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace cuspforge::cli {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string sha256_hex(const std::string& bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest.data(), &len, EVP_sha256(), nullptr) != 1)
    throw std::runtime_error("sha256 failed");
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

AngleVector parse_angles(const std::string& text, std::size_t expected,
                         const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(source + ": invalid JSON: " + e.what());
  }
  const json* arr = &doc;
  if (doc.is_object()) {
    if (doc.contains("point"))
      arr = &doc["point"];
    else if (doc.contains("results") && doc["results"].is_object() &&
             doc["results"].contains("point"))
      arr = &doc["results"]["point"];
    else
      throw InputError(source + ": expected an array or an object with \"point\"");
  }
  if (!arr->is_array()) throw InputError(source + ": angles must be a JSON array");
  if (arr->size() != expected)
    throw InputError(source + ": expected " + std::to_string(expected) + " angles, got " +
                     std::to_string(arr->size()));
  Eigen::VectorXd v(static_cast<Eigen::Index>(expected));
  for (std::size_t i = 0; i < expected; ++i) {
    const json& e = (*arr)[i];
    if (!e.is_number()) throw InputError(source + ": entry " + std::to_string(i) + " is not a number");
    v(static_cast<Eigen::Index>(i)) = e.get<double>();
  }
  return AngleVector(v);
}

json to_json(const AngleVector& x) {
  json a = json::array();
  for (std::size_t i = 0; i < x.size(); ++i) a.push_back(x[i]);
  return a;
}

json to_json(const FlatSet& s) { return s.indices; }

json to_json(const MaximalityCertificate& c) {
  json m = json::array();
  for (Eigen::Index i = 0; i < c.multipliers.size(); ++i) m.push_back(c.multipliers(i));
  return {
      {"multipliers", m},
      {"active_multipliers", c.active_multipliers},
      {"active_tets", c.active_tets},
      {"gradient_residual", c.gradient_residual},
      {"release_rate", c.release_rate},
      {"releasable_partial", c.releasable_partial},
      {"signs_ok", c.signs_ok},
  };
}

json to_json(const BoundaryLimitReport& r) {
  return {
      {"value", r.value},
      {"smooth_part", r.smooth_part},
      {"entropy_part", r.entropy_part},
      {"log_coefficient", r.log_coefficient},
      {"divergent", r.divergent},
  };
}

json to_json(const DominanceReport& r) {
  json out = {
      {"all_dominated", r.all_dominated},
      {"worst_gap", r.worst_gap},
      {"worst_directional", r.worst_directional},
      {"samples", r.samples},
  };
  out["witness"] = r.witness ? to_json(*r.witness) : json(nullptr);
  return out;
}

}  // namespace cuspforge::cli
