// Copyright 2026 The ccx Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "ccx/stinespring.hpp"

namespace ccx {

using Json = nlohmann::json;

inline constexpr const char* kSchema = "ccx/1";

/// A parsed problem file. Every matrix is shape-checked while parsing.
struct Problem {
  StarAlgebra algebra;
  int hilbert_dim = 0;
  GroupAction action;
  bool has_action = false;
  std::vector<std::string> map_names;  ///< sorted by name
  std::map<std::string, CPMap> maps;
  std::map<std::string, CMatrix> operators;
  Tolerances tol;
  std::uint64_t seed = 0;
  Json raw;

  const CPMap& map(const std::string& name) const;
};

Problem parse_problem(const std::string& text);
Problem load_problem(const std::string& path);

/// Row-major rows of [re, im] pairs.
Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& where);
CMatrix matrix_from_json(const Json& j, const std::string& where, Eigen::Index rows, Eigen::Index cols);

Json map_to_json(const CPMap& phi);
/// Accepts {"kind": "choi"|"kraus", "data": ...}, optionally with its own
/// "block_dims" and "hilbert_dim" overriding the defaults.
CPMap map_from_json(const Json& j, const StarAlgebra& alg, int d, const Tolerances& tol, const std::string& where);

Json triple_to_json(const StinespringTriple& t);
StinespringTriple triple_from_json(const Json& j, const StarAlgebra& alg, const Tolerances& tol);

/// Sorted keys, doubles at 17 significant digits, non-finite numbers as null.
std::string dump_json(const Json& j);

}  // namespace ccx
