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
#include <random>

#include "ccx/cp_map.hpp"

namespace ccx {

/// Seeded generator with platform-independent draws (std distributions are
/// implementation-defined, so they are avoided).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform on [0, 1).
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  double normal();
  Complex complex_normal();
  int index(int n) { return static_cast<int>(engine_() % static_cast<std::uint64_t>(n)); }
  std::uint64_t next() { return engine_(); }

  CMatrix gaussian(Eigen::Index rows, Eigen::Index cols);
  /// Random Hermitian with Gaussian entries.
  CMatrix hermitian(Eigen::Index n);

 private:
  std::mt19937_64 engine_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

/// Haar-distributed unitary (QR of a Ginibre matrix with phase correction).
CMatrix random_unitary(Rng& rng, int n);
/// rows x cols isometry, rows >= cols.
CMatrix random_isometry(Rng& rng, int rows, int cols);

/// Random UCP map A -> M_d whose block b has Kraus rank <= rank.
CPMap random_ucp(Rng& rng, const StarAlgebra& alg, int d, int rank, const Tolerances& tol = {});

/// Random operator coefficients T_1..T_m (d x d) with sum T_i* T_i = I.
std::vector<CMatrix> random_coefficients(Rng& rng, int m, int d);

}  // namespace ccx
