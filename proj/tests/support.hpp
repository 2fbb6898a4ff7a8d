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

#include <cmath>
#include <string>
#include <vector>

#include "ccx/km.hpp"
#include "ccx/random.hpp"

namespace ccx::testing {

inline const Complex kI{0.0, 1.0};

inline CMatrix mat(std::initializer_list<std::initializer_list<Complex>> rows) {
  CMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.begin()->size()));
  Eigen::Index i = 0;
  for (const auto& r : rows) {
    Eigen::Index j = 0;
    for (const Complex& z : r) m(i, j++) = z;
    ++i;
  }
  return m;
}

inline CMatrix diag(std::initializer_list<Complex> v) {
  CMatrix m = CMatrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
  Eigen::Index i = 0;
  for (const Complex& z : v) m(i, i) = z, ++i;
  return m;
}

inline CMatrix unit_matrix(int n, int i, int j) {
  CMatrix m = CMatrix::Zero(n, n);
  m(i, j) = 1.0;
  return m;
}

inline GroupAction z2_diag_action() {
  return GroupAction::inner(FiniteGroup::cyclic(2), StarAlgebra({2}), {identity(2), diag({1.0, -1.0})});
}

/// a -> diag(a11, a22) on M_2.
inline CPMap dephasing() {
  return CPMap::from_kraus(StarAlgebra({2}), 2, {{unit_matrix(2, 0, 0), unit_matrix(2, 1, 1)}});
}

/// tau(a) = a^T on M_2 written as a coordinate map.
inline GroupAction transpose_action() {
  const StarAlgebra alg({2});
  CMatrix t = CMatrix::Zero(4, 4);
  for (int k = 0; k < 4; ++k) {
    const auto u = alg.unit_index(k);
    t(alg.unit_position(0, u.col, u.row), k) = 1.0;
  }
  return GroupAction::general(FiniteGroup::cyclic(2), alg, {identity(4), t});
}

struct Config {
  std::string name;
  GroupAction action;
  int d;
  int rank;
};

/// Permutation matrix with P e_x = e_{perm[x]}.
inline CMatrix permutation(const std::vector<int>& perm) {
  const int n = static_cast<int>(perm.size());
  CMatrix p = CMatrix::Zero(n, n);
  for (int x = 0; x < n; ++x) p(perm[static_cast<size_t>(x)], x) = 1.0;
  return p;
}

inline std::vector<Config> configs() {
  std::vector<Config> out;
  const double tau = 2.0 * std::acos(-1.0);
  out.push_back({"M2/Z2 diag", z2_diag_action(), 2, 2});
  out.push_back({"M2/trivial", GroupAction::trivial(StarAlgebra({2})), 2, 2});
  {
    const Complex w = std::polar(1.0, tau / 3.0);
    const CMatrix z = diag({1.0, w, w * w});
    out.push_back({"M3/Z3 clock", GroupAction::inner(FiniteGroup::cyclic(3), StarAlgebra({3}), {identity(3), z, z * z}), 3, 2});
  }
  {
    const CMatrix x = mat({{0.0, 1.0}, {1.0, 0.0}});
    const CMatrix z = diag({1.0, -1.0});
    const FiniteGroup v4 = FiniteGroup::product(FiniteGroup::cyclic(2), FiniteGroup::cyclic(2));
    out.push_back({"M2/V4 Pauli", GroupAction::inner(v4, StarAlgebra({2}), {identity(2), z, x, x * z}), 2, 2});
  }
  {
    const CMatrix c = permutation({1, 2, 0});
    out.push_back({"C3/Z3 cyclic", GroupAction::inner(FiniteGroup::cyclic(3), StarAlgebra({1, 1, 1}), {identity(3), c, c * c}), 2, 2});
  }
  {
    CMatrix s = CMatrix::Zero(4, 4);
    s.topRightCorner(2, 2) = identity(2);
    s.bottomLeftCorner(2, 2) = identity(2);
    out.push_back({"M2+M2/Z2 swap", GroupAction::inner(FiniteGroup::cyclic(2), StarAlgebra({2, 2}), {identity(4), s}), 3, 2});
  }
  out.push_back({"M2+C/Z2 diag", GroupAction::inner(FiniteGroup::cyclic(2), StarAlgebra({2, 1}), {identity(3), diag({1.0, -1.0, 1.0})}), 2, 2});
  {
    // W_s = P_{s^-1} turns left multiplication into tau_g tau_h = tau_gh.
    const std::vector<std::vector<int>> perms{{0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}};
    std::vector<CMatrix> ws;
    for (const auto& p : perms) ws.push_back(permutation(p).adjoint());
    out.push_back({"C3/S3", GroupAction::inner(FiniteGroup::symmetric3(), StarAlgebra({1, 1, 1}), ws), 2, 2});
  }
  {
    const CMatrix swap = mat({{0.0, 1.0}, {1.0, 0.0}});
    out.push_back({"C2/Z2 general swap", GroupAction::general(FiniteGroup::cyclic(2), StarAlgebra({1, 1}), {identity(2), swap}), 2, 2});
  }
  return out;
}

inline CPMap random_invariant(Rng& rng, const Config& c) {
  return twirl(random_ucp(rng, c.action.algebra(), c.d, c.rank), c.action, Tolerances{});
}

}  // namespace ccx::testing
