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
#include <string>
#include <vector>

#include "ccx/extremality.hpp"

namespace ccx {

/// A^G together with an explicit isomorphism iota: (+)_c M_{k_c} -> A^G.
struct FixedPointContext {
  GroupAction action;
  SubAlgebraBasis fixed;            ///< Hermitian orthonormal basis of A^G
  StarAlgebra block_form;           ///< the k_c
  std::vector<int> multiplicities;  ///< rank of a minimal projection of summand c
  std::vector<CMatrix> units;       ///< iota(E_k), in block_form basis order
  std::vector<CMatrix> central_projections;
  CMatrix W;                        ///< unitary with columns f_{i1}^{(c)} u_l

  /// iota^{-1} of an element of A^G, as a block_form matrix.
  CMatrix pull_back(const CMatrix& x) const;
};

FixedPointContext fixed_point_algebra(const GroupAction& act, const Tolerances& tol);

/// psi = phi o iota, a UCP map on block_form.
CPMap restrict_E(const CPMap& phi, const FixedPointContext& ctx, const Tolerances& tol);

/// phi~(a) = psi(iota^{-1}(E(a))).
CPMap extend_Einv(const CPMap& psi, const FixedPointContext& ctx, const Tolerances& tol);

struct HullReport {
  int trials = 0;
  int members = 0;
  std::map<std::string, int> verdicts;
  double held_out_distance = 0.0;  ///< best Choi distance to a held-out invariant map
  bool hilbert_finite = true;
  bool algebra_commutative = false;
  bool algebra_factor = false;
  std::string note;
};

/// Random C*-convex combinations of certified extreme invariant maps.
HullReport hull_experiment(const std::vector<CPMap>& extreme, const GroupAction& act, int trials,
                           std::uint64_t seed, const Budget& budget, const Tolerances& tol);

}  // namespace ccx
