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
#include <vector>

#include "ccx/stinespring.hpp"

namespace ccx {

/// Everything needed to move between the commutant interval and [0, phi].
struct RNContext {
  CPMap phi;
  GroupAction action;
  StinespringTriple triple;
  CovariantUnitaries covariant;
  /// Frobenius-orthonormal Hermitian basis of (pi(A) u U(G))'.
  std::vector<CMatrix> commutant;
};

struct RNOperator {
  CMatrix T;
  bool phi_invertible = false;
};

RNContext build_context(const CPMap& phi, const GroupAction& act, const Tolerances& tol);

/// Commutant of pi(A) u U(G), computed inside the analytic basis of pi(A)'.
std::vector<CMatrix> dilation_commutant(const StinespringTriple& t, const CovariantUnitaries& u,
                                        const Tolerances& tol);

/// V*TV invertible at rank_cut.
bool is_phi_invertible(const RNContext& ctx, const CMatrix& t, const Tolerances& tol);
RNOperator make_operator(const RNContext& ctx, const CMatrix& t, const Tolerances& tol);

/// max over commutant generators of |[T, X]|.
double commutator_defect(const RNContext& ctx, const CMatrix& t);

/// a -> V* pi(a) T V, without any check on T.
CPMap rn_map(const RNContext& ctx, const CMatrix& t);

struct ForwardResult {
  CPMap map;
  bool cp = false;
  bool invariant = false;
  bool dominated = false;
};

ForwardResult rn_forward(const RNContext& ctx, const RNOperator& t, const Tolerances& tol);

struct InverseResult {
  RNOperator op;
  double residual = 0.0;
};

InverseResult rn_inverse(const RNContext& ctx, const CPMap& psi, const Tolerances& tol);

enum class SampleMode { BasisSweep, Random };

/// Sweep: (I +/- S/(2|S|))/2 per basis element S. Random: `count` seeded
/// convex combinations of the sweep operators.
std::vector<RNOperator> interval_sample(const RNContext& ctx, std::uint64_t seed, SampleMode mode, int count,
                                        const Tolerances& tol);

}  // namespace ccx
