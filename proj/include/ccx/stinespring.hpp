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

#include <vector>

#include "ccx/cp_map.hpp"

namespace ccx {

/// (pi, V, K) with K = C^D. The standard form has
///   pi(a) = (+)_b a_b (x) I_{r_b},   K = (+)_b C^{n_b} (x) C^{r_b};
/// pi_units holds pi(E_k) for every matrix unit so that non-standard
/// representations (for example a zero-padded K) can be described too.
struct StinespringTriple {
  StarAlgebra algebra;
  int dilation_dim = 0;
  std::vector<int> multiplicities;  ///< r_b; empty for a non-standard pi
  CMatrix V;                        ///< D x d
  std::vector<CMatrix> pi_units;
  bool minimal = false;

  CMatrix pi(const CMatrix& a) const;
  int codomain_dim() const { return static_cast<int>(V.cols()); }
};

struct CovariantUnitaries {
  std::vector<CMatrix> U;  ///< indexed by group element
};

/// Standard-form triple from an explicit Kraus family (kraus[b][k] is n_b x d).
StinespringTriple dilation_from_kraus(const StarAlgebra& alg, const std::vector<std::vector<CMatrix>>& kraus,
                                      const Tolerances& tol);

StinespringTriple minimal_dilation(const CPMap& phi, const Tolerances& tol);

bool verify_minimality(const StinespringTriple& t, const Tolerances& tol);

/// max over matrix units of |V* pi(E) V - phi(E)|.
double reconstruction_error(const StinespringTriple& t, const CPMap& phi);

/// The map a -> V* pi(a) V.
CPMap dilated_map(const StinespringTriple& t, const Tolerances& tol = {});

/// U with U V1 = V2 and U pi1(a) U* = pi2(a).
CMatrix dilation_unitary(const StinespringTriple& t1, const StinespringTriple& t2, const Tolerances& tol);

CovariantUnitaries covariant_unitaries(const CPMap& phi, const StinespringTriple& t, const GroupAction& act,
                                       const Tolerances& tol);

struct CovarianceDefects {
  double fixes_v = 0.0;       ///< max_g |U_g V - V|
  double intertwines = 0.0;   ///< max_{g,k} |U_g pi(E_k) U_g* - pi(tau_g E_k)|
  double homomorphism = 0.0;  ///< max_{g,h} |U_g U_h - U_gh|
  double unitarity = 0.0;     ///< max_g |U_g* U_g - I|
};

CovarianceDefects covariance_defects(const StinespringTriple& t, const CovariantUnitaries& u,
                                     const GroupAction& act);

/// Same triple with K enlarged by `extra` dimensions on which pi and V vanish.
StinespringTriple pad_triple(const StinespringTriple& t, int extra);

/// Columns pi(E_k) V e_h for all units k and h.
CMatrix spanning_matrix(const StinespringTriple& t);

}  // namespace ccx
