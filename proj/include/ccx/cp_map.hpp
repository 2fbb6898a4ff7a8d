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

#include <optional>
#include <vector>

#include "ccx/group_action.hpp"

namespace ccx {

/// A linear map A -> B(C^d) stored through its Choi blocks
///   C_b = sum_ij E_ij (x) phi(E_ij^(b)),  index (i, r) -> i * d + r.
/// Unit images and a Kraus family are computed eagerly at construction; the
/// Kraus family covers the PSD part of each Choi block and is exact for CP maps:
///   phi(a) = sum_{b,j} K_{b,j}* a_b K_{b,j},  K_{b,j}: C^d -> C^{n_b}.
class CPMap {
 public:
  CPMap() = default;

  static CPMap from_choi(StarAlgebra domain, int d, std::vector<CMatrix> choi_blocks,
                         const Tolerances& tol = {});
  /// kraus[b] lists the n_b x d operators of block b.
  static CPMap from_kraus(StarAlgebra domain, int d, const std::vector<std::vector<CMatrix>>& kraus,
                          const Tolerances& tol = {});
  /// images[k] = phi(E_k) for every matrix unit, in basis_units order.
  static CPMap from_unit_images(StarAlgebra domain, int d, const std::vector<CMatrix>& images,
                                const Tolerances& tol = {});

  const StarAlgebra& domain() const { return domain_; }
  int codomain_dim() const { return d_; }
  const std::vector<CMatrix>& choi_blocks() const { return choi_; }
  const std::vector<std::vector<CMatrix>>& kraus() const { return kraus_; }
  /// phi(E_k).
  const CMatrix& image(int k) const { return images_.at(static_cast<size_t>(k)); }
  const std::vector<CMatrix>& images() const { return images_; }
  std::vector<int> kraus_ranks() const;

  CMatrix apply(const CMatrix& a) const;
  /// sum over Kraus operators; agrees with apply for CP maps.
  CMatrix apply_kraus(const CMatrix& a) const;

 private:
  void build(const Tolerances& tol);

  StarAlgebra domain_;
  int d_ = 0;
  std::vector<CMatrix> choi_;
  std::vector<CMatrix> images_;
  std::vector<std::vector<CMatrix>> kraus_;
};

struct MapValidation {
  bool cp = false;
  bool unital = false;
  std::optional<bool> invariant;  ///< empty when no action was supplied
};

MapValidation validate_map(const CPMap& phi, const GroupAction* act, const Tolerances& tol);

/// max over g and matrix units of |phi(tau_g(E)) - phi(E)|.
double invariance_defect(const CPMap& phi, const GroupAction& act);

CMatrix apply(const CPMap& phi, const CMatrix& a);

/// phi~(a) = phi(E(a)), the group average of phi.
CPMap twirl(const CPMap& phi, const GroupAction& act, const Tolerances& tol);

struct CTerm {
  CMatrix coeff;  ///< T_i, d x d
  CPMap map;
};

/// sum_i T_i* phi_i(.) T_i with sum_i T_i* T_i = I.
struct CCombination {
  std::vector<CTerm> terms;
};

bool is_proper(const CCombination& c, const Tolerances& tol);
CPMap cstar_combine(const CCombination& c, const Tolerances& tol);

/// psi <= phi in the CP order: every Choi block of phi - psi is PSD.
bool cp_leq(const CPMap& psi, const CPMap& phi, const Tolerances& tol);

/// Entrywise combinations used throughout.
CPMap linear_combination(double alpha, const CPMap& a, double beta, const CPMap& b,
                         const Tolerances& tol = {});
/// a -> X* phi(a) X.
CPMap compress(const CPMap& phi, const CMatrix& x, const Tolerances& tol = {});
/// max entrywise distance between all Choi blocks.
double choi_distance(const CPMap& a, const CPMap& b);

// Stock maps.
CPMap identity_map(const StarAlgebra& alg);
/// a -> W* a W on the ambient space (W is N x d).
CPMap conjugation_map(const StarAlgebra& alg, const CMatrix& w);
/// a -> tr(rho a) I_d, rho block-diagonal N x N density.
CPMap state_inflation(const StarAlgebra& alg, const CMatrix& rho, int d);

}  // namespace ccx
