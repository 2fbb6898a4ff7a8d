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

#include <complex>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "ccx/error.hpp"

namespace ccx {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

/// Every numerical threshold used by the library. Passed explicitly to each
/// call; nothing reads a hidden constant.
struct Tolerances {
  double psd_floor = 1e-9;  ///< smallest eigenvalue still counted as >= 0
  double rank_cut = 1e-9;   ///< relative to the largest singular value
  double eq_tol = 1e-8;     ///< entrywise equality of computed identities
  double herm_tol = 1e-10;  ///< max |M - M*| accepted as Hermitian

  /// Throws std::invalid_argument unless all fields are strictly positive.
  void validate() const;
};

/// Eigenpairs sorted by descending eigenvalue. Eigenvalues that agree within
/// eq_tol are ordered by descending lexicographic comparison of their
/// phase-fixed eigenvectors.
struct HermitianEigen {
  RVector values;
  CMatrix vectors;  ///< column k pairs with values(k)
};

double max_abs(const CMatrix& m);
double hermitian_defect(const CMatrix& m);
CMatrix hermitian_part(const CMatrix& m);

/// Multiplies v by a unit phase so its first component with modulus above
/// `threshold` is real positive.
void fix_phase(Eigen::Ref<CVector> v, double threshold);

/// Kronecker product a (x) b.
CMatrix kron(const CMatrix& a, const CMatrix& b);

/// Column-major vectorization and its inverse.
CVector vec(const CMatrix& m);
CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols);

HermitianEigen hermitian_eigen(const CMatrix& m, const Tolerances& tol);

bool psd_check(const CMatrix& m, const Tolerances& tol);

struct HermRoots {
  CMatrix sqrt;
  std::optional<CMatrix> inv_sqrt;
};

HermRoots herm_roots(const CMatrix& m, const Tolerances& tol);

/// Unitary factor U of the polar decomposition M = U (M*M)^{1/2}.
CMatrix polar_unitary(const CMatrix& m, const Tolerances& tol);

/// Orthonormal basis of the right null space, smallest singular value first,
/// each vector phase-fixed.
std::vector<CVector> nullspace_basis(const CMatrix& l, const Tolerances& tol);

/// Same as nullspace_basis, packed as the columns of a matrix.
CMatrix nullspace_matrix(const CMatrix& l, const Tolerances& tol);

/// Orthonormal basis (as columns) of the column space at threshold rank_cut.
CMatrix range_basis(const CMatrix& m, const Tolerances& tol);

int numerical_rank(const CMatrix& m, const Tolerances& tol);

/// Moore-Penrose pseudo-inverse at threshold rank_cut.
CMatrix pseudo_inverse(const CMatrix& m, const Tolerances& tol);

inline CMatrix identity(Eigen::Index n) { return CMatrix::Identity(n, n); }

}  // namespace ccx
