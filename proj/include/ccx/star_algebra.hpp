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

#include <string>
#include <vector>

#include "ccx/linalg.hpp"

namespace ccx {

/// A finite-dimensional C*-algebra in block normal form: the direct sum
/// M_{n_1} + ... + M_{n_k}, embedded block-diagonally in M_N, N = sum n_b.
class StarAlgebra {
 public:
  struct UnitIndex {
    int block;
    int row;
    int col;
  };

  StarAlgebra() = default;
  explicit StarAlgebra(std::vector<int> block_dims);

  const std::vector<int>& block_dims() const { return block_dims_; }
  int num_blocks() const { return static_cast<int>(block_dims_.size()); }
  int block_dim(int b) const { return block_dims_.at(static_cast<size_t>(b)); }
  int block_offset(int b) const { return offsets_.at(static_cast<size_t>(b)); }
  int ambient_dim() const { return ambient_dim_; }
  /// Number of matrix units, sum n_b^2.
  int basis_size() const { return basis_size_; }

  CMatrix unit() const { return CMatrix::Identity(ambient_dim_, ambient_dim_); }

  /// Matrix units E_ij^(b), block-major then row-major.
  std::vector<CMatrix> basis_units() const;
  CMatrix basis_unit(int k) const;
  UnitIndex unit_index(int k) const;
  int unit_position(int block, int row, int col) const;
  /// "E12" for single-block algebras, "E12[b2]" otherwise (1-based).
  std::string unit_name(int k) const;

  CMatrix block(const CMatrix& a, int b) const;
  /// Coordinates of a in the matrix-unit basis (off-block entries ignored).
  CVector coordinates(const CMatrix& a) const;
  CMatrix from_coordinates(const CVector& c) const;
  /// max |entry| of a outside the diagonal blocks.
  double off_block_norm(const CMatrix& a) const;

  bool operator==(const StarAlgebra& other) const { return block_dims_ == other.block_dims_; }

 private:
  std::vector<int> block_dims_;
  std::vector<int> offsets_;
  std::vector<int> unit_offsets_;
  int ambient_dim_ = 0;
  int basis_size_ = 0;
};

/// A linear span of ambient matrices, tagged with the algebra it lives in.
struct SubAlgebraBasis {
  StarAlgebra parent;
  std::vector<CMatrix> basis;
};

/// Basis of the commutant {X : XM = MX, XM* = M*X for every generator M},
/// obtained as the null space of the Kronecker-vectorized commutator system.
/// Returned Hermitian, Frobenius-orthonormal, led by I/sqrt(dim).
std::vector<CMatrix> commutant(const std::vector<CMatrix>& generators, int dim,
                               const Tolerances& tol);

/// Commutant of `generators` restricted to span(ansatz). The ansatz must span a
/// *-closed subspace containing the answer.
std::vector<CMatrix> commutant_within(const std::vector<CMatrix>& ansatz,
                                      const std::vector<CMatrix>& generators,
                                      const Tolerances& tol);

/// Hermitian Frobenius-orthonormal basis for the span of a *-closed set of
/// matrices. When the identity lies in the span it comes first, as I/sqrt(n).
std::vector<CMatrix> hermitian_orthonormal_basis(const std::vector<CMatrix>& spanning, int dim,
                                                 const Tolerances& tol);

/// Distance from m to span(basis) in Frobenius norm.
double span_residual(const std::vector<CMatrix>& basis, const CMatrix& m, const Tolerances& tol);

bool verify_subalgebra(const SubAlgebraBasis& s, const Tolerances& tol);

}  // namespace ccx
