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

#include "ccx/star_algebra.hpp"

#include <cmath>
#include <stdexcept>

namespace ccx {

StarAlgebra::StarAlgebra(std::vector<int> block_dims) : block_dims_(std::move(block_dims)) {
  if (block_dims_.empty()) {
    throw Error(ErrorCode::DimensionMismatch, "StarAlgebra: no blocks");
  }
  for (int n : block_dims_) {
    if (n <= 0) throw Error(ErrorCode::DimensionMismatch, "StarAlgebra: block size must be positive");
    offsets_.push_back(ambient_dim_);
    unit_offsets_.push_back(basis_size_);
    ambient_dim_ += n;
    basis_size_ += n * n;
  }
}

CMatrix StarAlgebra::basis_unit(int k) const {
  const UnitIndex u = unit_index(k);
  CMatrix e = CMatrix::Zero(ambient_dim_, ambient_dim_);
  e(block_offset(u.block) + u.row, block_offset(u.block) + u.col) = 1.0;
  return e;
}

std::vector<CMatrix> StarAlgebra::basis_units() const {
  std::vector<CMatrix> out;
  out.reserve(static_cast<size_t>(basis_size_));
  for (int k = 0; k < basis_size_; ++k) out.push_back(basis_unit(k));
  return out;
}

StarAlgebra::UnitIndex StarAlgebra::unit_index(int k) const {
  if (k < 0 || k >= basis_size_) throw Error(ErrorCode::BadIndex, "unit_index out of range");
  int b = num_blocks() - 1;
  while (unit_offsets_[static_cast<size_t>(b)] > k) --b;
  const int local = k - unit_offsets_[static_cast<size_t>(b)];
  const int n = block_dims_[static_cast<size_t>(b)];
  return {b, local / n, local % n};
}

int StarAlgebra::unit_position(int block, int row, int col) const {
  const int n = block_dim(block);
  if (row < 0 || row >= n || col < 0 || col >= n) {
    throw Error(ErrorCode::BadIndex, "unit_position out of range");
  }
  return unit_offsets_[static_cast<size_t>(block)] + row * n + col;
}

std::string StarAlgebra::unit_name(int k) const {
  const UnitIndex u = unit_index(k);
  std::string name = "E" + std::to_string(u.row + 1) + std::to_string(u.col + 1);
  if (num_blocks() > 1) name += "[b" + std::to_string(u.block + 1) + "]";
  return name;
}

CMatrix StarAlgebra::block(const CMatrix& a, int b) const {
  if (a.rows() != ambient_dim_ || a.cols() != ambient_dim_) {
    throw Error(ErrorCode::DimensionMismatch, "element not in the ambient space");
  }
  const int o = block_offset(b);
  const int n = block_dim(b);
  return a.block(o, o, n, n);
}

CVector StarAlgebra::coordinates(const CMatrix& a) const {
  if (a.rows() != ambient_dim_ || a.cols() != ambient_dim_) {
    throw Error(ErrorCode::DimensionMismatch, "element not in the ambient space");
  }
  CVector c(basis_size_);
  for (int b = 0; b < num_blocks(); ++b) {
    const int o = block_offset(b);
    const int n = block_dim(b);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) c(unit_position(b, i, j)) = a(o + i, o + j);
    }
  }
  return c;
}

CMatrix StarAlgebra::from_coordinates(const CVector& c) const {
  if (c.size() != basis_size_) throw Error(ErrorCode::DimensionMismatch, "coordinate size");
  CMatrix a = CMatrix::Zero(ambient_dim_, ambient_dim_);
  for (int b = 0; b < num_blocks(); ++b) {
    const int o = block_offset(b);
    const int n = block_dim(b);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(o + i, o + j) = c(unit_position(b, i, j));
    }
  }
  return a;
}

double StarAlgebra::off_block_norm(const CMatrix& a) const {
  CMatrix rest = a;
  for (int b = 0; b < num_blocks(); ++b) {
    const int o = block_offset(b);
    const int n = block_dim(b);
    rest.block(o, o, n, n).setZero();
  }
  return max_abs(rest);
}

namespace {

// Real coordinates of a Hermitian matrix for the Frobenius inner product.
RVector real_coords(const CMatrix& h) {
  const Eigen::Index n2 = h.size();
  RVector out(2 * n2);
  for (Eigen::Index k = 0; k < n2; ++k) {
    out(k) = h.data()[k].real();
    out(n2 + k) = h.data()[k].imag();
  }
  return out;
}

CMatrix from_real_coords(const RVector& r, int dim) {
  const Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;
  CMatrix h(dim, dim);
  for (Eigen::Index k = 0; k < n2; ++k) h.data()[k] = Complex(r(k), r(n2 + k));
  return hermitian_part(h);
}

void fix_sign(Eigen::Ref<RVector> v, double threshold) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    if (std::abs(v(k)) > threshold) {
      if (v(k) < 0) v = -v;
      return;
    }
  }
}

// Orthonormal columns spanning the same space as the columns of m.
CMatrix orthonormal_columns(const CMatrix& m, const Tolerances& tol) { return range_basis(m, tol); }

CMatrix stack_vec(const std::vector<CMatrix>& mats) {
  if (mats.empty()) return CMatrix(0, 0);
  CMatrix out(mats.front().size(), static_cast<Eigen::Index>(mats.size()));
  for (size_t k = 0; k < mats.size(); ++k) out.col(static_cast<Eigen::Index>(k)) = vec(mats[k]);
  return out;
}

}  // namespace

std::vector<CMatrix> hermitian_orthonormal_basis(const std::vector<CMatrix>& spanning, int dim,
                                                 const Tolerances& tol) {
  std::vector<CMatrix> out;
  if (spanning.empty()) return out;
  const Eigen::Index n2 = static_cast<Eigen::Index>(dim) * dim;

  RMatrix columns(2 * n2, 2 * static_cast<Eigen::Index>(spanning.size()));
  for (size_t k = 0; k < spanning.size(); ++k) {
    const CMatrix& x = spanning[k];
    columns.col(2 * static_cast<Eigen::Index>(k)) = real_coords(hermitian_part(x));
    columns.col(2 * static_cast<Eigen::Index>(k) + 1) =
        real_coords((x - x.adjoint()) / Complex(0.0, 2.0));
  }
  const double scale = columns.size() ? columns.cwiseAbs().maxCoeff() : 0.0;
  if (scale == 0.0) return out;

  // Lead with the normalized identity when it lies in the span.
  const RVector id = real_coords(CMatrix::Identity(dim, dim)) / std::sqrt(static_cast<double>(dim));
  {
    Eigen::JacobiSVD<RMatrix> svd(columns, Eigen::ComputeThinU);
    const RVector& s = svd.singularValues();
    Eigen::Index rank = 0;
    while (rank < s.size() && s(rank) > tol.rank_cut * s(0)) ++rank;
    const RMatrix u = svd.matrixU().leftCols(rank);
    const RVector resid = id - u * (u.transpose() * id);
    if (resid.norm() <= std::sqrt(tol.eq_tol)) {
      out.push_back(CMatrix::Identity(dim, dim) / std::sqrt(static_cast<double>(dim)));
      columns -= id * (id.transpose() * columns);
    }
  }

  Eigen::JacobiSVD<RMatrix> svd(columns, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  const double cut = tol.rank_cut * std::max(s.size() ? s(0) : 0.0, scale);
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (!(s(k) > cut)) break;
    RVector u = svd.matrixU().col(k);
    fix_sign(u, tol.herm_tol);
    out.push_back(from_real_coords(u, dim));
  }
  return out;
}

double span_residual(const std::vector<CMatrix>& basis, const CMatrix& m, const Tolerances& tol) {
  if (basis.empty()) return m.norm();
  const CMatrix q = orthonormal_columns(stack_vec(basis), tol);
  const CVector x = vec(m);
  return (x - q * (q.adjoint() * x)).norm();
}

std::vector<CMatrix> commutant_within(const std::vector<CMatrix>& ansatz,
                                      const std::vector<CMatrix>& generators,
                                      const Tolerances& tol) {
  if (ansatz.empty()) return {};
  const int dim = static_cast<int>(ansatz.front().rows());
  std::vector<CMatrix> gens;
  for (const CMatrix& g : generators) {
    if (g.rows() != dim || g.cols() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "commutant: generator has wrong size");
    }
    gens.push_back(g);
    if (hermitian_defect(g) > tol.herm_tol * std::max(1.0, max_abs(g))) gens.push_back(g.adjoint());
  }

  // Current solution space, as coefficient combinations of the ansatz.
  const Eigen::Index m = static_cast<Eigen::Index>(ansatz.size());
  const CMatrix stacked = stack_vec(ansatz);
  CMatrix coeffs = CMatrix::Identity(m, m);
  for (const CMatrix& g : gens) {
    if (coeffs.cols() == 0) break;
    const CMatrix current = stacked * coeffs;
    CMatrix system(current.rows(), current.cols());
    for (Eigen::Index c = 0; c < current.cols(); ++c) {
      const CMatrix x = unvec(current.col(c), dim, dim);
      system.col(c) = vec(x * g - g * x);
    }
    if (max_abs(system) <= tol.eq_tol * std::max(1.0, max_abs(g))) continue;
    coeffs = coeffs * nullspace_matrix(system, tol);
  }

  const CMatrix solution = stacked * coeffs;
  std::vector<CMatrix> spanning;
  for (Eigen::Index c = 0; c < solution.cols(); ++c) spanning.push_back(unvec(solution.col(c), dim, dim));
  return hermitian_orthonormal_basis(spanning, dim, tol);
}

std::vector<CMatrix> commutant(const std::vector<CMatrix>& generators, int dim,
                               const Tolerances& tol) {
  // Ansatz: the full matrix space through its standard basis, i.e. the plain
  // Kronecker null-space computation.
  std::vector<CMatrix> full;
  full.reserve(static_cast<size_t>(dim) * dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) {
      CMatrix e = CMatrix::Zero(dim, dim);
      e(i, j) = 1.0;
      full.push_back(e);
    }
  }
  return commutant_within(full, generators, tol);
}

bool verify_subalgebra(const SubAlgebraBasis& s, const Tolerances& tol) {
  if (s.basis.empty()) return false;
  const int n = s.parent.ambient_dim();
  for (const CMatrix& b : s.basis) {
    if (b.rows() != n || b.cols() != n) return false;
  }
  const CMatrix q = orthonormal_columns(stack_vec(s.basis), tol);
  auto in_span = [&](const CMatrix& m) {
    const CVector x = vec(m);
    return (x - q * (q.adjoint() * x)).cwiseAbs().maxCoeff() <= tol.eq_tol * std::max(1.0, max_abs(m));
  };
  for (const CMatrix& a : s.basis) {
    if (!in_span(a.adjoint())) return false;
    for (const CMatrix& b : s.basis) {
      if (!in_span(a * b)) return false;
    }
  }
  return true;
}

}  // namespace ccx
