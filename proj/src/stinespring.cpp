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

#include "ccx/stinespring.hpp"

namespace ccx {

namespace {

std::vector<CMatrix> standard_pi_units(const StarAlgebra& alg, const std::vector<int>& mult, int dim) {
  std::vector<CMatrix> units;
  units.reserve(static_cast<size_t>(alg.basis_size()));
  std::vector<int> offsets;
  int off = 0;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    offsets.push_back(off);
    off += alg.block_dim(b) * mult[static_cast<size_t>(b)];
  }
  for (int k = 0; k < alg.basis_size(); ++k) {
    const auto [b, i, j] = alg.unit_index(k);
    const int r = mult[static_cast<size_t>(b)];
    CMatrix p = CMatrix::Zero(dim, dim);
    for (int m = 0; m < r; ++m) p(offsets[static_cast<size_t>(b)] + i * r + m, offsets[static_cast<size_t>(b)] + j * r + m) = 1.0;
    units.push_back(std::move(p));
  }
  return units;
}

CMatrix pushed_spanning_matrix(const StinespringTriple& t, const GroupAction* act, int g) {
  const int d = t.codomain_dim();
  const int n = t.algebra.basis_size();
  CMatrix x(t.dilation_dim, n * d);
  for (int k = 0; k < n; ++k) {
    const CMatrix e = t.algebra.basis_unit(k);
    const CMatrix p = act ? t.pi(apply_action(*act, g, e)) : t.pi_units[static_cast<size_t>(k)];
    x.middleCols(k * d, d) = p * t.V;
  }
  return x;
}

/// Orthonormal basis of the orthogonal complement of the column span.
CMatrix complement_basis(const CMatrix& x, const Tolerances& tol) {
  return nullspace_matrix(x.adjoint(), tol);
}

}  // namespace

CMatrix StinespringTriple::pi(const CMatrix& a) const {
  const CVector c = algebra.coordinates(a);
  CMatrix out = CMatrix::Zero(dilation_dim, dilation_dim);
  for (int k = 0; k < algebra.basis_size(); ++k) {
    if (c(k) != Complex(0.0)) out += c(k) * pi_units[static_cast<size_t>(k)];
  }
  return out;
}

CMatrix spanning_matrix(const StinespringTriple& t) { return pushed_spanning_matrix(t, nullptr, 0); }

StinespringTriple dilation_from_kraus(const StarAlgebra& alg, const std::vector<std::vector<CMatrix>>& kraus,
                                      const Tolerances& tol) {
  if (static_cast<int>(kraus.size()) != alg.num_blocks()) {
    throw Error(ErrorCode::DimensionMismatch, "one Kraus list per algebra block");
  }
  int d = -1;
  StinespringTriple t;
  t.algebra = alg;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    t.multiplicities.push_back(static_cast<int>(kraus[static_cast<size_t>(b)].size()));
    t.dilation_dim += alg.block_dim(b) * t.multiplicities.back();
    for (const CMatrix& k : kraus[static_cast<size_t>(b)]) {
      if (d < 0) d = static_cast<int>(k.cols());
      if (k.rows() != alg.block_dim(b) || k.cols() != d) {
        throw Error(ErrorCode::DimensionMismatch, "Kraus operator shape");
      }
    }
  }
  if (d <= 0) throw Error(ErrorCode::NotUnital, "empty Kraus family");
  // V h = sum_b sum_k sum_i (K_{b,k} h)_i e_i (x) e_k
  t.V = CMatrix::Zero(t.dilation_dim, d);
  int off = 0;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    const int n = alg.block_dim(b);
    const int r = t.multiplicities[static_cast<size_t>(b)];
    for (int k = 0; k < r; ++k) {
      const CMatrix& op = kraus[static_cast<size_t>(b)][static_cast<size_t>(k)];
      for (int i = 0; i < n; ++i) t.V.row(off + i * r + k) = op.row(i);
    }
    off += n * r;
  }
  t.pi_units = standard_pi_units(alg, t.multiplicities, t.dilation_dim);
  t.minimal = verify_minimality(t, tol);
  return t;
}

StinespringTriple minimal_dilation(const CPMap& phi, const Tolerances& tol) {
  const MapValidation v = validate_map(phi, nullptr, tol);
  if (!v.cp) throw Error(ErrorCode::NotCP, "map is not completely positive");
  if (!v.unital) throw Error(ErrorCode::NotUnital, "map is not unital");
  return dilation_from_kraus(phi.domain(), phi.kraus(), tol);
}

bool verify_minimality(const StinespringTriple& t, const Tolerances& tol) {
  if (t.dilation_dim == 0) return true;
  return numerical_rank(spanning_matrix(t), tol) == t.dilation_dim;
}

double reconstruction_error(const StinespringTriple& t, const CPMap& phi) {
  double worst = 0.0;
  for (int k = 0; k < t.algebra.basis_size(); ++k) {
    worst = std::max(worst, max_abs(t.V.adjoint() * t.pi_units[static_cast<size_t>(k)] * t.V - phi.image(k)));
  }
  return worst;
}

CPMap dilated_map(const StinespringTriple& t, const Tolerances& tol) {
  std::vector<CMatrix> images;
  for (const CMatrix& p : t.pi_units) images.push_back(t.V.adjoint() * p * t.V);
  return CPMap::from_unit_images(t.algebra, t.codomain_dim(), images, tol);
}

CMatrix dilation_unitary(const StinespringTriple& t1, const StinespringTriple& t2, const Tolerances& tol) {
  if (!(t1.algebra == t2.algebra) || t1.codomain_dim() != t2.codomain_dim()) {
    throw Error(ErrorCode::NotSameMap, "triples dilate maps with different shapes");
  }
  for (int k = 0; k < t1.algebra.basis_size(); ++k) {
    const size_t u = static_cast<size_t>(k);
    const CMatrix a = t1.V.adjoint() * t1.pi_units[u] * t1.V;
    const CMatrix b = t2.V.adjoint() * t2.pi_units[u] * t2.V;
    if (max_abs(a - b) > tol.eq_tol) {
      throw Error(ErrorCode::NotSameMap, "triples dilate different maps at " + t1.algebra.unit_name(k));
    }
  }
  if (!verify_minimality(t1, tol) || !verify_minimality(t2, tol)) {
    throw Error(ErrorCode::NotMinimal, "dilation_unitary needs minimal triples");
  }
  if (t1.dilation_dim != t2.dilation_dim) {
    throw Error(ErrorCode::NotMinimal, "minimal dilations of one map must have equal dimension");
  }
  const CMatrix x1 = spanning_matrix(t1);
  const CMatrix x2 = spanning_matrix(t2);
  // Both spanning sets have the same Gram matrix, so x2 pinv(x1) is unitary.
  return x2 * pseudo_inverse(x1, tol);
}

CovariantUnitaries covariant_unitaries(const CPMap& phi, const StinespringTriple& t, const GroupAction& act,
                                       const Tolerances& tol) {
  if (!(act.algebra() == t.algebra)) {
    throw Error(ErrorCode::DimensionMismatch, "action and dilation live on different algebras");
  }
  if (invariance_defect(phi, act) > tol.eq_tol) {
    throw Error(ErrorCode::NotInvariant, "map is not invariant under the action");
  }
  const CMatrix x = spanning_matrix(t);
  const CMatrix xpinv = pseudo_inverse(x, tol);
  const CMatrix comp_x = complement_basis(x, tol);
  const double scale = std::max(1.0, max_abs(x.adjoint() * x));
  CovariantUnitaries out;
  for (int g = 0; g < act.group().order(); ++g) {
    const CMatrix y = pushed_spanning_matrix(t, &act, g);
    if (max_abs(y.adjoint() * y - x.adjoint() * x) > tol.eq_tol * scale) {
      throw Error(ErrorCode::NotInvariant, "covariant assignment is not isometric for g" + std::to_string(g));
    }
    CMatrix u = y * xpinv;
    if (comp_x.cols() > 0) {
      const CMatrix comp_y = complement_basis(y, tol);
      if (comp_y.cols() != comp_x.cols()) {
        throw Error(ErrorCode::NotInvariant, "span dimensions differ for g" + std::to_string(g));
      }
      u += comp_y * comp_x.adjoint();
    }
    out.U.push_back(std::move(u));
  }
  return out;
}

CovarianceDefects covariance_defects(const StinespringTriple& t, const CovariantUnitaries& u,
                                     const GroupAction& act) {
  CovarianceDefects d;
  const FiniteGroup& grp = act.group();
  const CMatrix eye = identity(t.dilation_dim);
  for (int g = 0; g < grp.order(); ++g) {
    const CMatrix& ug = u.U[static_cast<size_t>(g)];
    d.fixes_v = std::max(d.fixes_v, max_abs(ug * t.V - t.V));
    d.unitarity = std::max(d.unitarity, max_abs(ug.adjoint() * ug - eye));
    for (int k = 0; k < t.algebra.basis_size(); ++k) {
      const CMatrix lhs = ug * t.pi_units[static_cast<size_t>(k)] * ug.adjoint();
      const CMatrix rhs = t.pi(apply_action(act, g, t.algebra.basis_unit(k)));
      d.intertwines = std::max(d.intertwines, max_abs(lhs - rhs));
    }
    for (int h = 0; h < grp.order(); ++h) {
      const CMatrix& uh = u.U[static_cast<size_t>(h)];
      d.homomorphism = std::max(d.homomorphism, max_abs(ug * uh - u.U[static_cast<size_t>(grp.multiply(g, h))]));
    }
  }
  return d;
}

StinespringTriple pad_triple(const StinespringTriple& t, int extra) {
  StinespringTriple p = t;
  p.dilation_dim = t.dilation_dim + extra;
  p.multiplicities.clear();
  p.V = CMatrix::Zero(p.dilation_dim, t.V.cols());
  p.V.topRows(t.dilation_dim) = t.V;
  for (CMatrix& u : p.pi_units) {
    CMatrix big = CMatrix::Zero(p.dilation_dim, p.dilation_dim);
    big.topLeftCorner(t.dilation_dim, t.dilation_dim) = u;
    u = std::move(big);
  }
  p.minimal = false;
  return p;
}

}  // namespace ccx
