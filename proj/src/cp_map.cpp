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

#include "ccx/cp_map.hpp"

#include <cmath>

namespace ccx {

namespace {

void require_same_shape(const CPMap& a, const CPMap& b) {
  if (!(a.domain() == b.domain()) || a.codomain_dim() != b.codomain_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "maps have different domain or codomain");
  }
}

}  // namespace

CPMap CPMap::from_choi(StarAlgebra domain, int d, std::vector<CMatrix> choi_blocks, const Tolerances& tol) {
  if (d <= 0) throw Error(ErrorCode::DimensionMismatch, "codomain dimension must be positive");
  if (static_cast<int>(choi_blocks.size()) != domain.num_blocks()) {
    throw Error(ErrorCode::DimensionMismatch, "one Choi block per algebra block");
  }
  for (int b = 0; b < domain.num_blocks(); ++b) {
    const CMatrix& c = choi_blocks[static_cast<size_t>(b)];
    const int n = domain.block_dim(b) * d;
    if (c.rows() != n || c.cols() != n) throw Error(ErrorCode::DimensionMismatch, "Choi block size");
    if (!c.allFinite()) throw Error(ErrorCode::NonHermitian, "Choi block has non-finite entries");
  }
  CPMap m;
  m.domain_ = std::move(domain);
  m.d_ = d;
  m.choi_ = std::move(choi_blocks);
  m.build(tol);
  return m;
}

CPMap CPMap::from_kraus(StarAlgebra domain, int d, const std::vector<std::vector<CMatrix>>& kraus,
                        const Tolerances& tol) {
  if (static_cast<int>(kraus.size()) != domain.num_blocks()) {
    throw Error(ErrorCode::DimensionMismatch, "one Kraus list per algebra block");
  }
  std::vector<CMatrix> choi;
  for (int b = 0; b < domain.num_blocks(); ++b) {
    const int n = domain.block_dim(b);
    CMatrix c = CMatrix::Zero(n * d, n * d);
    for (const CMatrix& k : kraus[static_cast<size_t>(b)]) {
      if (k.rows() != n || k.cols() != d) throw Error(ErrorCode::DimensionMismatch, "Kraus operator shape");
      // C[(i,r),(j,s)] = conj(K[i,r]) K[j,s]
      CVector v(n * d);
      for (int i = 0; i < n; ++i) {
        for (int r = 0; r < d; ++r) v(i * d + r) = std::conj(k(i, r));
      }
      c += v * v.adjoint();
    }
    choi.push_back(std::move(c));
  }
  return from_choi(std::move(domain), d, std::move(choi), tol);
}

CPMap CPMap::from_unit_images(StarAlgebra domain, int d, const std::vector<CMatrix>& images,
                              const Tolerances& tol) {
  if (static_cast<int>(images.size()) != domain.basis_size()) {
    throw Error(ErrorCode::DimensionMismatch, "one image per matrix unit");
  }
  std::vector<CMatrix> choi;
  for (int b = 0; b < domain.num_blocks(); ++b) {
    const int n = domain.block_dim(b);
    CMatrix c(n * d, n * d);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const CMatrix& img = images[static_cast<size_t>(domain.unit_position(b, i, j))];
        if (img.rows() != d || img.cols() != d) throw Error(ErrorCode::DimensionMismatch, "image shape");
        c.block(i * d, j * d, d, d) = img;
      }
    }
    choi.push_back(std::move(c));
  }
  return from_choi(std::move(domain), d, std::move(choi), tol);
}

void CPMap::build(const Tolerances& tol) {
  images_.assign(static_cast<size_t>(domain_.basis_size()), CMatrix());
  kraus_.assign(static_cast<size_t>(domain_.num_blocks()), {});
  for (int b = 0; b < domain_.num_blocks(); ++b) {
    const int n = domain_.block_dim(b);
    CMatrix& c = choi_[static_cast<size_t>(b)];
    const double scale = std::max(1.0, max_abs(c));
    if (hermitian_defect(c) > tol.eq_tol * scale) {
      throw Error(ErrorCode::NonHermitian, "Choi block is not Hermitian");
    }
    c = hermitian_part(c);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        images_[static_cast<size_t>(domain_.unit_position(b, i, j))] = c.block(i * d_, j * d_, d_, d_);
      }
    }
    const HermitianEigen eig = hermitian_eigen(c, tol);
    const double top = eig.values.size() ? eig.values(0) : 0.0;
    for (Eigen::Index k = 0; k < eig.values.size(); ++k) {
      const double lambda = eig.values(k);
      if (!(lambda > tol.rank_cut * top) || !(lambda > 0.0)) break;
      CMatrix op(n, d_);
      const double root = std::sqrt(lambda);
      for (int i = 0; i < n; ++i) {
        for (int r = 0; r < d_; ++r) op(i, r) = root * std::conj(eig.vectors(i * d_ + r, k));
      }
      kraus_[static_cast<size_t>(b)].push_back(std::move(op));
    }
  }
}

std::vector<int> CPMap::kraus_ranks() const {
  std::vector<int> out;
  for (const auto& ks : kraus_) out.push_back(static_cast<int>(ks.size()));
  return out;
}

CMatrix CPMap::apply(const CMatrix& a) const {
  const CVector c = domain_.coordinates(a);
  CMatrix out = CMatrix::Zero(d_, d_);
  for (int k = 0; k < domain_.basis_size(); ++k) {
    if (c(k) != Complex(0.0)) out += c(k) * images_[static_cast<size_t>(k)];
  }
  return out;
}

CMatrix CPMap::apply_kraus(const CMatrix& a) const {
  CMatrix out = CMatrix::Zero(d_, d_);
  for (int b = 0; b < domain_.num_blocks(); ++b) {
    const CMatrix ab = domain_.block(a, b);
    for (const CMatrix& k : kraus_[static_cast<size_t>(b)]) out += k.adjoint() * ab * k;
  }
  return out;
}

CMatrix apply(const CPMap& phi, const CMatrix& a) { return phi.apply(a); }

double invariance_defect(const CPMap& phi, const GroupAction& act) {
  if (!(phi.domain() == act.algebra())) {
    throw Error(ErrorCode::DimensionMismatch, "map domain differs from the action's algebra");
  }
  double worst = 0.0;
  const StarAlgebra& alg = phi.domain();
  for (int g = 0; g < act.group().order(); ++g) {
    for (int k = 0; k < alg.basis_size(); ++k) {
      const CMatrix moved = phi.apply(apply_action(act, g, alg.basis_unit(k)));
      worst = std::max(worst, max_abs(moved - phi.image(k)));
    }
  }
  return worst;
}

MapValidation validate_map(const CPMap& phi, const GroupAction* act, const Tolerances& tol) {
  MapValidation v;
  v.cp = true;
  for (const CMatrix& c : phi.choi_blocks()) v.cp = v.cp && psd_check(c, tol);
  const CMatrix one = phi.apply(phi.domain().unit());
  v.unital = max_abs(one - identity(phi.codomain_dim())) <= tol.eq_tol;
  if (act != nullptr) v.invariant = invariance_defect(phi, *act) <= tol.eq_tol;
  return v;
}

CPMap twirl(const CPMap& phi, const GroupAction& act, const Tolerances& tol) {
  if (!(phi.domain() == act.algebra())) {
    throw Error(ErrorCode::DimensionMismatch, "map domain differs from the action's algebra");
  }
  const ValidationReport r = validate_action(act, tol);
  if (!r.valid) throw Error(ErrorCode::InvalidAction, r.failures.front());
  const StarAlgebra& alg = phi.domain();
  std::vector<CMatrix> images;
  for (int k = 0; k < alg.basis_size(); ++k) {
    images.push_back(phi.apply(conditional_expectation(act, alg.basis_unit(k))));
  }
  return CPMap::from_unit_images(alg, phi.codomain_dim(), images, tol);
}

bool is_proper(const CCombination& c, const Tolerances& tol) {
  for (const CTerm& t : c.terms) {
    Eigen::JacobiSVD<CMatrix> svd(t.coeff);
    const RVector& s = svd.singularValues();
    if (s.size() == 0 || !(s(s.size() - 1) > tol.rank_cut * s(0))) return false;
  }
  return true;
}

CPMap cstar_combine(const CCombination& c, const Tolerances& tol) {
  if (c.terms.empty()) throw Error(ErrorCode::NotNormalized, "empty combination");
  const CPMap& first = c.terms.front().map;
  const int d = first.codomain_dim();
  CMatrix norm = CMatrix::Zero(d, d);
  for (const CTerm& t : c.terms) {
    require_same_shape(first, t.map);
    if (t.coeff.rows() != d || t.coeff.cols() != d) {
      throw Error(ErrorCode::DimensionMismatch, "coefficient must be d x d");
    }
    norm += t.coeff.adjoint() * t.coeff;
  }
  if (max_abs(norm - identity(d)) > tol.eq_tol) {
    throw Error(ErrorCode::NotNormalized, "sum of T_i* T_i differs from the identity");
  }
  std::vector<CMatrix> images(static_cast<size_t>(first.domain().basis_size()), CMatrix::Zero(d, d));
  for (const CTerm& t : c.terms) {
    for (size_t k = 0; k < images.size(); ++k) {
      images[k] += t.coeff.adjoint() * t.map.image(static_cast<int>(k)) * t.coeff;
    }
  }
  return CPMap::from_unit_images(first.domain(), d, images, tol);
}

bool cp_leq(const CPMap& psi, const CPMap& phi, const Tolerances& tol) {
  require_same_shape(psi, phi);
  for (size_t b = 0; b < phi.choi_blocks().size(); ++b) {
    if (!psd_check(phi.choi_blocks()[b] - psi.choi_blocks()[b], tol)) return false;
  }
  return true;
}

CPMap linear_combination(double alpha, const CPMap& a, double beta, const CPMap& b, const Tolerances& tol) {
  require_same_shape(a, b);
  std::vector<CMatrix> choi;
  for (size_t k = 0; k < a.choi_blocks().size(); ++k) {
    choi.push_back(alpha * a.choi_blocks()[k] + beta * b.choi_blocks()[k]);
  }
  return CPMap::from_choi(a.domain(), a.codomain_dim(), std::move(choi), tol);
}

CPMap compress(const CPMap& phi, const CMatrix& x, const Tolerances& tol) {
  if (x.rows() != phi.codomain_dim()) throw Error(ErrorCode::DimensionMismatch, "compress: shape");
  std::vector<CMatrix> images;
  for (const CMatrix& img : phi.images()) images.push_back(x.adjoint() * img * x);
  return CPMap::from_unit_images(phi.domain(), static_cast<int>(x.cols()), images, tol);
}

double choi_distance(const CPMap& a, const CPMap& b) {
  require_same_shape(a, b);
  double worst = 0.0;
  for (size_t k = 0; k < a.choi_blocks().size(); ++k) {
    worst = std::max(worst, max_abs(a.choi_blocks()[k] - b.choi_blocks()[k]));
  }
  return worst;
}

CPMap identity_map(const StarAlgebra& alg) {
  const int n = alg.ambient_dim();
  return conjugation_map(alg, CMatrix::Identity(n, n));
}

CPMap conjugation_map(const StarAlgebra& alg, const CMatrix& w) {
  if (w.rows() != alg.ambient_dim()) throw Error(ErrorCode::DimensionMismatch, "conjugation_map: shape");
  std::vector<CMatrix> images;
  for (int k = 0; k < alg.basis_size(); ++k) images.push_back(w.adjoint() * alg.basis_unit(k) * w);
  return CPMap::from_unit_images(alg, static_cast<int>(w.cols()), images);
}

CPMap state_inflation(const StarAlgebra& alg, const CMatrix& rho, int d) {
  if (rho.rows() != alg.ambient_dim() || rho.cols() != alg.ambient_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "state_inflation: density shape");
  }
  std::vector<CMatrix> images;
  for (int k = 0; k < alg.basis_size(); ++k) {
    images.push_back((rho * alg.basis_unit(k)).trace() * identity(d));
  }
  return CPMap::from_unit_images(alg, d, images);
}

}  // namespace ccx
