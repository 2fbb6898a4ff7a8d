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

#include "ccx/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ccx {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonHermitian: return "NonHermitian";
    case ErrorCode::NotPSD: return "NotPSD";
    case ErrorCode::Singular: return "Singular";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::BadIndex: return "BadIndex";
    case ErrorCode::InvalidAction: return "InvalidAction";
    case ErrorCode::NotNormalized: return "NotNormalized";
    case ErrorCode::NotCP: return "NotCP";
    case ErrorCode::NotUnital: return "NotUnital";
    case ErrorCode::NotSameMap: return "NotSameMap";
    case ErrorCode::NotMinimal: return "NotMinimal";
    case ErrorCode::NotInvariant: return "NotInvariant";
    case ErrorCode::NotInCommutant: return "NotInCommutant";
    case ErrorCode::OutOfInterval: return "OutOfInterval";
    case ErrorCode::NotDominated: return "NotDominated";
    case ErrorCode::ResidualTooLarge: return "ResidualTooLarge";
    case ErrorCode::NotPhiInvertible: return "NotPhiInvertible";
    case ErrorCode::UncertifiedInput: return "UncertifiedInput";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

void Tolerances::validate() const {
  if (!(psd_floor > 0 && rank_cut > 0 && eq_tol > 0 && herm_tol > 0)) {
    throw std::invalid_argument("tolerances must be strictly positive");
  }
}

double max_abs(const CMatrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

double hermitian_defect(const CMatrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "hermitian_defect: matrix not square");
  }
  return max_abs(m - m.adjoint());
}

CMatrix hermitian_part(const CMatrix& m) { return 0.5 * (m + m.adjoint()); }

void fix_phase(Eigen::Ref<CVector> v, double threshold) {
  for (Eigen::Index k = 0; k < v.size(); ++k) {
    const double r = std::abs(v(k));
    if (r > threshold) {
      const Complex phase = std::conj(v(k)) / r;
      v *= phase;
      v(k) = Complex(std::abs(v(k)), 0.0);
      return;
    }
  }
}

CMatrix kron(const CMatrix& a, const CMatrix& b) {
  CMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

CVector vec(const CMatrix& m) {
  return Eigen::Map<const CVector>(m.data(), m.size());
}

CMatrix unvec(const CVector& v, Eigen::Index rows, Eigen::Index cols) {
  if (v.size() != rows * cols) {
    throw Error(ErrorCode::DimensionMismatch, "unvec: size mismatch");
  }
  return Eigen::Map<const CMatrix>(v.data(), rows, cols);
}

namespace {

void require_hermitian(const CMatrix& m, const Tolerances& tol, const char* who) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, std::string(who) + ": matrix not square");
  }
  if (!m.allFinite()) {
    throw Error(ErrorCode::NonHermitian, std::string(who) + ": non-finite entries");
  }
  const double scale = std::max(1.0, max_abs(m));
  if (hermitian_defect(m) > tol.herm_tol * scale) {
    throw Error(ErrorCode::NonHermitian, who);
  }
}

// Descending lexicographic comparison of (re, im) components.
bool lex_greater(const CVector& a, const CVector& b, double eps) {
  for (Eigen::Index k = 0; k < a.size(); ++k) {
    const double dr = a(k).real() - b(k).real();
    if (std::abs(dr) > eps) return dr > 0;
    const double di = a(k).imag() - b(k).imag();
    if (std::abs(di) > eps) return di > 0;
  }
  return false;
}

// Right singular vectors of l (all n of them) and singular values padded with
// zeros to length n. Tall systems are reduced through a QR factor first.
// JacobiSVD throughout: Eigen 3.4 BDCSVD mishandles exactly repeated singular
// values, which commutator systems produce routinely.
void right_svd(const CMatrix& l, RVector& sigma, CMatrix& v) {
  const Eigen::Index n = l.cols();
  CMatrix work;
  if (l.rows() > n) {
    Eigen::HouseholderQR<CMatrix> qr(l);
    work = qr.matrixQR().topRows(n).triangularView<Eigen::Upper>();
  } else {
    work = l;
  }
  Eigen::JacobiSVD<CMatrix> svd(work, Eigen::ComputeFullV);
  sigma = RVector::Zero(n);
  const RVector& s = svd.singularValues();
  sigma.head(s.size()) = s;
  v = svd.matrixV();
}

}  // namespace

HermitianEigen hermitian_eigen(const CMatrix& m, const Tolerances& tol) {
  require_hermitian(m, tol, "hermitian_eigen");
  const Eigen::Index n = m.rows();
  HermitianEigen out;
  if (n == 0) return out;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m));
  RVector values = es.eigenvalues();
  CMatrix vectors = es.eigenvectors();
  for (Eigen::Index k = 0; k < n; ++k) fix_phase(vectors.col(k), tol.herm_tol);

  std::vector<Eigen::Index> order(static_cast<size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](Eigen::Index a, Eigen::Index b) { return values(a) > values(b); });

  // Cluster (numerically) equal eigenvalues, then order each cluster by its
  // eigenvectors. Insertion sort keeps the tolerance-based order well defined.
  const double tie = tol.eq_tol * std::max(1.0, values.cwiseAbs().maxCoeff());
  size_t start = 0;
  while (start < order.size()) {
    size_t stop = start + 1;
    while (stop < order.size() && values(order[stop - 1]) - values(order[stop]) <= tie) ++stop;
    for (size_t i = start + 1; i < stop; ++i) {
      for (size_t j = i; j > start; --j) {
        if (lex_greater(vectors.col(order[j]), vectors.col(order[j - 1]), tol.herm_tol)) {
          std::swap(order[j], order[j - 1]);
        } else {
          break;
        }
      }
    }
    start = stop;
  }

  out.values.resize(n);
  out.vectors.resize(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    out.values(k) = values(order[static_cast<size_t>(k)]);
    out.vectors.col(k) = vectors.col(order[static_cast<size_t>(k)]);
  }
  return out;
}

bool psd_check(const CMatrix& m, const Tolerances& tol) {
  require_hermitian(m, tol, "psd_check");
  if (m.rows() == 0) return true;
  Eigen::SelfAdjointEigenSolver<CMatrix> es(hermitian_part(m), Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff() >= -tol.psd_floor;
}

HermRoots herm_roots(const CMatrix& m, const Tolerances& tol) {
  const HermitianEigen eig = hermitian_eigen(m, tol);
  const Eigen::Index n = m.rows();
  if (n > 0 && eig.values(n - 1) < -tol.psd_floor) {
    throw Error(ErrorCode::NotPSD, "herm_roots: negative eigenvalue");
  }
  RVector root = eig.values.cwiseMax(0.0).cwiseSqrt();
  HermRoots out;
  out.sqrt = eig.vectors * root.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  if (n == 0 || eig.values(n - 1) > tol.psd_floor) {
    RVector inv = root.cwiseInverse();
    out.inv_sqrt = eig.vectors * inv.cast<Complex>().asDiagonal() * eig.vectors.adjoint();
  }
  return out;
}

CMatrix polar_unitary(const CMatrix& m, const Tolerances& tol) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorCode::DimensionMismatch, "polar_unitary: matrix not square");
  }
  if (m.rows() == 0) return m;
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const RVector& s = svd.singularValues();
  if (!(s(s.size() - 1) > tol.rank_cut * s(0))) {
    throw Error(ErrorCode::Singular, "polar_unitary: matrix is singular at rank_cut");
  }
  return svd.matrixU() * svd.matrixV().adjoint();
}

CMatrix nullspace_matrix(const CMatrix& l, const Tolerances& tol) {
  const Eigen::Index n = l.cols();
  if (n == 0) return CMatrix(0, 0);
  if (l.rows() == 0) return CMatrix::Identity(n, n);
  RVector sigma;
  CMatrix v;
  right_svd(l, sigma, v);
  const double cut = tol.rank_cut * sigma(0);
  Eigen::Index rank = 0;
  while (rank < n && sigma(rank) > cut) ++rank;
  CMatrix out(n, n - rank);
  // Ascending singular value: walk the tail backwards.
  for (Eigen::Index k = 0; k < n - rank; ++k) {
    out.col(k) = v.col(n - 1 - k);
    fix_phase(out.col(k), tol.herm_tol);
  }
  return out;
}

std::vector<CVector> nullspace_basis(const CMatrix& l, const Tolerances& tol) {
  const CMatrix basis = nullspace_matrix(l, tol);
  std::vector<CVector> out;
  out.reserve(static_cast<size_t>(basis.cols()));
  for (Eigen::Index k = 0; k < basis.cols(); ++k) out.emplace_back(basis.col(k));
  return out;
}

CMatrix range_basis(const CMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return CMatrix(m.rows(), 0);
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU);
  const RVector& s = svd.singularValues();
  const double cut = tol.rank_cut * s(0);
  Eigen::Index rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  CMatrix out = svd.matrixU().leftCols(rank);
  for (Eigen::Index k = 0; k < rank; ++k) fix_phase(out.col(k), tol.herm_tol);
  return out;
}

int numerical_rank(const CMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return 0;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const RVector& s = svd.singularValues();
  const double cut = tol.rank_cut * s(0);
  int rank = 0;
  while (rank < s.size() && s(rank) > cut) ++rank;
  return rank;
}

CMatrix pseudo_inverse(const CMatrix& m, const Tolerances& tol) {
  if (m.size() == 0) return CMatrix::Zero(m.cols(), m.rows());
  Eigen::JacobiSVD<CMatrix> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const RVector& s = svd.singularValues();
  const double cut = tol.rank_cut * s(0);
  RVector inv = RVector::Zero(s.size());
  for (Eigen::Index k = 0; k < s.size(); ++k) {
    if (s(k) > cut) inv(k) = 1.0 / s(k);
  }
  return svd.matrixV() * inv.cast<Complex>().asDiagonal() * svd.matrixU().adjoint();
}

}  // namespace ccx
