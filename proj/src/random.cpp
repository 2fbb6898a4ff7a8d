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

#include "ccx/random.hpp"

#include <cmath>
#include <numbers>

namespace ccx {

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  const double u2 = uniform();
  const double rad = std::sqrt(-2.0 * std::log(u1));
  spare_ = rad * std::sin(2.0 * std::numbers::pi * u2);
  has_spare_ = true;
  return rad * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
  const double re = normal();
  const double im = normal();
  return {re / std::numbers::sqrt2, im / std::numbers::sqrt2};
}

CMatrix Rng::gaussian(Eigen::Index rows, Eigen::Index cols) {
  CMatrix m(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j) {
    for (Eigen::Index i = 0; i < rows; ++i) m(i, j) = complex_normal();
  }
  return m;
}

CMatrix Rng::hermitian(Eigen::Index n) {
  const CMatrix g = gaussian(n, n);
  return (g + g.adjoint()) / 2.0;
}

CMatrix random_isometry(Rng& rng, int rows, int cols) {
  if (rows < cols) throw Error(ErrorCode::DimensionMismatch, "isometry needs rows >= cols");
  const CMatrix g = rng.gaussian(rows, cols);
  Eigen::HouseholderQR<CMatrix> qr(g);
  CMatrix q = qr.householderQ() * CMatrix::Identity(rows, cols);
  const CMatrix r = qr.matrixQR();
  for (int j = 0; j < cols; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

CMatrix random_unitary(Rng& rng, int n) { return random_isometry(rng, n, n); }

CPMap random_ucp(Rng& rng, const StarAlgebra& alg, int d, int rank, const Tolerances& tol) {
  // Isometry C^d -> (+)_b C^{n_b} (x) C^rank, cut into Kraus operators.
  int total = 0;
  for (int b = 0; b < alg.num_blocks(); ++b) total += alg.block_dim(b) * rank;
  if (total < d) throw Error(ErrorCode::DimensionMismatch, "rank too small for an isometry");
  const CMatrix v = random_isometry(rng, total, d);
  std::vector<std::vector<CMatrix>> kraus(static_cast<size_t>(alg.num_blocks()));
  int off = 0;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    const int n = alg.block_dim(b);
    for (int k = 0; k < rank; ++k) {
      CMatrix op(n, d);
      for (int i = 0; i < n; ++i) op.row(i) = v.row(off + i * rank + k);
      kraus[static_cast<size_t>(b)].push_back(std::move(op));
    }
    off += n * rank;
  }
  return CPMap::from_kraus(alg, d, kraus, tol);
}

std::vector<CMatrix> random_coefficients(Rng& rng, int m, int d) {
  const CMatrix v = random_isometry(rng, m * d, d);
  std::vector<CMatrix> out;
  for (int i = 0; i < m; ++i) out.push_back(v.middleRows(i * d, d));
  return out;
}

}  // namespace ccx
