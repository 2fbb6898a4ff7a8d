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

#include <gtest/gtest.h>

#include "support.hpp"

using namespace ccx;
using namespace ccx::testing;

TEST(StarAlgebra, BasisUnits) {
  EXPECT_EQ(StarAlgebra({2}).basis_units().size(), 4u);
  const StarAlgebra diag2({1, 1});
  const auto d = diag2.basis_units();
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0], unit_matrix(2, 0, 0));
  EXPECT_EQ(d[1], unit_matrix(2, 1, 1));
  const StarAlgebra mixed({2, 1});
  EXPECT_EQ(mixed.basis_size(), 5);
  EXPECT_EQ(mixed.ambient_dim(), 3);
  // block-major, then row-major
  const auto u = StarAlgebra({2}).basis_units();
  EXPECT_EQ(u[1], unit_matrix(2, 0, 1));
  EXPECT_EQ(u[2], unit_matrix(2, 1, 0));
  EXPECT_EQ(mixed.unit(), identity(3));
}

TEST(StarAlgebra, UnitNames) {
  EXPECT_EQ(StarAlgebra({2}).unit_name(1), "E12");
  EXPECT_EQ(StarAlgebra({2, 1}).unit_name(4), "E11[b2]");
}

TEST(StarAlgebra, CoordinatesRoundTrip) {
  const StarAlgebra alg({2, 1});
  Rng rng(1);
  CVector c = rng.gaussian(alg.basis_size(), 1);
  EXPECT_LE((alg.coordinates(alg.from_coordinates(c)) - c).norm(), 1e-15);
  EXPECT_EQ(alg.off_block_norm(alg.from_coordinates(c)), 0.0);
}

TEST(StarAlgebra, CommutantExamples) {
  const Tolerances tol;
  const auto full = commutant(StarAlgebra({2}).basis_units(), 2, tol);
  ASSERT_EQ(full.size(), 1u);
  EXPECT_LE(max_abs(full[0] - identity(2) / std::sqrt(2.0)), 1e-12);

  EXPECT_EQ(commutant({}, 3, tol).size(), 9u);

  std::vector<CMatrix> pi;
  for (const CMatrix& e : StarAlgebra({2}).basis_units()) pi.push_back(kron(e, identity(2)));
  const auto c = commutant(pi, 4, tol);
  EXPECT_EQ(c.size(), 4u);
  for (const CMatrix& x : c) {
    // every element has the form I (x) Y
    const CMatrix y = x.topLeftCorner(2, 2);
    EXPECT_LE(max_abs(x - kron(identity(2), y)), 1e-12);
  }
}

TEST(StarAlgebra, CommutantBasisIsHermitianOrthonormal) {
  const Tolerances tol;
  Rng rng(4);
  const CMatrix a = rng.hermitian(2);
  std::vector<CMatrix> gens{kron(a, identity(2))};
  const auto c = commutant(gens, 4, tol);
  for (size_t i = 0; i < c.size(); ++i) {
    EXPECT_LE(hermitian_defect(c[i]), 1e-12);
    for (size_t j = 0; j < c.size(); ++j) {
      EXPECT_NEAR(std::abs((c[i].adjoint() * c[j]).trace()), i == j ? 1.0 : 0.0, 1e-10);
    }
  }
}

TEST(StarAlgebra, DoubleCommutant) {
  const Tolerances tol;
  Rng rng(6);
  for (int n = 2; n <= 4; ++n) {
    // S = unital *-closed set generated by a random block-diagonal Hermitian
    CMatrix h = CMatrix::Zero(n, n);
    h.topLeftCorner(n - 1, n - 1) = rng.hermitian(n - 1);
    h(n - 1, n - 1) = 7.0;
    const std::vector<CMatrix> s{identity(n), h};
    const auto c1 = commutant(s, n, tol);
    const auto c2 = commutant(c1, n, tol);
    // the algebra generated by h is spanned by its powers
    std::vector<CMatrix> powers{identity(n)};
    for (int k = 1; k < n; ++k) powers.push_back(powers.back() * h);
    const auto gen = hermitian_orthonormal_basis(powers, n, tol);
    EXPECT_EQ(c2.size(), gen.size()) << "n=" << n;
    for (const CMatrix& x : c2) EXPECT_LE(span_residual(gen, x, tol), 1e-8);
  }
}

TEST(StarAlgebra, CommutantDimensionIsConjugationInvariant) {
  const Tolerances tol;
  Rng rng(7);
  std::vector<CMatrix> gens;
  for (const CMatrix& e : StarAlgebra({2, 1}).basis_units()) gens.push_back(e);
  const CMatrix u = random_unitary(rng, 3);
  std::vector<CMatrix> conj;
  for (const CMatrix& g : gens) conj.push_back(u * g * u.adjoint());
  EXPECT_EQ(commutant(gens, 3, tol).size(), commutant(conj, 3, tol).size());
}

TEST(StarAlgebra, VerifySubalgebra) {
  const Tolerances tol;
  const StarAlgebra m2({2});
  EXPECT_TRUE(verify_subalgebra({m2, {unit_matrix(2, 0, 0), unit_matrix(2, 1, 1)}}, tol));
  EXPECT_FALSE(verify_subalgebra({m2, {unit_matrix(2, 0, 1)}}, tol));
}

TEST(StarAlgebra, CommutantWithinMatchesGeneralRoute) {
  const Tolerances tol;
  // The analytic ansatz {I (x) E_kl} must give the same space as the full computation.
  std::vector<CMatrix> ansatz;
  for (const CMatrix& e : StarAlgebra({2}).basis_units()) ansatz.push_back(kron(identity(2), e));
  const CMatrix w = diag({1.0, -1.0});
  const std::vector<CMatrix> gens{kron(w, w)};
  const auto within = commutant_within(ansatz, gens, tol);
  std::vector<CMatrix> all = gens;
  for (const CMatrix& e : StarAlgebra({2}).basis_units()) all.push_back(kron(e, identity(2)));
  const auto general = commutant(all, 4, tol);
  ASSERT_EQ(within.size(), general.size());
  for (const CMatrix& x : within) EXPECT_LE(span_residual(general, x, tol), 1e-10);
}
