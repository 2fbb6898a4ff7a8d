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

TEST(FixedPoint, TrivialGroupGivesTheWholeAlgebra) {
  const Tolerances tol;
  const FixedPointContext ctx = fixed_point_algebra(GroupAction::trivial(StarAlgebra({2, 1})), tol);
  EXPECT_EQ(ctx.fixed.basis.size(), 5u);
  std::vector<int> dims = ctx.block_form.block_dims();
  std::sort(dims.begin(), dims.end());
  EXPECT_EQ(dims, (std::vector<int>{1, 2}));
  EXPECT_TRUE(verify_subalgebra(ctx.fixed, tol));
}

TEST(FixedPoint, Z2DiagGivesDiagonals) {
  const Tolerances tol;
  const FixedPointContext ctx = fixed_point_algebra(z2_diag_action(), tol);
  EXPECT_EQ(ctx.block_form.block_dims(), (std::vector<int>{1, 1}));
  EXPECT_EQ(ctx.multiplicities, (std::vector<int>{1, 1}));
  for (const CMatrix& x : ctx.fixed.basis) {
    EXPECT_LE(std::abs(x(0, 1)), 1e-12);
    EXPECT_LE(std::abs(x(1, 0)), 1e-12);
  }
  EXPECT_TRUE(verify_subalgebra(ctx.fixed, tol));
  EXPECT_EQ(ctx.fixed.basis.size(), 2u);
}

TEST(FixedPoint, SwapOnDiagonalGivesScalars) {
  const Tolerances tol;
  const CMatrix swap = mat({{0.0, 1.0}, {1.0, 0.0}});
  const GroupAction act = GroupAction::general(FiniteGroup::cyclic(2), StarAlgebra({1, 1}), {identity(2), swap});
  const FixedPointContext ctx = fixed_point_algebra(act, tol);
  EXPECT_EQ(ctx.block_form.block_dims(), std::vector<int>{1});
  EXPECT_EQ(ctx.multiplicities, std::vector<int>{2});
  EXPECT_LE(max_abs(ctx.units[0] - identity(2)), 1e-12);
}

TEST(FixedPoint, MatrixUnitsAndOrdering) {
  const Tolerances tol;
  for (const Config& c : configs()) {
    const FixedPointContext ctx = fixed_point_algebra(c.action, tol);
    const StarAlgebra& bf = ctx.block_form;
    // iota is a unital *-homomorphism on matrix units
    CMatrix sum = CMatrix::Zero(c.action.algebra().ambient_dim(), c.action.algebra().ambient_dim());
    for (int k = 0; k < bf.basis_size(); ++k) {
      const auto u = bf.unit_index(k);
      const CMatrix& f = ctx.units[static_cast<size_t>(k)];
      EXPECT_LE(max_abs(f.adjoint() - ctx.units[static_cast<size_t>(bf.unit_position(u.block, u.col, u.row))]), 1e-10);
      if (u.row == u.col) sum += f;
      for (int l = 0; l < bf.basis_size(); ++l) {
        const auto v = bf.unit_index(l);
        CMatrix expected = CMatrix::Zero(sum.rows(), sum.cols());
        if (u.block == v.block && u.col == v.row) expected = ctx.units[static_cast<size_t>(bf.unit_position(u.block, u.row, v.col))];
        EXPECT_LE(max_abs(f * ctx.units[static_cast<size_t>(l)] - expected), 1e-10) << c.name;
      }
      for (int g = 0; g < c.action.group().order(); ++g) {
        EXPECT_LE(max_abs(apply_action(c.action, g, f) - f), 1e-10) << c.name;
      }
    }
    EXPECT_LE(max_abs(sum - identity(sum.rows())), 1e-10) << c.name;
    EXPECT_LE(max_abs(ctx.W.adjoint() * ctx.W - identity(ctx.W.cols())), 1e-10) << c.name;
    for (size_t i = 1; i < ctx.central_projections.size(); ++i) {
      EXPECT_LE(ctx.central_projections[i - 1].trace().real(), ctx.central_projections[i].trace().real() + 1e-9);
    }
    // deterministic
    const FixedPointContext again = fixed_point_algebra(c.action, tol);
    for (size_t k = 0; k < ctx.units.size(); ++k) EXPECT_EQ(ctx.units[k], again.units[k]) << c.name;
  }
}

TEST(RestrictE, Examples) {
  const Tolerances tol;
  const FixedPointContext ctx = fixed_point_algebra(z2_diag_action(), tol);
  const CPMap psi = restrict_E(dephasing(), ctx, tol);
  // (x, y) -> x E11 + y E22 up to the ordering of the two minimal projections
  const CMatrix x = psi.apply(diag({1.0, 0.0}));
  const CMatrix y = psi.apply(diag({0.0, 1.0}));
  EXPECT_LE(max_abs(x + y - identity(2)), 1e-12);
  EXPECT_LE(max_abs(x * x - x), 1e-12);
  EXPECT_LE(std::abs(x(0, 1)), 1e-12);

  // inflation of an invariant state restricts to the inflation of its restriction
  const CPMap omega = state_inflation(StarAlgebra({2}), unit_matrix(2, 0, 0), 2);
  const CPMap r = restrict_E(omega, ctx, tol);
  for (int k = 0; k < r.domain().basis_size(); ++k) {
    EXPECT_LE(max_abs(r.image(k) - r.image(k)(0, 0) * identity(2)), 1e-12);
  }

  const GroupAction triv = GroupAction::trivial(StarAlgebra({2}));
  const FixedPointContext tctx = fixed_point_algebra(triv, tol);
  Rng rng(2);
  const CPMap phi = random_ucp(rng, StarAlgebra({2}), 2, 2);
  const CPMap same = restrict_E(phi, tctx, tol);
  // same map up to the change of matrix units: compare through iota
  for (int k = 0; k < 4; ++k) EXPECT_LE(max_abs(same.image(k) - phi.apply(tctx.units[static_cast<size_t>(k)])), 1e-12);
  EXPECT_LE(choi_distance(extend_Einv(same, tctx, tol), phi), 1e-10);
}

TEST(RestrictE, RejectsNonInvariantMaps) {
  const Tolerances tol;
  const FixedPointContext ctx = fixed_point_algebra(z2_diag_action(), tol);
  try {
    restrict_E(identity_map(StarAlgebra({2})), ctx, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvariant);
  }
}

TEST(ExtendEinv, RoundTripsAndCombinations) {
  const Tolerances tol;
  Rng rng(88);
  for (const Config& c : configs()) {
    const FixedPointContext ctx = fixed_point_algebra(c.action, tol);
    const CPMap phi = random_invariant(rng, c);
    const CPMap psi = restrict_E(phi, ctx, tol);
    EXPECT_LE(choi_distance(extend_Einv(psi, ctx, tol), phi), 1e-8) << c.name;
    const CPMap psi2 = random_ucp(rng, ctx.block_form, c.d, 2);
    const CPMap ext = extend_Einv(psi2, ctx, tol);
    const MapValidation v = validate_map(ext, &c.action, tol);
    EXPECT_TRUE(v.cp && v.unital && v.invariant.value()) << c.name;
    EXPECT_LE(choi_distance(restrict_E(ext, ctx, tol), psi2), 1e-8) << c.name;

    const CPMap phi2 = random_invariant(rng, c);
    const std::vector<CMatrix> t = random_coefficients(rng, 2, c.d);
    const CPMap combo = cstar_combine({{{t[0], phi}, {t[1], phi2}}}, tol);
    const CPMap lhs = restrict_E(combo, ctx, tol);
    const CPMap rhs = cstar_combine({{{t[0], psi}, {t[1], restrict_E(phi2, ctx, tol)}}}, tol);
    EXPECT_LE(choi_distance(lhs, rhs), 1e-8) << c.name;
  }
}

TEST(Hull, Examples) {
  const Tolerances tol;
  const GroupAction act = z2_diag_action();
  const CPMap omega = state_inflation(StarAlgebra({2}), unit_matrix(2, 0, 0), 2);
  const HullReport one = hull_experiment({dephasing()}, act, 5, 1, Budget{4, 1, 6}, tol);
  EXPECT_EQ(one.members, one.trials);
  const HullReport two = hull_experiment({dephasing(), omega}, act, 20, 2, Budget{4, 2, 6}, tol);
  EXPECT_EQ(two.trials, 20);
  EXPECT_EQ(two.members, 20);
  EXPECT_FALSE(two.algebra_commutative);
  EXPECT_TRUE(two.algebra_factor);
  try {
    hull_experiment({dephasing()}, GroupAction::trivial(StarAlgebra({2})), 1, 1, Budget{}, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UncertifiedInput);
  }
}

TEST(Hull, DephasingIsInTheHullOfTwoAutomorphisms) {
  const Tolerances tol;
  const StarAlgebra m2({2});
  const CPMap id = identity_map(m2);
  const CPMap adw = conjugation_map(m2, diag({1.0, -1.0}));
  const CMatrix h = identity(2) / std::sqrt(2.0);
  EXPECT_LE(choi_distance(cstar_combine({{{h, id}, {h, adw}}}, tol), dephasing()), 1e-15);
  const HullReport r = hull_experiment({id, adw}, GroupAction::trivial(m2), 10, 3, Budget{4, 3, 6}, tol);
  EXPECT_EQ(r.members, 10);
}
