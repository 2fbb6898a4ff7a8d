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

namespace {

RNContext dephasing_ctx() { return build_context(dephasing(), z2_diag_action(), Tolerances{}); }

CMatrix corner_T() { return kron(identity(2), unit_matrix(2, 0, 0)); }

}  // namespace

TEST(RadonNikodym, DephasingCommutantIsTwoDimensional) {
  const RNContext ctx = dephasing_ctx();
  ASSERT_EQ(ctx.commutant.size(), 2u);
  for (const CMatrix& s : ctx.commutant) {
    // s lies in span{I (x) E11, I (x) E22}
    const CMatrix y = s.topLeftCorner(2, 2);
    EXPECT_LE(max_abs(s - kron(identity(2), y)), 1e-12);
    EXPECT_LE(std::abs(y(0, 1)), 1e-12);
  }
}

TEST(RadonNikodym, CommutantRoutesAgree) {
  // analytic pi(A)' ansatz versus the full Kronecker null space
  const Tolerances tol;
  Rng rng(31);
  for (const Config& c : configs()) {
    const CPMap phi = random_invariant(rng, c);
    const RNContext ctx = build_context(phi, c.action, tol);
    std::vector<CMatrix> gens = ctx.triple.pi_units;
    gens.insert(gens.end(), ctx.covariant.U.begin(), ctx.covariant.U.end());
    const std::vector<CMatrix> general = commutant(gens, ctx.triple.dilation_dim, tol);
    ASSERT_EQ(general.size(), ctx.commutant.size()) << c.name;
    for (const CMatrix& x : ctx.commutant) EXPECT_LE(span_residual(general, x, tol), 1e-8) << c.name;
  }
}

TEST(RadonNikodym, ForwardExamples) {
  const Tolerances tol;
  const RNContext ctx = dephasing_ctx();
  const int dim = ctx.triple.dilation_dim;
  ForwardResult r = rn_forward(ctx, make_operator(ctx, identity(dim), tol), tol);
  EXPECT_LE(choi_distance(r.map, ctx.phi), 1e-14);
  EXPECT_TRUE(r.cp && r.invariant && r.dominated);

  r = rn_forward(ctx, make_operator(ctx, CMatrix::Zero(dim, dim), tol), tol);
  EXPECT_LE(max_abs(r.map.choi_blocks()[0]), 1e-15);

  r = rn_forward(ctx, make_operator(ctx, corner_T(), tol), tol);
  // phi_T(a) = a11 E11
  for (int k = 0; k < 4; ++k) {
    const CMatrix expected = k == 0 ? unit_matrix(2, 0, 0) : CMatrix::Zero(2, 2);
    EXPECT_LE(max_abs(r.map.image(k) - expected), 1e-14);
  }
  EXPECT_TRUE(r.cp && r.invariant && r.dominated);
}

TEST(RadonNikodym, ForwardRejectsBadOperators) {
  const Tolerances tol;
  const RNContext ctx = dephasing_ctx();
  try {
    rn_forward(ctx, {kron(unit_matrix(2, 0, 0), identity(2)), false}, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInCommutant);
  }
  try {
    rn_forward(ctx, {2.0 * identity(4), true}, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::OutOfInterval);
  }
}

TEST(RadonNikodym, InverseExamples) {
  const Tolerances tol;
  const RNContext ctx = dephasing_ctx();
  EXPECT_LE(max_abs(rn_inverse(ctx, ctx.phi, tol).op.T - identity(4)), 1e-10);
  const CPMap half = linear_combination(0.5, ctx.phi, 0.0, ctx.phi);
  EXPECT_LE(max_abs(rn_inverse(ctx, half, tol).op.T - 0.5 * identity(4)), 1e-10);
  const CPMap corner = CPMap::from_kraus(StarAlgebra({2}), 2, {{unit_matrix(2, 0, 0)}});
  const InverseResult inv = rn_inverse(ctx, corner, tol);
  EXPECT_LE(max_abs(inv.op.T - corner_T()), 1e-10);
  EXPECT_FALSE(inv.op.phi_invertible);
}

TEST(RadonNikodym, InverseErrors) {
  const Tolerances tol;
  const RNContext ctx = dephasing_ctx();
  try {
    rn_inverse(ctx, identity_map(StarAlgebra({2})), tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvariant);
  }
  try {
    rn_inverse(ctx, linear_combination(2.0, ctx.phi, 0.0, ctx.phi), tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotDominated);
  }
}

TEST(RadonNikodym, InverseFlagsMapsOutsideTheImage) {
  // With the commutant cut down to scalars the corner map is out of reach.
  const Tolerances tol;
  RNContext ctx = build_context(dephasing(), GroupAction::trivial(StarAlgebra({2})), tol);
  ctx.commutant = {identity(4) / 2.0};
  const CPMap corner = CPMap::from_kraus(StarAlgebra({2}), 2, {{unit_matrix(2, 0, 0)}});
  try {
    rn_inverse(ctx, corner, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::ResidualTooLarge);
  }
}

TEST(RadonNikodym, SweepExamples) {
  const Tolerances tol;
  const RNContext ctx = dephasing_ctx();
  const auto sweep = interval_sample(ctx, 0, SampleMode::BasisSweep, 0, tol);
  ASSERT_EQ(sweep.size(), 4u);
  for (const RNOperator& op : sweep) {
    EXPECT_TRUE(psd_check(op.T, tol));
    EXPECT_TRUE(psd_check(identity(4) - op.T, tol));
    EXPECT_LE(commutator_defect(ctx, op.T), 1e-12);
    // diagonal in the I (x) E11, I (x) E22 basis
    CMatrix off = op.T;
    off.diagonal().setZero();
    EXPECT_LE(max_abs(off), 1e-12);
  }

  const CPMap autom = conjugation_map(StarAlgebra({2}), diag({1.0, -1.0}));
  const RNContext scalar = build_context(autom, GroupAction::trivial(StarAlgebra({2})), tol);
  ASSERT_EQ(scalar.commutant.size(), 1u);
  for (const RNOperator& op : interval_sample(scalar, 0, SampleMode::BasisSweep, 0, tol)) {
    EXPECT_LE(max_abs(op.T - op.T(0, 0) * identity(op.T.rows())), 1e-12);
    EXPECT_TRUE(op.phi_invertible);
  }
}

TEST(RadonNikodym, RandomSamplesArePrefixConsistent) {
  const Tolerances tol;
  const RNContext ctx = build_context(dephasing(), GroupAction::trivial(StarAlgebra({2})), tol);
  const auto few = interval_sample(ctx, 9, SampleMode::Random, 3, tol);
  const auto many = interval_sample(ctx, 9, SampleMode::Random, 8, tol);
  ASSERT_EQ(few.size(), 3u);
  for (size_t i = 0; i < few.size(); ++i) EXPECT_EQ(few[i].T, many[i].T);
  for (const RNOperator& op : many) {
    EXPECT_TRUE(psd_check(op.T, tol));
    EXPECT_TRUE(psd_check(identity(4) - op.T, tol));
  }
}

TEST(RadonNikodym, RoundTripAffinityOrder) {
  const Tolerances tol;
  Rng rng(77);
  for (const Config& c : configs()) {
    const CPMap phi = random_invariant(rng, c);
    const RNContext ctx = build_context(phi, c.action, tol);
    const auto sweep = interval_sample(ctx, 0, SampleMode::BasisSweep, 0, tol);
    for (const RNOperator& op : sweep) {
      const ForwardResult f = rn_forward(ctx, op, tol);
      EXPECT_TRUE(f.cp && f.invariant && f.dominated) << c.name;
      EXPECT_LE(max_abs(rn_inverse(ctx, f.map, tol).op.T - op.T), 1e-8) << c.name;
    }
    for (size_t i = 0; i + 1 < sweep.size(); ++i) {
      const CMatrix& t1 = sweep[i].T;
      const CMatrix& t2 = sweep[i + 1].T;
      const double lambda = rng.uniform();
      const CPMap lhs = rn_map(ctx, lambda * t1 + (1 - lambda) * t2);
      const CPMap rhs = linear_combination(lambda, rn_map(ctx, t1), 1 - lambda, rn_map(ctx, t2));
      EXPECT_LE(choi_distance(lhs, rhs), tol.eq_tol) << c.name;
      const CMatrix lo = 0.5 * t1;
      EXPECT_TRUE(cp_leq(rn_map(ctx, lo), rn_map(ctx, t1), tol)) << c.name;
    }
  }
}
