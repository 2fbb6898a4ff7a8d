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

/// a -> a11 I_d on M_2.
CPMap corner_state_inflation(int d) { return state_inflation(StarAlgebra({2}), unit_matrix(2, 0, 0), d); }

}  // namespace

TEST(Extremality, AutomorphismIsMultiplicative) {
  const Tolerances tol;
  const CPMap phi = conjugation_map(StarAlgebra({2}), diag({1.0, -1.0}));
  const CertificateFlags f = sufficient_conditions(phi, GroupAction::trivial(StarAlgebra({2})), tol);
  EXPECT_TRUE(f.multiplicative);
  const ExtremalityReport r = extremality_verdict(phi, GroupAction::trivial(StarAlgebra({2})), Budget{}, tol);
  EXPECT_EQ(r.verdict, Verdict::ExtremeCertified);
  EXPECT_EQ(r.certificate, "multiplicative");
}

TEST(Extremality, PureStateInflation) {
  const Tolerances tol;
  for (int d : {1, 2, 3}) {
    const CPMap phi = corner_state_inflation(d);
    const CertificateFlags f = sufficient_conditions(phi, z2_diag_action(), tol);
    EXPECT_TRUE(f.pure_state_inflation) << d;
    const ExtremalityReport r = extremality_verdict(phi, z2_diag_action(), Budget{}, tol);
    EXPECT_EQ(r.verdict, Verdict::ExtremeCertified);
    EXPECT_EQ(r.certificate, "pure_state_inflation");
  }
  // a mixed state is not pure
  const CPMap mixed = state_inflation(StarAlgebra({2}), identity(2) / 2.0, 2);
  EXPECT_FALSE(is_pure_state_inflation(mixed, tol));
}

TEST(Extremality, DephasingUnderZ2IsRangeInvariant) {
  const Tolerances tol;
  const CertificateFlags f = sufficient_conditions(dephasing(), z2_diag_action(), tol);
  EXPECT_TRUE(f.range_invariant);
  EXPECT_FALSE(f.multiplicative);
  EXPECT_FALSE(f.pure_state_inflation);
  EXPECT_FALSE(f.pure_cp);
  EXPECT_FALSE(f.disjoint_pure_sum);
  const ExtremalityReport r = extremality_verdict(dephasing(), z2_diag_action(), Budget{}, tol);
  EXPECT_EQ(r.verdict, Verdict::ExtremeCertified);
  EXPECT_EQ(r.certificate, "range_invariant");
}

TEST(Extremality, DephasingUnderTrivialGroupIsNotExtreme) {
  const Tolerances tol;
  const GroupAction triv = GroupAction::trivial(StarAlgebra({2}));
  const ExtremalityReport r = extremality_verdict(dephasing(), triv, Budget{}, tol);
  EXPECT_EQ(r.verdict, Verdict::NotExtreme);
  EXPECT_EQ(r.commutant_dim, 4);
  ASSERT_TRUE(r.witness);
  EXPECT_TRUE(verify_witness(dephasing(), triv, *r.witness, tol));
  EXPECT_FALSE(r.witness->reason.empty());
}

TEST(Extremality, DisjointPureSum) {
  const Tolerances tol;
  // C^2 -> M_2, (x, y) -> diag(x, y): two pure pieces in different blocks.
  const StarAlgebra c2({1, 1});
  const CPMap phi = identity_map(c2);
  EXPECT_TRUE(is_disjoint_pure_sum(phi, tol));
  // M_2 -> M_4, a -> a (+) a: equivalent pieces.
  CMatrix w(2, 4);
  w << 1, 0, 0, 0, 0, 1, 0, 0;
  CMatrix w2(2, 4);
  w2 << 0, 0, 1, 0, 0, 0, 0, 1;
  const CPMap twice = CPMap::from_kraus(StarAlgebra({2}), 4, {{w, w2}});
  EXPECT_FALSE(is_disjoint_pure_sum(twice, tol));
  // A single irreducible map is a one-term disjoint sum.
  EXPECT_TRUE(is_disjoint_pure_sum(identity_map(StarAlgebra({2})), tol));
  EXPECT_FALSE(is_disjoint_pure_sum(dephasing(), tol));
}

TEST(Extremality, SplitExamples) {
  const Tolerances tol;
  const RNContext ctx = build_context(dephasing(), z2_diag_action(), tol);
  SplitResult s = split_by_T(ctx, make_operator(ctx, identity(4), tol), 0.5, tol);
  EXPECT_LE(max_abs(s.T1 - identity(2) / std::sqrt(2.0)), 1e-12);
  EXPECT_LE(max_abs(s.T2 - identity(2) / std::sqrt(2.0)), 1e-12);
  EXPECT_LE(choi_distance(s.phi1, ctx.phi), 1e-12);
  EXPECT_LE(choi_distance(s.phi2, ctx.phi), 1e-12);

  const CMatrix t = kron(identity(2), diag({1.0, 0.5}));
  s = split_by_T(ctx, make_operator(ctx, t, tol), 0.5, tol);
  EXPECT_LE(s.reconstruction_error, tol.eq_tol);
  CMatrix off1 = s.T1;
  off1.diagonal().setZero();
  EXPECT_LE(max_abs(off1), 1e-12);
  for (const CPMap* m : {&s.phi1, &s.phi2}) {
    const MapValidation v = validate_map(*m, &ctx.action, tol);
    EXPECT_TRUE(v.cp && v.unital && v.invariant.value());
  }

  const CPMap autom = conjugation_map(StarAlgebra({2}), diag({1.0, -1.0}));
  const RNContext sc = build_context(autom, GroupAction::trivial(StarAlgebra({2})), tol);
  s = split_by_T(sc, make_operator(sc, 0.3 * identity(2), tol), 0.5, tol);
  EXPECT_LE(choi_distance(s.phi1, autom), 1e-12);
  EXPECT_LE(choi_distance(s.phi2, autom), 1e-12);
}

TEST(Extremality, SplitNeedsPhiInvertibility) {
  const Tolerances tol;
  const RNContext ctx = build_context(dephasing(), GroupAction::trivial(StarAlgebra({2})), tol);
  // V*(I (x) E11)V = E11 is singular.
  try {
    split_by_T(ctx, make_operator(ctx, kron(identity(2), unit_matrix(2, 0, 0)), tol), 1.0, tol);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotPhiInvertible);
  }
}

TEST(Extremality, SplitReconstructsOverSweeps) {
  const Tolerances tol;
  Rng rng(55);
  for (const Config& c : configs()) {
    const CPMap phi = random_invariant(rng, c);
    const RNContext ctx = build_context(phi, c.action, tol);
    for (const RNOperator& op : interval_sample(ctx, 0, SampleMode::BasisSweep, 0, tol)) {
      if (!op.phi_invertible) continue;
      const SplitResult s = split_by_T(ctx, op, 0.5, tol);
      EXPECT_LE(s.reconstruction_error, 1e-8) << c.name;
      EXPECT_LE(max_abs(s.T1.adjoint() * s.T1 + s.T2.adjoint() * s.T2 - identity(c.d)), 1e-8) << c.name;
    }
  }
}

TEST(Extremality, EquivalenceExamples) {
  const Tolerances tol;
  const EquivalenceOptions opt;
  Rng rng(3);
  const CPMap phi = random_ucp(rng, StarAlgebra({2}), 3, 2);
  EquivalenceResult r = unitary_equivalence(phi, phi, opt, tol);
  EXPECT_EQ(r.status, Equivalence::Equivalent);
  ASSERT_TRUE(r.U);

  const CMatrix u0 = random_unitary(rng, 3);
  const CPMap rotated = compress(phi, u0);
  r = unitary_equivalence(phi, rotated, opt, tol);
  ASSERT_EQ(r.status, Equivalence::Equivalent);
  for (int k = 0; k < 4; ++k) {
    EXPECT_LE(max_abs(r.U->adjoint() * phi.image(k) * *r.U - rotated.image(k)), tol.eq_tol);
  }

  r = unitary_equivalence(identity_map(StarAlgebra({2})), dephasing(), opt, tol);
  EXPECT_EQ(r.status, Equivalence::NotEquivalent);
  EXPECT_NE(r.reason.find("Choi spectrum"), std::string::npos);
}

TEST(Extremality, TraceWordsSeparateMirrorImages) {
  // Rank-one effects on C^4 -> M_2 and their complex conjugates: identical Choi
  // spectra and pairwise overlaps, but triple products change sign.
  const Tolerances tol;
  Rng rng(13);
  const StarAlgebra c4({1, 1, 1, 1});
  const CPMap phi = random_ucp(rng, c4, 2, 1);
  std::vector<CMatrix> images;
  for (const CMatrix& m : phi.images()) images.push_back(m.conjugate());
  const CPMap mirror = CPMap::from_unit_images(c4, 2, images);
  ASSERT_TRUE(validate_map(mirror, nullptr, tol).cp);
  const EquivalenceResult r = unitary_equivalence(phi, mirror, EquivalenceOptions{}, tol);
  EXPECT_EQ(r.status, Equivalence::NotEquivalent);
  EXPECT_NE(r.reason.find("trace of word"), std::string::npos) << r.reason;
}

TEST(Extremality, LinearExtremality) {
  const Tolerances tol;
  EXPECT_TRUE(linear_extremality_check(identity_map(StarAlgebra({2})), tol));
  // dephasing = (id + Ad_Z)/2 is a proper midpoint in UCP(M_2)
  EXPECT_FALSE(linear_extremality_check(dephasing(), tol));
  // a -> a/2 + tr(a) I/4
  std::vector<CMatrix> images;
  const StarAlgebra m2({2});
  for (const CMatrix& e : m2.basis_units()) images.push_back(0.5 * e + 0.25 * e.trace() * identity(2));
  EXPECT_FALSE(linear_extremality_check(CPMap::from_unit_images(m2, 2, images), tol));
}

TEST(Extremality, MidpointSearchAgreesWithLinearCheck) {
  const Tolerances tol;
  const GroupAction triv = GroupAction::trivial(StarAlgebra({2}));
  const RNContext deph = build_context(dephasing(), triv, tol);
  EXPECT_TRUE(midpoint_perturbation_search(deph, 100, 1, 1e-7, tol).found);
  const RNContext deph_z2 = build_context(dephasing(), z2_diag_action(), tol);
  const MidpointResult r = midpoint_perturbation_search(deph_z2, 100, 1, 1e-7, tol);
  EXPECT_FALSE(r.found);
  EXPECT_EQ(r.kernel_dim, 0);
}

TEST(Extremality, VerdictIsMonotoneInBudget) {
  const Tolerances tol;
  Rng rng(101);
  for (const Config& c : configs()) {
    const CPMap phi = random_invariant(rng, c);
    const ExtremalityReport small = extremality_verdict(phi, c.action, Budget{2, 5, 6}, tol);
    const ExtremalityReport large = extremality_verdict(phi, c.action, Budget{12, 5, 6}, tol);
    if (small.verdict == Verdict::ExtremeCertified || small.verdict == Verdict::NotExtreme) {
      EXPECT_EQ(small.verdict, large.verdict) << c.name;
    }
    if (large.verdict == Verdict::NotExtreme) {
      ASSERT_TRUE(large.witness);
      EXPECT_TRUE(verify_witness(phi, c.action, *large.witness, tol)) << c.name;
    }
  }
}

TEST(Extremality, VerdictRequiresInvariance) {
  try {
    extremality_verdict(identity_map(StarAlgebra({2})), z2_diag_action(), Budget{}, Tolerances{});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NotInvariant);
  }
}
