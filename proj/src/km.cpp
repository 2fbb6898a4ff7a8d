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

#include "ccx/km.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "ccx/random.hpp"

namespace ccx {

namespace {

constexpr std::uint64_t kGenericSeed = 0x2545f4914f6cdd1dULL;

/// Group eigenvalues of a descending spectrum into clusters; returns cluster sizes.
std::vector<int> clusters(const RVector& values, double gap) {
  std::vector<int> sizes;
  Eigen::Index start = 0;
  while (start < values.size()) {
    Eigen::Index end = start + 1;
    while (end < values.size() && values(end - 1) - values(end) <= gap) ++end;
    sizes.push_back(static_cast<int>(end - start));
    start = end;
  }
  return sizes;
}

CMatrix generic_element(const std::vector<CMatrix>& basis, Rng& rng) {
  CMatrix h = CMatrix::Zero(basis.front().rows(), basis.front().cols());
  for (const CMatrix& b : basis) h += rng.normal() * b;
  return hermitian_part(h);
}

/// Trace ascending, then entries (row-major, real then imaginary) descending.
bool projection_before(const CMatrix& a, const CMatrix& b, const Tolerances& tol) {
  const double ta = a.trace().real();
  const double tb = b.trace().real();
  if (std::abs(ta - tb) > 0.5) return ta < tb;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      for (int part = 0; part < 2; ++part) {
        const double x = part ? a(i, j).imag() : a(i, j).real();
        const double y = part ? b(i, j).imag() : b(i, j).real();
        if (std::abs(x - y) > tol.eq_tol) return x > y;
      }
    }
  }
  return false;
}

}  // namespace

CMatrix FixedPointContext::pull_back(const CMatrix& x) const {
  const int n = block_form.ambient_dim();
  CMatrix out = CMatrix::Zero(n, n);
  for (int k = 0; k < block_form.basis_size(); ++k) {
    const auto [c, i, j] = block_form.unit_index(k);
    const CMatrix& fji = units[static_cast<size_t>(block_form.unit_position(c, j, i))];
    const Complex coeff = (fji * x).trace() / static_cast<double>(multiplicities[static_cast<size_t>(c)]);
    out(block_form.block_offset(c) + i, block_form.block_offset(c) + j) = coeff;
  }
  return out;
}

FixedPointContext fixed_point_algebra(const GroupAction& act, const Tolerances& tol) {
  require_valid_action(act, tol);
  const StarAlgebra& alg = act.algebra();
  const int nb = alg.basis_size();
  const int order = act.group().order();

  // Null space of the stacked (tau_g - id) on coordinates.
  CMatrix system(static_cast<Eigen::Index>(order) * nb, nb);
  for (int g = 0; g < order; ++g) {
    for (int k = 0; k < nb; ++k) {
      CVector col = alg.coordinates(apply_action(act, g, alg.basis_unit(k)));
      col(k) -= 1.0;
      system.block(static_cast<Eigen::Index>(g) * nb, k, nb, 1) = col;
    }
  }
  std::vector<CMatrix> spanning;
  for (const CVector& v : nullspace_basis(system, tol)) spanning.push_back(alg.from_coordinates(v));
  const int n = alg.ambient_dim();
  FixedPointContext ctx;
  ctx.action = act;
  ctx.fixed = {alg, hermitian_orthonormal_basis(spanning, n, tol)};
  if (!verify_subalgebra(ctx.fixed, tol)) {
    throw Error(ErrorCode::InvalidAction, "fixed points do not form a *-subalgebra");
  }

  // Split the centre with one generic central element.
  Rng rng(kGenericSeed);
  const std::vector<CMatrix> centre = commutant_within(ctx.fixed.basis, ctx.fixed.basis, tol);
  const CMatrix z = generic_element(centre, rng);
  const HermitianEigen ez = hermitian_eigen(z, tol);
  const double gap = std::sqrt(tol.eq_tol) * std::max(1.0, max_abs(z));
  {
    int start = 0;
    for (int size : clusters(ez.values, gap)) {
      const CMatrix q = ez.vectors.middleCols(start, size);
      ctx.central_projections.push_back(q * q.adjoint());
      start += size;
    }
  }
  std::stable_sort(ctx.central_projections.begin(), ctx.central_projections.end(),
                   [&](const CMatrix& a, const CMatrix& b) { return projection_before(a, b, tol); });

  std::vector<int> dims;
  std::vector<std::vector<CMatrix>> summand_units;
  std::vector<CMatrix> w_cols;
  for (const CMatrix& p : ctx.central_projections) {
    std::vector<CMatrix> cut;
    for (const CMatrix& b : ctx.fixed.basis) cut.push_back(b * p);
    const std::vector<CMatrix> summand = hermitian_orthonormal_basis(cut, n, tol);
    const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(summand.size()))));
    if (k * k != static_cast<int>(summand.size())) {
      throw Error(ErrorCode::InvalidAction, "central summand is not a full matrix algebra");
    }
    // Minimal projections from a generic element restricted to range(p).
    const CMatrix q = range_basis(p, tol);
    const CMatrix y = generic_element(summand, rng);
    const HermitianEigen ey = hermitian_eigen(hermitian_part(q.adjoint() * y * q), tol);
    const std::vector<int> sizes = clusters(ey.values, std::sqrt(tol.eq_tol) * std::max(1.0, max_abs(y)));
    if (static_cast<int>(sizes.size()) != k) {
      throw Error(ErrorCode::InvalidAction, "could not isolate minimal projections");
    }
    const int mult = sizes.front();
    std::vector<CMatrix> e;
    int start = 0;
    for (int size : sizes) {
      if (size != mult) throw Error(ErrorCode::InvalidAction, "unequal minimal projection ranks");
      const CMatrix v = q * ey.vectors.middleCols(start, size);
      e.push_back(v * v.adjoint());
      start += size;
    }
    // f_{i1} = e_i B e_1 / sqrt(mu) with B the summand element of largest overlap.
    std::vector<CMatrix> col1(static_cast<size_t>(k));
    col1[0] = e[0];
    for (int i = 1; i < k; ++i) {
      CMatrix best;
      double best_norm = -1.0;
      for (const CMatrix& b : summand) {
        const CMatrix x = e[static_cast<size_t>(i)] * b * e[0];
        const double nrm = x.norm();
        if (nrm > best_norm + tol.eq_tol) {
          best_norm = nrm;
          best = x;
        }
      }
      const double mu = (best.adjoint() * best).trace().real() / mult;
      col1[static_cast<size_t>(i)] = best / std::sqrt(mu);
    }
    std::vector<CMatrix> units(static_cast<size_t>(k * k));
    for (int i = 0; i < k; ++i) {
      for (int j = 0; j < k; ++j) {
        units[static_cast<size_t>(i * k + j)] = col1[static_cast<size_t>(i)] * col1[static_cast<size_t>(j)].adjoint();
      }
    }
    const CMatrix u = range_basis(e[0], tol);
    for (int i = 0; i < k; ++i) {
      for (int l = 0; l < mult; ++l) w_cols.push_back(col1[static_cast<size_t>(i)] * u.col(l));
    }
    dims.push_back(k);
    ctx.multiplicities.push_back(mult);
    summand_units.push_back(std::move(units));
  }
  ctx.block_form = StarAlgebra(dims);
  for (int kk = 0; kk < ctx.block_form.basis_size(); ++kk) {
    const auto [c, i, j] = ctx.block_form.unit_index(kk);
    ctx.units.push_back(summand_units[static_cast<size_t>(c)][static_cast<size_t>(i * dims[static_cast<size_t>(c)] + j)]);
  }
  ctx.W = CMatrix(n, static_cast<Eigen::Index>(w_cols.size()));
  for (size_t i = 0; i < w_cols.size(); ++i) ctx.W.col(static_cast<Eigen::Index>(i)) = w_cols[i];
  return ctx;
}

CPMap restrict_E(const CPMap& phi, const FixedPointContext& ctx, const Tolerances& tol) {
  if (invariance_defect(phi, ctx.action) > tol.eq_tol) {
    throw Error(ErrorCode::NotInvariant, "restrict_E needs an invariant map");
  }
  std::vector<CMatrix> images;
  for (const CMatrix& f : ctx.units) images.push_back(phi.apply(f));
  return CPMap::from_unit_images(ctx.block_form, phi.codomain_dim(), images, tol);
}

CPMap extend_Einv(const CPMap& psi, const FixedPointContext& ctx, const Tolerances& tol) {
  if (!(psi.domain() == ctx.block_form)) {
    throw Error(ErrorCode::DimensionMismatch, "psi must act on the block form of the fixed-point algebra");
  }
  const StarAlgebra& alg = ctx.action.algebra();
  std::vector<CMatrix> images;
  for (int k = 0; k < alg.basis_size(); ++k) {
    images.push_back(psi.apply(ctx.pull_back(conditional_expectation(ctx.action, alg.basis_unit(k)))));
  }
  return CPMap::from_unit_images(alg, psi.codomain_dim(), images, tol);
}

HullReport hull_experiment(const std::vector<CPMap>& extreme, const GroupAction& act, int trials,
                           std::uint64_t seed, const Budget& budget, const Tolerances& tol) {
  if (extreme.empty()) throw Error(ErrorCode::UncertifiedInput, "empty extreme list");
  for (size_t i = 0; i < extreme.size(); ++i) {
    const ExtremalityReport r = extremality_verdict(extreme[i], act, budget, tol);
    if (r.verdict != Verdict::ExtremeCertified) {
      throw Error(ErrorCode::UncertifiedInput, "map " + std::to_string(i) + " is not certified extreme");
    }
  }
  const int d = extreme.front().codomain_dim();
  const StarAlgebra& alg = act.algebra();
  HullReport rep;
  rep.algebra_factor = alg.num_blocks() == 1;
  rep.algebra_commutative = std::all_of(alg.block_dims().begin(), alg.block_dims().end(), [](int n) { return n == 1; });
  rep.note = "finite hull membership only; the closure statement is not tested";

  Rng rng(seed);
  Rng held_rng(seed ^ kGenericSeed);
  const CPMap held_out = twirl(random_ucp(held_rng, alg, d, 2, tol), act, tol);
  rep.held_out_distance = std::numeric_limits<double>::infinity();
  const int m = static_cast<int>(extreme.size());
  for (int t = 0; t < trials; ++t) {
    const std::vector<CMatrix> coeffs = random_coefficients(rng, m, d);
    CCombination c;
    for (int i = 0; i < m; ++i) c.terms.push_back({coeffs[static_cast<size_t>(i)], extreme[static_cast<size_t>(i)]});
    const CPMap combo = cstar_combine(c, tol);
    ++rep.trials;
    const MapValidation v = validate_map(combo, &act, tol);
    if (v.cp && v.unital && v.invariant.value_or(false)) ++rep.members;
    Budget b = budget;
    b.seed = budget.seed + static_cast<std::uint64_t>(t);
    ++rep.verdicts[to_string(extremality_verdict(combo, act, b, tol).verdict)];
    rep.held_out_distance = std::min(rep.held_out_distance, choi_distance(combo, held_out));
  }
  return rep;
}

}  // namespace ccx
