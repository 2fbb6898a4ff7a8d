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

#include "ccx/radon_nikodym.hpp"

#include "ccx/random.hpp"

namespace ccx {

namespace {

double operator_norm(const CMatrix& m) {
  Eigen::JacobiSVD<CMatrix> svd(m);
  return svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
}

/// {(+)_b I_{n_b} (x) E_kl} spans pi(A)' for the standard form.
std::vector<CMatrix> standard_commutant_ansatz(const StinespringTriple& t) {
  std::vector<CMatrix> out;
  int off = 0;
  for (int b = 0; b < t.algebra.num_blocks(); ++b) {
    const int n = t.algebra.block_dim(b);
    const int r = t.multiplicities[static_cast<size_t>(b)];
    for (int k = 0; k < r; ++k) {
      for (int l = 0; l < r; ++l) {
        CMatrix x = CMatrix::Zero(t.dilation_dim, t.dilation_dim);
        for (int i = 0; i < n; ++i) x(off + i * r + k, off + i * r + l) = 1.0;
        out.push_back(std::move(x));
      }
    }
    off += n * r;
  }
  return out;
}

}  // namespace

std::vector<CMatrix> dilation_commutant(const StinespringTriple& t, const CovariantUnitaries& u,
                                        const Tolerances& tol) {
  if (t.multiplicities.empty()) {
    std::vector<CMatrix> gens = t.pi_units;
    gens.insert(gens.end(), u.U.begin(), u.U.end());
    return commutant(gens, t.dilation_dim, tol);
  }
  return commutant_within(standard_commutant_ansatz(t), u.U, tol);
}

RNContext build_context(const CPMap& phi, const GroupAction& act, const Tolerances& tol) {
  RNContext ctx;
  ctx.phi = phi;
  ctx.action = act;
  ctx.triple = minimal_dilation(phi, tol);
  ctx.covariant = covariant_unitaries(phi, ctx.triple, act, tol);
  ctx.commutant = dilation_commutant(ctx.triple, ctx.covariant, tol);
  return ctx;
}

bool is_phi_invertible(const RNContext& ctx, const CMatrix& t, const Tolerances& tol) {
  const CMatrix r = hermitian_part(ctx.triple.V.adjoint() * t * ctx.triple.V);
  const HermitianEigen e = hermitian_eigen(r, tol);
  const Eigen::Index n = e.values.size();
  return n > 0 && e.values(n - 1) > tol.rank_cut * std::max(1.0, e.values(0));
}

RNOperator make_operator(const RNContext& ctx, const CMatrix& t, const Tolerances& tol) {
  return {t, is_phi_invertible(ctx, t, tol)};
}

double commutator_defect(const RNContext& ctx, const CMatrix& t) {
  double worst = 0.0;
  for (const CMatrix& p : ctx.triple.pi_units) worst = std::max(worst, max_abs(p * t - t * p));
  for (const CMatrix& u : ctx.covariant.U) worst = std::max(worst, max_abs(u * t - t * u));
  return worst;
}

CPMap rn_map(const RNContext& ctx, const CMatrix& t) {
  const StinespringTriple& s = ctx.triple;
  const CMatrix tv = t * s.V;
  std::vector<CMatrix> images;
  for (const CMatrix& p : s.pi_units) images.push_back(s.V.adjoint() * p * tv);
  return CPMap::from_unit_images(s.algebra, s.codomain_dim(), images);
}

ForwardResult rn_forward(const RNContext& ctx, const RNOperator& op, const Tolerances& tol) {
  const CMatrix& t = op.T;
  if (t.rows() != ctx.triple.dilation_dim || t.cols() != ctx.triple.dilation_dim) {
    throw Error(ErrorCode::DimensionMismatch, "T must be D x D");
  }
  if (commutator_defect(ctx, t) > tol.eq_tol * std::max(1.0, max_abs(t))) {
    throw Error(ErrorCode::NotInCommutant, "T does not commute with pi(A) and U(G)");
  }
  if (!psd_check(t, tol) || !psd_check(identity(t.rows()) - t, tol)) {
    throw Error(ErrorCode::OutOfInterval, "T is not between 0 and I");
  }
  ForwardResult r;
  r.map = rn_map(ctx, t);
  const MapValidation v = validate_map(r.map, &ctx.action, tol);
  r.cp = v.cp;
  r.invariant = v.invariant.value_or(false);
  r.dominated = cp_leq(r.map, ctx.phi, tol);
  return r;
}

InverseResult rn_inverse(const RNContext& ctx, const CPMap& psi, const Tolerances& tol) {
  if (!(psi.domain() == ctx.phi.domain()) || psi.codomain_dim() != ctx.phi.codomain_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "psi and phi differ in shape");
  }
  if (invariance_defect(psi, ctx.action) > tol.eq_tol) {
    throw Error(ErrorCode::NotInvariant, "psi is not invariant");
  }
  if (!cp_leq(psi, ctx.phi, tol)) throw Error(ErrorCode::NotDominated, "psi is not dominated by phi");

  // Real least squares: sum_j x_j phi_{S_j}(E_k) = psi(E_k), split into Re/Im.
  const int d = ctx.phi.codomain_dim();
  const int units = ctx.phi.domain().basis_size();
  const Eigen::Index rows = 2 * static_cast<Eigen::Index>(units) * d * d;
  const Eigen::Index m = static_cast<Eigen::Index>(ctx.commutant.size());
  RMatrix a(rows, m);
  RVector rhs(rows);
  auto flatten = [&](const std::vector<CMatrix>& images, auto&& col) {
    Eigen::Index row = 0;
    for (const CMatrix& img : images) {
      for (Eigen::Index j = 0; j < d; ++j) {
        for (Eigen::Index i = 0; i < d; ++i) {
          col(row++) = img(i, j).real();
          col(row++) = img(i, j).imag();
        }
      }
    }
  };
  for (Eigen::Index j = 0; j < m; ++j) {
    const CPMap pj = rn_map(ctx, ctx.commutant[static_cast<size_t>(j)]);
    flatten(pj.images(), [&](Eigen::Index r) -> double& { return a(r, j); });
  }
  flatten(psi.images(), [&](Eigen::Index r) -> double& { return rhs(r); });

  const RVector x = a.completeOrthogonalDecomposition().solve(rhs);
  InverseResult out;
  out.residual = rows ? (a * x - rhs).cwiseAbs().maxCoeff() : 0.0;
  if (out.residual > tol.eq_tol) {
    throw Error(ErrorCode::ResidualTooLarge, "psi is not in the image of the commutant interval (residual " +
                                                 std::to_string(out.residual) + ")");
  }
  CMatrix t = CMatrix::Zero(ctx.triple.dilation_dim, ctx.triple.dilation_dim);
  for (Eigen::Index j = 0; j < m; ++j) t += x(j) * ctx.commutant[static_cast<size_t>(j)];
  out.op = make_operator(ctx, t, tol);
  return out;
}

std::vector<RNOperator> interval_sample(const RNContext& ctx, std::uint64_t seed, SampleMode mode, int count,
                                        const Tolerances& tol) {
  const int dim = ctx.triple.dilation_dim;
  const CMatrix eye = identity(dim);
  std::vector<CMatrix> sweep;
  for (const CMatrix& s : ctx.commutant) {
    const double nrm = operator_norm(s);
    if (nrm == 0.0) continue;
    const CMatrix half = s / (2.0 * nrm);
    sweep.push_back((eye + half) / 2.0);
    sweep.push_back((eye - half) / 2.0);
  }
  std::vector<RNOperator> out;
  if (mode == SampleMode::BasisSweep) {
    for (const CMatrix& t : sweep) out.push_back(make_operator(ctx, t, tol));
    return out;
  }
  if (sweep.empty()) return out;
  Rng rng(seed);
  for (int s = 0; s < count; ++s) {
    // Exponential weights normalised to the simplex.
    std::vector<double> w(sweep.size());
    double total = 0.0;
    for (double& x : w) {
      double u = rng.uniform();
      while (u <= 0.0) u = rng.uniform();
      x = -std::log(u);
      total += x;
    }
    CMatrix t = CMatrix::Zero(dim, dim);
    for (size_t i = 0; i < sweep.size(); ++i) t += (w[i] / total) * sweep[i];
    out.push_back(make_operator(ctx, hermitian_part(t), tol));
  }
  return out;
}

}  // namespace ccx
