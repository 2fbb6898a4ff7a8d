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

#include "ccx/extremality.hpp"

#include <algorithm>
#include <cmath>

#include "ccx/random.hpp"

namespace ccx {

namespace {

constexpr std::uint64_t kGenericSeed = 0x9e3779b97f4a7c15ULL;

/// Margin separating a definite mismatch from rounding noise.
double definite_tol(const Tolerances& tol) { return 1e3 * tol.eq_tol; }

/// E_ii, E_ij + E_ji, i(E_ij - E_ji) for every block.
std::vector<CMatrix> hermitian_units(const StarAlgebra& alg) {
  std::vector<CMatrix> out;
  const Complex iu(0.0, 1.0);
  for (int b = 0; b < alg.num_blocks(); ++b) {
    const int n = alg.block_dim(b);
    for (int i = 0; i < n; ++i) {
      out.push_back(alg.basis_unit(alg.unit_position(b, i, i)));
      for (int j = i + 1; j < n; ++j) {
        const CMatrix eij = alg.basis_unit(alg.unit_position(b, i, j));
        const CMatrix eji = alg.basis_unit(alg.unit_position(b, j, i));
        out.push_back(eij + eji);
        out.push_back(iu * (eij - eji));
      }
    }
  }
  return out;
}

bool differs(Complex a, Complex b, double margin) {
  return std::abs(a - b) > margin * std::max({1.0, std::abs(a), std::abs(b)});
}

}  // namespace

std::string CertificateFlags::first() const {
  if (pure_state_inflation) return "pure_state_inflation";
  if (multiplicative) return "multiplicative";
  if (range_invariant) return "range_invariant";
  if (pure_cp) return "pure_cp";
  if (disjoint_pure_sum) return "disjoint_pure_sum";
  return {};
}

bool is_pure_state_inflation(const CPMap& phi, const Tolerances& tol) {
  const StarAlgebra& alg = phi.domain();
  const int d = phi.codomain_dim();
  for (int k = 0; k < alg.basis_size(); ++k) {
    const CMatrix& img = phi.image(k);
    if (max_abs(img - img(0, 0) * identity(d)) > tol.eq_tol) return false;
  }
  int rank = 0;
  for (int b = 0; b < alg.num_blocks(); ++b) {
    const int n = alg.block_dim(b);
    CMatrix rho(n, n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) rho(j, i) = phi.image(alg.unit_position(b, i, j))(0, 0);
    }
    rank += numerical_rank(rho, tol);
  }
  return rank == 1;
}

bool is_multiplicative(const CPMap& phi, const Tolerances& tol) {
  const StarAlgebra& alg = phi.domain();
  const int d = phi.codomain_dim();
  for (int k = 0; k < alg.basis_size(); ++k) {
    const auto uk = alg.unit_index(k);
    for (int l = 0; l < alg.basis_size(); ++l) {
      const auto ul = alg.unit_index(l);
      CMatrix lhs = CMatrix::Zero(d, d);
      if (uk.block == ul.block && uk.col == ul.row) lhs = phi.image(alg.unit_position(uk.block, uk.row, ul.col));
      if (max_abs(lhs - phi.image(k) * phi.image(l)) > tol.eq_tol) return false;
    }
  }
  return true;
}

bool is_range_invariant(const RNContext& ctx, const Tolerances& tol) {
  const CMatrix p = ctx.triple.V * ctx.triple.V.adjoint();
  for (const CMatrix& s : ctx.commutant) {
    if (max_abs(p * s - s * p) > tol.eq_tol) return false;
  }
  return true;
}

bool is_pure_cp(const StinespringTriple& t) {
  int dim = 0;
  for (int r : t.multiplicities) dim += r * r;
  return dim == 1;
}

bool is_disjoint_pure_sum(const CPMap& phi, const Tolerances& tol) {
  const int d = phi.codomain_dim();
  const std::vector<CMatrix> comm = commutant(phi.images(), d, tol);
  Rng rng(kGenericSeed);
  CMatrix h = CMatrix::Zero(d, d);
  for (const CMatrix& c : comm) h += rng.normal() * c;
  const HermitianEigen eig = hermitian_eigen(hermitian_part(h), tol);
  // Eigenspaces of a generic central-ish element give the pieces H_i.
  const double gap = std::sqrt(tol.eq_tol) * std::max(1.0, max_abs(h));
  std::vector<int> used_blocks;
  int start = 0;
  while (start < d) {
    int end = start + 1;
    while (end < d && eig.values(end - 1) - eig.values(end) <= gap) ++end;
    const CMatrix piece = eig.vectors.middleCols(start, end - start);
    const CPMap part = compress(phi, piece, tol);
    int owner = -1;
    int rank = 0;
    for (int b = 0; b < part.domain().num_blocks(); ++b) {
      const int rb = numerical_rank(part.choi_blocks()[static_cast<size_t>(b)], tol);
      if (rb > 0) owner = b;
      rank += rb;
    }
    if (rank != 1) return false;
    if (std::find(used_blocks.begin(), used_blocks.end(), owner) != used_blocks.end()) return false;
    used_blocks.push_back(owner);
    start = end;
  }
  return true;
}

CertificateFlags sufficient_conditions(const RNContext& ctx, const Tolerances& tol) {
  CertificateFlags f;
  f.pure_state_inflation = is_pure_state_inflation(ctx.phi, tol);
  f.multiplicative = is_multiplicative(ctx.phi, tol);
  f.range_invariant = is_range_invariant(ctx, tol);
  f.pure_cp = is_pure_cp(ctx.triple);
  f.disjoint_pure_sum = is_disjoint_pure_sum(ctx.phi, tol);
  return f;
}

CertificateFlags sufficient_conditions(const CPMap& phi, const GroupAction& act, const Tolerances& tol) {
  return sufficient_conditions(build_context(phi, act, tol), tol);
}

SplitResult split_by_T(const RNContext& ctx, const RNOperator& op, double alpha, const Tolerances& tol) {
  const StinespringTriple& t = ctx.triple;
  const int dim = t.dilation_dim;
  if (op.T.rows() != dim || op.T.cols() != dim) throw Error(ErrorCode::DimensionMismatch, "T must be D x D");
  if (commutator_defect(ctx, op.T) > tol.eq_tol * std::max(1.0, max_abs(op.T))) {
    throw Error(ErrorCode::NotInCommutant, "T does not commute with pi(A) and U(G)");
  }
  const CMatrix s1 = hermitian_part(alpha * op.T);
  const CMatrix s2 = hermitian_part(identity(dim) - s1);
  if (!psd_check(s1, tol) || !psd_check(s2, tol)) {
    throw Error(ErrorCode::OutOfInterval, "alpha T must lie between 0 and I");
  }
  SplitResult r;
  std::vector<CMatrix> images1;
  std::vector<CMatrix> images2;
  const CMatrix* s[2] = {&s1, &s2};
  CMatrix* coeff[2] = {&r.T1, &r.T2};
  std::vector<CMatrix>* images[2] = {&images1, &images2};
  for (int i = 0; i < 2; ++i) {
    const CMatrix ri = hermitian_part(t.V.adjoint() * *s[i] * t.V);
    HermRoots roots;
    try {
      roots = herm_roots(ri, tol);
    } catch (const Error&) {
      throw Error(ErrorCode::NotPhiInvertible, "V* S V is not invertible");
    }
    if (!roots.inv_sqrt) throw Error(ErrorCode::NotPhiInvertible, "V* S V is not invertible");
    *coeff[i] = roots.sqrt;
    const CMatrix w = herm_roots(*s[i], tol).sqrt * t.V * *roots.inv_sqrt;
    for (const CMatrix& p : t.pi_units) images[i]->push_back(w.adjoint() * p * w);
  }
  r.phi1 = CPMap::from_unit_images(t.algebra, t.codomain_dim(), images1, tol);
  r.phi2 = CPMap::from_unit_images(t.algebra, t.codomain_dim(), images2, tol);
  const CPMap back = cstar_combine({{{r.T1, r.phi1}, {r.T2, r.phi2}}}, tol);
  r.reconstruction_error = choi_distance(back, ctx.phi);
  return r;
}

const char* to_string(Equivalence e) {
  switch (e) {
    case Equivalence::Equivalent: return "equivalent";
    case Equivalence::NotEquivalent: return "not_equivalent";
    case Equivalence::Unknown: return "unknown";
  }
  return "unknown";
}

std::string invariant_mismatch(const CPMap& phi1, const CPMap& phi2, const EquivalenceOptions& opt,
                               const Tolerances& tol) {
  if (!(phi1.domain() == phi2.domain()) || phi1.codomain_dim() != phi2.codomain_dim()) {
    throw Error(ErrorCode::DimensionMismatch, "maps have different shapes");
  }
  const double margin = definite_tol(tol);
  for (size_t b = 0; b < phi1.choi_blocks().size(); ++b) {
    const RVector e1 = hermitian_eigen(phi1.choi_blocks()[b], tol).values;
    const RVector e2 = hermitian_eigen(phi2.choi_blocks()[b], tol).values;
    for (Eigen::Index k = 0; k < e1.size(); ++k) {
      if (differs(e1(k), e2(k), margin)) return "Choi spectrum differs in block " + std::to_string(b);
    }
  }
  const StarAlgebra& alg = phi1.domain();
  std::vector<CMatrix> l1;
  std::vector<CMatrix> l2;
  for (const CMatrix& h : hermitian_units(alg)) {
    l1.push_back(phi1.apply(h));
    l2.push_back(phi2.apply(h));
  }
  const int letters = static_cast<int>(l1.size());
  auto describe = [](const std::vector<int>& w) {
    std::string s = "trace of word (";
    for (size_t i = 0; i < w.size(); ++i) s += (i ? "," : "") + std::to_string(w[i]);
    return s + ") differs";
  };
  // Exhaustive by length while under the cap.
  struct Word {
    std::vector<int> letters;
    CMatrix p1;
    CMatrix p2;
  };
  const int d = phi1.codomain_dim();
  std::vector<Word> level{{{}, identity(d), identity(d)}};
  int used = 0;
  int len = 1;
  for (; len <= opt.word_len; ++len) {
    if (used + static_cast<long long>(level.size()) * letters > opt.max_words) break;
    std::vector<Word> next;
    next.reserve(level.size() * static_cast<size_t>(letters));
    for (const Word& w : level) {
      for (int a = 0; a < letters; ++a) {
        Word nw{w.letters, w.p1 * l1[static_cast<size_t>(a)], w.p2 * l2[static_cast<size_t>(a)]};
        nw.letters.push_back(a);
        if (differs(nw.p1.trace(), nw.p2.trace(), margin)) return describe(nw.letters);
        next.push_back(std::move(nw));
      }
    }
    used += static_cast<int>(next.size());
    level = std::move(next);
  }
  Rng rng(opt.seed ^ kGenericSeed);
  for (; len <= opt.word_len; ++len) {
    for (int s = 0; s < opt.random_words; ++s) {
      std::vector<int> w;
      CMatrix p1 = identity(d);
      CMatrix p2 = identity(d);
      for (int i = 0; i < len; ++i) {
        const int a = rng.index(letters);
        w.push_back(a);
        p1 = p1 * l1[static_cast<size_t>(a)];
        p2 = p2 * l2[static_cast<size_t>(a)];
      }
      if (differs(p1.trace(), p2.trace(), margin)) return describe(w);
    }
  }
  return {};
}

EquivalenceResult unitary_equivalence(const CPMap& phi1, const CPMap& phi2, const EquivalenceOptions& opt,
                                      const Tolerances& tol) {
  EquivalenceResult res;
  res.reason = invariant_mismatch(phi1, phi2, opt, tol);
  if (!res.reason.empty()) {
    res.status = Equivalence::NotEquivalent;
    return res;
  }
  // Intertwiners X phi2(h) = phi1(h) X over Hermitian letters h.
  const int d = phi1.codomain_dim();
  const CMatrix eye = identity(d);
  const std::vector<CMatrix> units = hermitian_units(phi1.domain());
  CMatrix system(static_cast<Eigen::Index>(units.size()) * d * d, d * d);
  for (size_t k = 0; k < units.size(); ++k) {
    const CMatrix a = phi1.apply(units[k]);
    const CMatrix b = phi2.apply(units[k]);
    system.middleRows(static_cast<Eigen::Index>(k) * d * d, d * d) = kron(b.transpose(), eye) - kron(eye, a);
  }
  const CMatrix basis = nullspace_matrix(system, tol);
  if (basis.cols() == 0) {
    res.reason = "no nonzero intertwiner";
    return res;
  }
  Rng rng(opt.seed);
  for (int attempt = 0; attempt < opt.attempts; ++attempt) {
    const CVector coeffs = rng.gaussian(basis.cols(), 1);
    const CMatrix x = unvec(basis * coeffs, d, d);
    CMatrix u;
    try {
      u = polar_unitary(x, tol);
    } catch (const Error&) {
      continue;
    }
    double defect = 0.0;
    for (int k = 0; k < phi1.domain().basis_size(); ++k) {
      defect = std::max(defect, max_abs(u.adjoint() * phi1.image(k) * u - phi2.image(k)));
    }
    if (defect <= tol.eq_tol) {
      res.status = Equivalence::Equivalent;
      res.U = u;
      res.reason.clear();
      return res;
    }
  }
  res.reason = "no invertible intertwiner found in " + std::to_string(opt.attempts) + " attempts";
  return res;
}

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::ExtremeCertified: return "extreme_certified";
    case Verdict::NotExtreme: return "not_extreme";
    case Verdict::LikelyExtreme: return "likely_extreme";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "inconclusive";
}

bool verify_witness(const CPMap& phi, const GroupAction& act, const Witness& w, const Tolerances& tol) {
  try {
    const RNContext ctx = build_context(phi, act, tol);
    const RNOperator op = make_operator(ctx, w.T, tol);
    const SplitResult s = split_by_T(ctx, op, w.alpha, tol);
    if (s.reconstruction_error > tol.eq_tol) return false;
    for (const CPMap* m : {&s.phi1, &s.phi2}) {
      const MapValidation v = validate_map(*m, &act, tol);
      if (!v.cp || !v.unital || !v.invariant.value_or(false)) return false;
    }
    if (!is_proper({{{s.T1, s.phi1}, {s.T2, s.phi2}}}, tol)) return false;
    return !invariant_mismatch(s.phi1, phi, EquivalenceOptions{}, tol).empty();
  } catch (const Error&) {
    return false;
  }
}

ExtremalityReport extremality_verdict(const CPMap& phi, const GroupAction& act, const Budget& budget,
                                      const Tolerances& tol) {
  const MapValidation v = validate_map(phi, &act, tol);
  if (!v.invariant.value_or(false)) throw Error(ErrorCode::NotInvariant, "map is not invariant");
  const RNContext ctx = build_context(phi, act, tol);
  ExtremalityReport rep;
  rep.flags = sufficient_conditions(ctx, tol);
  rep.commutant_dim = static_cast<int>(ctx.commutant.size());
  if (rep.flags.any()) {
    rep.verdict = Verdict::ExtremeCertified;
    rep.certificate = rep.flags.first();
    return rep;
  }
  if (rep.commutant_dim <= 1) {
    rep.verdict = Verdict::ExtremeCertified;
    rep.certificate = "trivial_commutant";
    return rep;
  }
  // Sweep first, then random draws; a larger budget only appends samples.
  std::vector<RNOperator> samples = interval_sample(ctx, budget.seed, SampleMode::BasisSweep, 0, tol);
  const std::vector<RNOperator> extra = interval_sample(ctx, budget.seed, SampleMode::Random, budget.samples, tol);
  samples.insert(samples.end(), extra.begin(), extra.end());

  for (size_t i = 0; i < samples.size(); ++i) {
    const RNOperator& op = samples[i];
    if (!op.phi_invertible) {
      ++rep.samples_skipped;
      continue;
    }
    ++rep.samples_tested;
    const CPMap psi = rn_map(ctx, op.T);
    const HermRoots q = herm_roots(hermitian_part(psi.apply(phi.domain().unit())), tol);
    if (!q.inv_sqrt) {
      ++rep.samples_skipped;
      --rep.samples_tested;
      continue;
    }
    const CPMap normalized = compress(psi, *q.inv_sqrt, tol);
    EquivalenceOptions opt;
    opt.word_len = budget.word_len;
    opt.seed = budget.seed + 0x100000001b3ULL * (i + 1);
    const EquivalenceResult eq = unitary_equivalence(normalized, phi, opt, tol);
    if (eq.status == Equivalence::Equivalent) continue;
    if (eq.status == Equivalence::Unknown) {
      ++rep.samples_unknown;
      continue;
    }
    Witness w;
    w.T = op.T;
    w.alpha = 0.5;
    w.reason = eq.reason;
    try {
      w.split = split_by_T(ctx, op, w.alpha, tol);
    } catch (const Error&) {
      ++rep.samples_unknown;
      continue;
    }
    if (!verify_witness(phi, act, w, tol)) {
      ++rep.samples_unknown;
      continue;
    }
    rep.verdict = Verdict::NotExtreme;
    rep.witness = std::move(w);
    return rep;
  }
  rep.verdict = rep.samples_unknown > 0 ? Verdict::Inconclusive : Verdict::LikelyExtreme;
  return rep;
}

bool linear_extremality_check(const CPMap& phi, const Tolerances& tol) {
  const int d = phi.codomain_dim();
  std::vector<CVector> cols;
  for (const auto& ks : phi.kraus()) {
    for (const CMatrix& ki : ks) {
      for (const CMatrix& kj : ks) cols.push_back(vec(ki.adjoint() * kj));
    }
  }
  if (cols.empty()) return true;
  CMatrix m(d * d, static_cast<Eigen::Index>(cols.size()));
  for (size_t j = 0; j < cols.size(); ++j) m.col(static_cast<Eigen::Index>(j)) = cols[j];
  if (m.cols() > m.rows()) return false;
  // Zero products already make the family dependent.
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    if (m.col(j).cwiseAbs().maxCoeff() <= tol.eq_tol) return false;
  }
  return numerical_rank(m, tol) == m.cols();
}

MidpointResult midpoint_perturbation_search(const RNContext& ctx, int attempts, std::uint64_t seed,
                                            double threshold, const Tolerances& tol) {
  MidpointResult out;
  const StinespringTriple& t = ctx.triple;
  const int d = t.codomain_dim();
  const Eigen::Index m = static_cast<Eigen::Index>(ctx.commutant.size());
  // Real linear map x -> V*(sum x_j S_j)V; its kernel keeps phi +/- Delta unital.
  RMatrix unit_map(2 * d * d, m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const CMatrix r = t.V.adjoint() * ctx.commutant[static_cast<size_t>(j)] * t.V;
    for (int q = 0; q < d * d; ++q) {
      unit_map(2 * q, j) = r(q % d, q / d).real();
      unit_map(2 * q + 1, j) = r(q % d, q / d).imag();
    }
  }
  Eigen::JacobiSVD<RMatrix> svd(unit_map, Eigen::ComputeFullV);
  const RVector& sv = svd.singularValues();
  const double cut = tol.rank_cut * std::max(1.0, sv.size() ? sv(0) : 0.0);
  Eigen::Index rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  const RMatrix kernel = svd.matrixV().rightCols(m - rank);
  out.kernel_dim = static_cast<int>(kernel.cols());

  Rng rng(seed);
  for (int a = 0; a < attempts; ++a) {
    ++out.attempts;
    RVector x(m);
    for (Eigen::Index j = 0; j < m; ++j) x(j) = rng.normal();
    const RVector y = kernel * (kernel.transpose() * x);
    if (y.norm() <= threshold) continue;
    CMatrix h = CMatrix::Zero(t.dilation_dim, t.dilation_dim);
    for (Eigen::Index j = 0; j < m; ++j) h += y(j) * ctx.commutant[static_cast<size_t>(j)];
    Eigen::JacobiSVD<CMatrix> hs(h);
    h /= hs.singularValues()(0);
    const CPMap delta = rn_map(ctx, h);
    double size = 0.0;
    for (const CMatrix& c : delta.choi_blocks()) size = std::max(size, max_abs(c));
    out.largest = std::max(out.largest, size);
    if (size <= threshold) continue;
    bool ok = true;
    for (double sign : {1.0, -1.0}) {
      const CPMap side = linear_combination(1.0, ctx.phi, sign, delta, tol);
      const MapValidation v = validate_map(side, &ctx.action, tol);
      ok = ok && v.cp && v.unital && v.invariant.value_or(false);
    }
    if (ok) {
      out.found = true;
      out.delta = delta;
      return out;
    }
  }
  return out;
}

}  // namespace ccx
