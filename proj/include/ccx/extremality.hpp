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

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccx/radon_nikodym.hpp"

namespace ccx {

struct CertificateFlags {
  bool pure_state_inflation = false;
  bool multiplicative = false;
  bool range_invariant = false;
  bool pure_cp = false;
  bool disjoint_pure_sum = false;

  bool any() const {
    return pure_state_inflation || multiplicative || range_invariant || pure_cp || disjoint_pure_sum;
  }
  /// Name of the first flag that is set, in declaration order; empty if none.
  std::string first() const;
};

CertificateFlags sufficient_conditions(const RNContext& ctx, const Tolerances& tol);
CertificateFlags sufficient_conditions(const CPMap& phi, const GroupAction& act, const Tolerances& tol);

// Individual tests, exposed for diagnostics.
bool is_pure_state_inflation(const CPMap& phi, const Tolerances& tol);
bool is_multiplicative(const CPMap& phi, const Tolerances& tol);
bool is_range_invariant(const RNContext& ctx, const Tolerances& tol);
bool is_pure_cp(const StinespringTriple& t);
bool is_disjoint_pure_sum(const CPMap& phi, const Tolerances& tol);

struct SplitResult {
  CMatrix T1;
  CMatrix T2;
  CPMap phi1;
  CPMap phi2;
  double reconstruction_error = 0.0;
};

/// S1 = alpha T, S2 = I - alpha T, T_i = (V* S_i V)^{1/2},
/// phi_i(a) = T_i^{-1} V* S_i^{1/2} pi(a) S_i^{1/2} V T_i^{-1}.
SplitResult split_by_T(const RNContext& ctx, const RNOperator& t, double alpha, const Tolerances& tol);

enum class Equivalence { Equivalent, NotEquivalent, Unknown };
const char* to_string(Equivalence e);

struct EquivalenceOptions {
  int word_len = 6;
  int attempts = 32;
  std::uint64_t seed = 0;
  /// Words are enumerated exhaustively by length until this many are used;
  /// longer lengths then get `random_words` seeded words each.
  int max_words = 4096;
  int random_words = 256;
};

struct EquivalenceResult {
  Equivalence status = Equivalence::Unknown;
  std::optional<CMatrix> U;  ///< phi2(.) = U* phi1(.) U
  std::string reason;
};

/// Stage 1 only: a reason string when a necessary invariant differs by a
/// clear margin (1e3 * eq_tol, relative), empty otherwise.
std::string invariant_mismatch(const CPMap& phi1, const CPMap& phi2, const EquivalenceOptions& opt,
                               const Tolerances& tol);

EquivalenceResult unitary_equivalence(const CPMap& phi1, const CPMap& phi2, const EquivalenceOptions& opt,
                                      const Tolerances& tol);

enum class Verdict { ExtremeCertified, NotExtreme, LikelyExtreme, Inconclusive };
const char* to_string(Verdict v);

struct Budget {
  int samples = 16;
  std::uint64_t seed = 0;
  int word_len = 6;
};

struct Witness {
  CMatrix T;
  double alpha = 0.5;
  SplitResult split;
  std::string reason;
};

struct ExtremalityReport {
  CertificateFlags flags;
  Verdict verdict = Verdict::Inconclusive;
  std::string certificate;  ///< flag name or "trivial_commutant"
  std::optional<Witness> witness;
  int commutant_dim = 0;
  int samples_tested = 0;
  int samples_skipped = 0;
  int samples_unknown = 0;
};

ExtremalityReport extremality_verdict(const CPMap& phi, const GroupAction& act, const Budget& budget,
                                      const Tolerances& tol);

/// Rebuilds the split from scratch and checks it is a proper invariant 2-split
/// whose first summand differs from phi by a spectral invariant.
bool verify_witness(const CPMap& phi, const GroupAction& act, const Witness& w, const Tolerances& tol);

/// Extremality in the full UCP set: {K_{b,i}* K_{b,j}} linearly independent.
bool linear_extremality_check(const CPMap& phi, const Tolerances& tol);

struct MidpointResult {
  bool found = false;
  int attempts = 0;
  int kernel_dim = 0;      ///< dimension of {H in commutant : V*HV = 0}
  double largest = 0.0;    ///< largest |Delta| seen
  std::optional<CPMap> delta;
};

/// Seeded search for phi = (phi + D)/2 + (phi - D)/2 with phi +/- D invariant UCP.
MidpointResult midpoint_perturbation_search(const RNContext& ctx, int attempts, std::uint64_t seed,
                                            double threshold, const Tolerances& tol);

}  // namespace ccx
