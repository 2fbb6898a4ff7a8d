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

#include <string>
#include <vector>

#include "ccx/star_algebra.hpp"

namespace ccx {

/// A finite group given by its multiplication table: table[g][h] = gh.
class FiniteGroup {
 public:
  FiniteGroup() : FiniteGroup(std::vector<std::vector<int>>{{0}}, 0) {}
  FiniteGroup(std::vector<std::vector<int>> table, int identity);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(int n);
  /// Direct product G x H, element (g, h) stored at index g * |H| + h.
  static FiniteGroup product(const FiniteGroup& g, const FiniteGroup& h);
  /// Symmetric group on three letters; elements ordered as the permutations
  /// e, (12), (23), (13), (123), (132) in one-line notation.
  static FiniteGroup symmetric3();

  int order() const { return static_cast<int>(table_.size()); }
  int identity() const { return identity_; }
  int multiply(int g, int h) const;
  /// Inverse of g; throws BadIndex when the table has no inverse for g.
  int inverse(int g) const;
  const std::vector<std::vector<int>>& table() const { return table_; }

  /// Group-axiom failures (empty when the table defines a group).
  std::vector<std::string> axiom_failures() const;

 private:
  std::vector<std::vector<int>> table_;
  int identity_ = 0;
};

enum class ActionKind { Inner, General };

/// An action of a finite group on a StarAlgebra. Inner actions are
/// tau_g(a) = W_g* a W_g; general actions are linear maps on matrix-unit
/// coordinates, coordinates(tau_g(a)) = M_g coordinates(a).
class GroupAction {
 public:
  GroupAction() = default;

  static GroupAction inner(FiniteGroup group, StarAlgebra algebra, std::vector<CMatrix> unitaries);
  static GroupAction general(FiniteGroup group, StarAlgebra algebra, std::vector<CMatrix> maps);
  static GroupAction trivial(StarAlgebra algebra);

  const FiniteGroup& group() const { return group_; }
  const StarAlgebra& algebra() const { return algebra_; }
  ActionKind kind() const { return kind_; }
  /// W_g for inner actions, M_g for general ones.
  const std::vector<CMatrix>& matrices() const { return matrices_; }

 private:
  FiniteGroup group_;
  StarAlgebra algebra_;
  ActionKind kind_ = ActionKind::Inner;
  std::vector<CMatrix> matrices_;
};

struct ValidationReport {
  bool valid = true;
  std::vector<std::string> failures;
};

ValidationReport validate_action(const GroupAction& act, const Tolerances& tol);

/// tau_g(a).
CMatrix apply_action(const GroupAction& act, int g, const CMatrix& a);

/// The group average (1/|G|) sum_g tau_g(a).
CMatrix conditional_expectation(const GroupAction& act, const CMatrix& a);

/// Throws InvalidAction with the first failure when validate_action rejects.
void require_valid_action(const GroupAction& act, const Tolerances& tol);

}  // namespace ccx
