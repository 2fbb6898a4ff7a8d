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

#include "ccx/group_action.hpp"

#include <algorithm>
#include <array>
#include <utility>

namespace ccx {

FiniteGroup::FiniteGroup(std::vector<std::vector<int>> table, int identity)
    : table_(std::move(table)), identity_(identity) {
  const int n = order();
  if (n == 0) throw Error(ErrorCode::BadIndex, "FiniteGroup: empty table");
  for (const auto& row : table_) {
    if (static_cast<int>(row.size()) != n) {
      throw Error(ErrorCode::DimensionMismatch, "FiniteGroup: table is not square");
    }
    for (int x : row) {
      if (x < 0 || x >= n) throw Error(ErrorCode::BadIndex, "FiniteGroup: entry out of range");
    }
  }
  if (identity_ < 0 || identity_ >= n) throw Error(ErrorCode::BadIndex, "FiniteGroup: identity index");
}

FiniteGroup FiniteGroup::trivial() { return FiniteGroup({{0}}, 0); }

FiniteGroup FiniteGroup::cyclic(int n) {
  if (n <= 0) throw Error(ErrorCode::BadIndex, "cyclic: order must be positive");
  std::vector<std::vector<int>> t(static_cast<size_t>(n), std::vector<int>(static_cast<size_t>(n)));
  for (int g = 0; g < n; ++g) {
    for (int h = 0; h < n; ++h) t[static_cast<size_t>(g)][static_cast<size_t>(h)] = (g + h) % n;
  }
  return FiniteGroup(std::move(t), 0);
}

FiniteGroup FiniteGroup::product(const FiniteGroup& a, const FiniteGroup& b) {
  const int na = a.order();
  const int nb = b.order();
  std::vector<std::vector<int>> t(static_cast<size_t>(na * nb), std::vector<int>(static_cast<size_t>(na * nb)));
  for (int g1 = 0; g1 < na; ++g1) {
    for (int h1 = 0; h1 < nb; ++h1) {
      for (int g2 = 0; g2 < na; ++g2) {
        for (int h2 = 0; h2 < nb; ++h2) {
          t[static_cast<size_t>(g1 * nb + h1)][static_cast<size_t>(g2 * nb + h2)] =
              a.multiply(g1, g2) * nb + b.multiply(h1, h2);
        }
      }
    }
  }
  return FiniteGroup(std::move(t), a.identity() * nb + b.identity());
}

FiniteGroup FiniteGroup::symmetric3() {
  // One-line notation images of (0, 1, 2).
  const std::array<std::array<int, 3>, 6> perms{{
      {0, 1, 2}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}, {1, 2, 0}, {2, 0, 1}}};
  auto index_of = [&](const std::array<int, 3>& p) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), p) - perms.begin());
  };
  std::vector<std::vector<int>> t(6, std::vector<int>(6));
  for (size_t g = 0; g < 6; ++g) {
    for (size_t h = 0; h < 6; ++h) {
      // (gh)(x) = g(h(x))
      std::array<int, 3> gh{};
      for (size_t x = 0; x < 3; ++x) gh[x] = perms[g][static_cast<size_t>(perms[h][x])];
      t[g][h] = index_of(gh);
    }
  }
  return FiniteGroup(std::move(t), 0);
}

int FiniteGroup::multiply(int g, int h) const {
  if (g < 0 || g >= order() || h < 0 || h >= order()) throw Error(ErrorCode::BadIndex, "group index");
  return table_[static_cast<size_t>(g)][static_cast<size_t>(h)];
}

int FiniteGroup::inverse(int g) const {
  for (int h = 0; h < order(); ++h) {
    if (multiply(g, h) == identity_ && multiply(h, g) == identity_) return h;
  }
  throw Error(ErrorCode::BadIndex, "group element has no inverse");
}

std::vector<std::string> FiniteGroup::axiom_failures() const {
  std::vector<std::string> out;
  const int n = order();
  for (int g = 0; g < n; ++g) {
    std::vector<char> row_seen(static_cast<size_t>(n), 0);
    std::vector<char> col_seen(static_cast<size_t>(n), 0);
    for (int h = 0; h < n; ++h) {
      row_seen[static_cast<size_t>(multiply(g, h))] = 1;
      col_seen[static_cast<size_t>(multiply(h, g))] = 1;
    }
    if (std::count(row_seen.begin(), row_seen.end(), 1) != n ||
        std::count(col_seen.begin(), col_seen.end(), 1) != n) {
      out.push_back("latin square failed at g" + std::to_string(g));
    }
    if (multiply(identity_, g) != g || multiply(g, identity_) != g) {
      out.push_back("identity failed at g" + std::to_string(g));
    }
    bool has_inverse = false;
    for (int h = 0; h < n && !has_inverse; ++h) {
      has_inverse = multiply(g, h) == identity_ && multiply(h, g) == identity_;
    }
    if (!has_inverse) out.push_back("inverse missing for g" + std::to_string(g));
  }
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      for (int c = 0; c < n; ++c) {
        if (multiply(multiply(a, b), c) != multiply(a, multiply(b, c))) {
          out.push_back("associativity failed at (g" + std::to_string(a) + ", g" + std::to_string(b) +
                        ", g" + std::to_string(c) + ")");
          return out;
        }
      }
    }
  }
  return out;
}

GroupAction GroupAction::inner(FiniteGroup group, StarAlgebra algebra, std::vector<CMatrix> unitaries) {
  if (static_cast<int>(unitaries.size()) != group.order()) {
    throw Error(ErrorCode::DimensionMismatch, "inner action: one unitary per group element");
  }
  for (const CMatrix& w : unitaries) {
    if (w.rows() != algebra.ambient_dim() || w.cols() != algebra.ambient_dim()) {
      throw Error(ErrorCode::DimensionMismatch, "inner action: unitary has wrong size");
    }
  }
  GroupAction act;
  act.group_ = std::move(group);
  act.algebra_ = std::move(algebra);
  act.kind_ = ActionKind::Inner;
  act.matrices_ = std::move(unitaries);
  return act;
}

GroupAction GroupAction::general(FiniteGroup group, StarAlgebra algebra, std::vector<CMatrix> maps) {
  if (static_cast<int>(maps.size()) != group.order()) {
    throw Error(ErrorCode::DimensionMismatch, "general action: one map per group element");
  }
  for (const CMatrix& m : maps) {
    if (m.rows() != algebra.basis_size() || m.cols() != algebra.basis_size()) {
      throw Error(ErrorCode::DimensionMismatch, "general action: coordinate map has wrong size");
    }
  }
  GroupAction act;
  act.group_ = std::move(group);
  act.algebra_ = std::move(algebra);
  act.kind_ = ActionKind::General;
  act.matrices_ = std::move(maps);
  return act;
}

GroupAction GroupAction::trivial(StarAlgebra algebra) {
  const int n = algebra.ambient_dim();
  return inner(FiniteGroup::trivial(), std::move(algebra), {CMatrix::Identity(n, n)});
}

CMatrix apply_action(const GroupAction& act, int g, const CMatrix& a) {
  if (g < 0 || g >= act.group().order()) throw Error(ErrorCode::BadIndex, "apply_action: group index");
  const int n = act.algebra().ambient_dim();
  if (a.rows() != n || a.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "apply_action: element not in the ambient space");
  }
  const CMatrix& m = act.matrices()[static_cast<size_t>(g)];
  if (act.kind() == ActionKind::Inner) return m.adjoint() * a * m;
  return act.algebra().from_coordinates(m * act.algebra().coordinates(a));
}

CMatrix conditional_expectation(const GroupAction& act, const CMatrix& a) {
  CMatrix sum = CMatrix::Zero(a.rows(), a.cols());
  for (int g = 0; g < act.group().order(); ++g) sum += apply_action(act, g, a);
  return sum / static_cast<double>(act.group().order());
}

ValidationReport validate_action(const GroupAction& act, const Tolerances& tol) {
  ValidationReport report;
  auto fail = [&](std::string msg) {
    report.valid = false;
    report.failures.push_back(std::move(msg));
  };
  for (auto& f : act.group().axiom_failures()) fail("group: " + f);
  if (!report.valid) return report;

  const StarAlgebra& alg = act.algebra();
  const FiniteGroup& grp = act.group();
  const int nb = alg.basis_size();
  const std::vector<CMatrix> units = alg.basis_units();
  auto gname = [](int g) { return "g" + std::to_string(g); };
  // Products E_ij E_ji come first, then every other pair.
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < nb; ++i) {
    const auto u = alg.unit_index(i);
    pairs.emplace_back(i, alg.unit_position(u.block, u.col, u.row));
  }
  for (int i = 0; i < nb; ++i) {
    for (int j = 0; j < nb; ++j) {
      const auto u = alg.unit_index(i);
      if (j != alg.unit_position(u.block, u.col, u.row)) pairs.emplace_back(i, j);
    }
  }

  if (act.kind() == ActionKind::Inner) {
    for (int g = 0; g < grp.order(); ++g) {
      const CMatrix& w = act.matrices()[static_cast<size_t>(g)];
      if (max_abs(w.adjoint() * w - identity(w.rows())) > tol.eq_tol) {
        fail("unitarity failed at " + gname(g));
      }
    }
  }

  // images[g][k] = tau_g(E_k)
  std::vector<std::vector<CMatrix>> images(static_cast<size_t>(grp.order()));
  for (int g = 0; g < grp.order(); ++g) {
    for (int k = 0; k < nb; ++k) images[static_cast<size_t>(g)].push_back(apply_action(act, g, units[static_cast<size_t>(k)]));
  }

  for (int k = 0; k < nb; ++k) {
    if (max_abs(images[static_cast<size_t>(grp.identity())][static_cast<size_t>(k)] - units[static_cast<size_t>(k)]) > tol.eq_tol) {
      fail("identity failed at (" + gname(grp.identity()) + ", " + alg.unit_name(k) + ")");
    }
  }

  for (int g = 0; g < grp.order(); ++g) {
    const auto& img = images[static_cast<size_t>(g)];
    for (int k = 0; k < nb; ++k) {
      if (alg.off_block_norm(img[static_cast<size_t>(k)]) > tol.eq_tol) {
        fail("range failed at (" + gname(g) + ", " + alg.unit_name(k) + ")");
      }
    }
    if (max_abs(apply_action(act, g, alg.unit()) - alg.unit()) > tol.eq_tol) {
      fail("unitality failed at " + gname(g));
    }
    for (int k = 0; k < nb; ++k) {
      const auto u = alg.unit_index(k);
      const int kt = alg.unit_position(u.block, u.col, u.row);
      if (max_abs(img[static_cast<size_t>(kt)] - img[static_cast<size_t>(k)].adjoint()) > tol.eq_tol) {
        fail("adjoint failed at (" + gname(g) + ", " + alg.unit_name(k) + ")");
      }
    }
    for (const auto& [i, j] : pairs) {
      const CMatrix prod = units[static_cast<size_t>(i)] * units[static_cast<size_t>(j)];
      const CMatrix lhs = apply_action(act, g, prod);
      const CMatrix rhs = img[static_cast<size_t>(i)] * img[static_cast<size_t>(j)];
      if (max_abs(lhs - rhs) > tol.eq_tol) {
        fail("multiplicativity failed at (" + gname(g) + ", " + alg.unit_name(i) + "·" + alg.unit_name(j) + ")");
      }
    }
    CMatrix coords(nb, nb);
    for (int k = 0; k < nb; ++k) coords.col(k) = alg.coordinates(img[static_cast<size_t>(k)]);
    if (numerical_rank(coords, tol) != nb) fail("bijectivity failed at " + gname(g));
  }

  for (int g = 0; g < grp.order(); ++g) {
    for (int h = 0; h < grp.order(); ++h) {
      const int gh = grp.multiply(g, h);
      for (int k = 0; k < nb; ++k) {
        const CMatrix lhs = apply_action(act, g, images[static_cast<size_t>(h)][static_cast<size_t>(k)]);
        if (max_abs(lhs - images[static_cast<size_t>(gh)][static_cast<size_t>(k)]) > tol.eq_tol) {
          fail("homomorphism failed at (" + gname(g) + ", " + gname(h) + ", " + alg.unit_name(k) + ")");
        }
      }
    }
  }
  return report;
}

void require_valid_action(const GroupAction& act, const Tolerances& tol) {
  const ValidationReport r = validate_action(act, tol);
  if (!r.valid) throw Error(ErrorCode::InvalidAction, r.failures.front());
}

}  // namespace ccx
