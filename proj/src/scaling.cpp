// Copyright 2026 The pcanon authors
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

#include "pcanon/scaling.hpp"

#include <stdexcept>
#include <string>

#include "pcanon/simplex_core.hpp"

namespace pcanon {

namespace {

struct ComplementarySolve {
  std::vector<Rational> v;
  long long pivots = 0;
};

// The engine minimizes, so v^T Abar >= e^n becomes data (Abar, -e) with
// solution -v.
ComplementarySolve solve_complementary(const BlockMatrix& abar) {
  const std::vector<Rational> c(abar.cols(), Rational(-1));
  GlcpSolution sol = solve_glcp(abar, c);
  for (auto& vi : sol.v) vi = -vi;
  return ComplementarySolve{std::move(sol.v), sol.pivots};
}

std::vector<Rational> column_sums(const BlockMatrix& a) {
  std::vector<Rational> sums(a.cols(), Rational(0));
  for (int i = 0; i < a.rows(); ++i)
    for (int col = 0; col < a.cols(); ++col) sums[col] += a.at(i, col);
  return sums;
}

Rational dual_objective(const BlockMatrix& abar, const DualCertificate& dual) {
  Rational sum = 0;
  for (int i = 0; i < abar.rows(); ++i)
    for (int k = 0; k < abar.block_size(i); ++k)
      sum += dual.y[i][abar.flat_index(ColumnId{i, k})];
  return sum;
}

// Shared feasibility pieces: shapes, nonnegativity, and sum(w) = 1.
bool dual_shape_ok(const BlockMatrix& abar, const DualCertificate& dual) {
  if (static_cast<int>(dual.y.size()) != abar.rows()) return false;
  for (const auto& row : dual.y) {
    if (static_cast<int>(row.size()) != abar.cols()) return false;
    for (const auto& e : row)
      if (e < 0) return false;
  }
  if (static_cast<int>(dual.w.size()) != abar.cols()) return false;
  Rational wsum = 0;
  for (const auto& e : dual.w) {
    if (e < 0) return false;
    wsum += e;
  }
  return wsum == 1;
}

}  // namespace

std::vector<Rational> complementary_v(const BlockMatrix& abar) {
  return solve_complementary(abar).v;
}

ScalingResult optimal_scaling(const BlockMatrix& abar) {
  ComplementarySolve cs = solve_complementary(abar);

  bool found = false;
  Rational best = 0;
  ColumnId argmax;
  for (int i = 0; i < abar.rows(); ++i)
    for (int k = 0; k < abar.block_size(i); ++k) {
      const Rational value = cs.v[i] * abar.at(i, ColumnId{i, k});
      if (!found || value > best) {
        found = true;
        best = value;
        argmax = ColumnId{i, k};
      }
    }
  if (best <= 0)
    throw ScalingError("no positive own-block entry to bound the scaling; "
                       "input is not a valid normalized form");
  const Rational d = 1 / best;

  std::vector<Rational> x;
  x.reserve(abar.rows());
  for (const auto& vi : cs.v) x.push_back(d * vi);
  BlockMatrix xa(abar.rows(), abar.block_sizes());
  for (int i = 0; i < abar.rows(); ++i)
    for (int col = 0; col < abar.cols(); ++col) xa.at(i, col) = x[i] * abar.at(i, col);

  const auto sums = column_sums(xa);
  std::vector<std::vector<int>> tight(abar.num_blocks());
  for (int j = 0; j < abar.num_blocks(); ++j) {
    for (int k = 0; k < abar.block_size(j); ++k) {
      const Rational& sum = sums[abar.flat_index(ColumnId{j, k})];
      if (sum < d)
        throw ScalingError("column sum below the optimum after scaling; "
                           "complementary solve inconsistency");
      if (sum == d) tight[j].push_back(k);
    }
    if (tight[j].empty())
      throw ScalingError("block " + std::to_string(j + 1) +
                         " has no tight column; complementarity violated");
  }
  return ScalingResult{std::move(x), d,      std::move(cs.v), std::move(xa),
                       cs.pivots,    argmax, std::move(tight)};
}

DualCertificate scaling_dual_certificate(const BlockMatrix& abar, const ScalingResult& res) {
  DualCertificate dual;
  dual.y.assign(abar.rows(), std::vector<Rational>(abar.cols(), Rational(0)));
  dual.w.assign(abar.cols(), Rational(0));
  dual.y[res.argmax.block][abar.flat_index(ColumnId{res.argmax.block, res.argmax.index})] = res.d;

  RepSelection tight(std::vector<int>(abar.num_blocks(), 0));
  for (int j = 0; j < abar.num_blocks(); ++j) {
    if (res.tight_columns[j].empty())
      throw ScalingError("block " + std::to_string(j + 1) + " has no tight column");
    tight.set(j, res.tight_columns[j].front());
  }
  const SquareMatrix c = representative_submatrix(res.xa_opt, tight);
  std::vector<Rational> rhs(abar.rows(), Rational(0));
  rhs[res.argmax.block] = res.d;
  const auto w_c = solve_linear(c, rhs);
  for (int j = 0; j < abar.num_blocks(); ++j) {
    if (w_c[j] < 0)
      throw ScalingError("dual weight negative; tight submatrix is not a K-matrix");
    dual.w[abar.flat_index(ColumnId{j, tight[j]})] = w_c[j];
  }
  dual.objective = dual_objective(abar, dual);
  if (!verify_scaling_dual(abar, dual, res.d))
    throw ScalingError("constructed scaling dual failed verification");
  return dual;
}

DualCertificate lift_dual_to_lp(const BlockMatrix& abar, const DualCertificate& dual) {
  const int m = abar.rows();
  DualCertificate lifted = dual;
  // Row-i weighted column loads of w, reused by every system's right side.
  std::vector<Rational> w_load(m, Rational(0));
  for (int i = 0; i < m; ++i)
    for (int col = 0; col < abar.cols(); ++col) w_load[i] += abar.at(i, col) * dual.w[col];

  for (int i = 0; i < m; ++i) {
    if (m == 1) break;
    // One zero entry per cross block carries the lifted mass.
    std::vector<int> zero_col(m, -1);
    std::vector<int> vars;
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      for (int k = 0; k < abar.block_size(j); ++k) {
        if (abar.at(i, ColumnId{j, k}) == 0) {
          zero_col[j] = abar.flat_index(ColumnId{j, k});
          break;
        }
      }
      if (zero_col[j] < 0)
        throw ScalingError("row " + std::to_string(i + 1) + " has no zero entry in block " +
                           std::to_string(j + 1) + "; input is not a valid normalized form");
      vars.push_back(j);
    }
    SquareMatrix system(m - 1);
    std::vector<Rational> rhs(m - 1, Rational(0));
    int row = 0;
    for (int ip = 0; ip < m; ++ip) {
      if (ip == i) continue;
      for (int col_idx = 0; col_idx < m - 1; ++col_idx)
        system.at(row, col_idx) = abar.at(ip, zero_col[vars[col_idx]]);
      Rational r = w_load[ip];
      for (int k = 0; k < abar.block_size(i); ++k) {
        const int col = abar.flat_index(ColumnId{i, k});
        r -= abar.at(ip, col) * dual.y[i][col];
      }
      if (r < 0)
        throw ScalingError("lift right-hand side negative; input dual is not feasible");
      rhs[row] = r;
      ++row;
    }
    const auto solution = solve_linear(system, rhs);
    for (int col_idx = 0; col_idx < m - 1; ++col_idx) {
      if (solution[col_idx] < 0)
        throw ScalingError("lift produced a negative multiplier; "
                           "cross-block system is not a K-matrix");
      lifted.y[i][zero_col[vars[col_idx]]] = solution[col_idx];
    }
  }
  lifted.objective = dual_objective(abar, lifted);
  if (!verify_lp_dual(abar, lifted, dual.objective))
    throw ScalingError("lifted dual failed verification");
  return lifted;
}

bool verify_scaling_dual(const BlockMatrix& abar, const DualCertificate& dual,
                         const Rational& optimum) {
  if (!dual_shape_ok(abar, dual)) return false;
  // Only own-block dual entries exist in the scaling LP.
  for (int i = 0; i < abar.rows(); ++i)
    for (int col = 0; col < abar.cols(); ++col)
      if (abar.column_id(col).block != i && dual.y[i][col] != 0) return false;
  for (int i = 0; i < abar.rows(); ++i) {
    Rational lhs = 0;
    for (int k = 0; k < abar.block_size(i); ++k) {
      const int col = abar.flat_index(ColumnId{i, k});
      lhs += abar.at(i, col) * dual.y[i][col];
    }
    Rational rhs = 0;
    for (int col = 0; col < abar.cols(); ++col) rhs += abar.at(i, col) * dual.w[col];
    if (lhs != rhs) return false;
  }
  return dual_objective(abar, dual) == optimum;
}

bool verify_lp_dual(const BlockMatrix& abar, const DualCertificate& dual,
                    const Rational& optimum) {
  if (!dual_shape_ok(abar, dual)) return false;
  for (int i = 0; i < abar.rows(); ++i) {
    for (int ip = 0; ip < abar.rows(); ++ip) {
      Rational lhs = 0;
      Rational rhs = 0;
      for (int col = 0; col < abar.cols(); ++col) {
        lhs += abar.at(ip, col) * dual.y[i][col];
        rhs += abar.at(ip, col) * dual.w[col];
      }
      if (lhs != rhs) return false;
    }
  }
  return dual_objective(abar, dual) == optimum;
}

TwoStepResult two_step(const BlockMatrix& a) {
  ZFormResult zf = compute_zform(a);
  ScalingResult sc = optimal_scaling(zf.abar);
  DualCertificate sd = scaling_dual_certificate(zf.abar, sc);
  DualCertificate ld = lift_dual_to_lp(zf.abar, sd);
  SquareMatrix xopt(a.rows());
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.rows(); ++j) xopt.at(i, j) = sc.x[i] * zf.xbar.at(i, j);
  return TwoStepResult{std::move(xopt), sc.d,          std::move(zf),
                       std::move(sc),   std::move(sd), std::move(ld)};
}

}  // namespace pcanon
