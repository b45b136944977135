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

#include "pcanon/zform.hpp"

#include <stdexcept>
#include <string>

#include "pcanon/simplex_core.hpp"

namespace pcanon {

namespace {

struct RowSolve {
  std::vector<Rational> row;  // row i of Xbar
  long long pivots = 0;
};

RowSolve solve_row(const BlockMatrix& a, const HatDecomposition& hat, int i) {
  const int m = a.rows();
  std::vector<Rational> u(m, Rational(0));
  u[i] = 1;
  RowSolve out;
  if (m > 1) {
    std::vector<int> sub_blocks;
    std::vector<int> sub_rows;  // original row index per subproblem row
    for (int j = 0; j < m; ++j) {
      if (j == i) continue;
      sub_blocks.push_back(a.block_size(j));
      sub_rows.push_back(j);
    }
    BlockMatrix sub(m - 1, sub_blocks);
    std::vector<Rational> c;
    c.reserve(sub.cols());
    int sub_col = 0;
    for (int col = 0; col < a.cols(); ++col) {
      if (a.column_id(col).block == i) continue;
      for (int r = 0; r < m - 1; ++r) sub.at(r, sub_col) = hat.a_hat.at(sub_rows[r], col);
      c.push_back(-hat.a_hat.at(i, col));
      ++sub_col;
    }
    const GlcpSolution sol = solve_glcp(sub, c);
    out.pivots = sol.pivots;
    for (int r = 0; r < m - 1; ++r) u[sub_rows[r]] = sol.v[r];
  }
  // The embedded vector must land strictly positive on block i in hat
  // coordinates; anything else means A lacks the sign-preserving property.
  const auto in_row_space = row_times(u, hat.a_hat);
  for (int k = 0; k < a.block_size(i); ++k) {
    if (in_row_space[a.flat_index(ColumnId{i, k})] <= 0)
      throw ZFormError("row " + std::to_string(i + 1) +
                       " construction is not positive on its own block; "
                       "input is not a valid instance");
  }
  out.row = solve_transposed(hat.c_hat, u);
  return out;
}

}  // namespace

std::vector<Rational> zform_row(const BlockMatrix& a, int i) {
  if (i < 0 || i >= a.rows()) throw std::out_of_range("row index out of range");
  return solve_row(a, hat_decomposition(a), i).row;
}

ZFormResult compute_zform(const BlockMatrix& a) {
  const auto hat = hat_decomposition(a);
  const int m = a.rows();
  SquareMatrix xbar(m);
  std::vector<long long> pivots(m, 0);
  for (int i = 0; i < m; ++i) {
    RowSolve rs = solve_row(a, hat, i);
    for (int j = 0; j < m; ++j) xbar.at(i, j) = rs.row[j];
    pivots[i] = rs.pivots;
  }
  const auto verdict = verify_zform(xbar, a);
  if (!verdict.holds()) {
    const auto& v = verdict.violations.front();
    throw ZFormError("normalized form verification failed: condition " +
                     std::to_string(v.condition) + " at row " + std::to_string(v.row + 1) +
                     ", block " + std::to_string(v.block + 1));
  }
  BlockMatrix abar = multiply(xbar, a);
  for (int j = 0; j < m; ++j) {
    if (abar.at(j, ColumnId{j, a.block_size(j) - 1}) != 1)
      throw ZFormError("normalization entry at block " + std::to_string(j + 1) +
                       " is not 1; construction inconsistency");
  }
  return ZFormResult{std::move(xbar), std::move(abar), std::move(pivots)};
}

ZFormVerdict verify_zform(const SquareMatrix& xbar, const BlockMatrix& a) {
  if (xbar.order() != a.rows()) throw std::invalid_argument("shape mismatch");
  const BlockMatrix xa = multiply(xbar, a);
  ZFormVerdict verdict;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.block_size(i); ++k)
      if (xa.at(i, ColumnId{i, k}) <= 0) verdict.violations.push_back({1, i, i, k});
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.num_blocks(); ++j) {
      if (j == i) continue;
      for (int k = 0; k < a.block_size(j); ++k)
        if (xa.at(i, ColumnId{j, k}) > 0) verdict.violations.push_back({2, i, j, k});
    }
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.num_blocks(); ++j) {
      if (j == i) continue;
      bool has_zero = false;
      for (int k = 0; k < a.block_size(j); ++k)
        if (xa.at(i, ColumnId{j, k}) == 0) has_zero = true;
      if (!has_zero) verdict.violations.push_back({3, i, j, -1});
    }
  return verdict;
}

BlockMatrix lemma1_reduce(const BlockMatrix& abar, int j) {
  if (j < 0 || j >= abar.rows()) throw std::out_of_range("pivot row out of range");
  const int m = abar.rows();
  const Rational pivot = abar.at(j, ColumnId{j, abar.block_size(j) - 1});
  if (pivot == 0) throw ZFormError("zero pivot entry at the normalization position");
  std::vector<int> out_blocks;
  std::vector<int> out_rows;
  for (int i = 0; i < m; ++i) {
    if (i == j) continue;
    out_blocks.push_back(abar.block_size(i));
    out_rows.push_back(i);
  }
  BlockMatrix out(m - 1, out_blocks);
  int out_col = 0;
  for (int col = 0; col < abar.cols(); ++col) {
    if (abar.column_id(col).block == j) continue;
    for (int r = 0; r < m - 1; ++r) {
      const int i = out_rows[r];
      const Rational mult = -abar.at(i, ColumnId{j, abar.block_size(j) - 1}) / pivot;
      out.at(r, out_col) = abar.at(i, col) + mult * abar.at(j, col);
    }
    ++out_col;
  }
  return out;
}

std::vector<Rational> nstep_cone_sample(const SquareMatrix& xbar, std::span<const Rational> q) {
  if (static_cast<int>(q.size()) != xbar.order())
    throw std::invalid_argument("q length must match the matrix order");
  for (const auto& qi : q)
    if (qi <= 0) throw std::domain_error("q must be strictly positive");
  return solve_linear(xbar, q);
}

}  // namespace pcanon
