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

#include "pcanon/lp_oracle.hpp"

#include <stdexcept>

#include <json.hpp>

namespace pcanon {

namespace {

// Dense tableau in canonical form: basis columns are unit vectors and the
// right-hand side sits in the last column.  Rows carry their original
// constraint index so duals survive redundant-row deletion.
struct Tableau {
  std::vector<std::vector<Rational>> rows;
  std::vector<int> basis;       // basic column per row
  std::vector<int> row_origin;  // original constraint index per row
  int ncols = 0;                // excluding the rhs column

  Rational& rhs(int r) { return rows[r][ncols]; }
  const Rational& rhs(int r) const { return rows[r][ncols]; }

  void pivot(int r, int c) {
    const Rational p = rows[r][c];
    for (auto& e : rows[r]) e /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (static_cast<int>(i) == r || rows[i][c] == 0) continue;
      const Rational f = rows[i][c];
      for (int j = 0; j <= ncols; ++j) rows[i][j] -= f * rows[r][j];
    }
    basis[r] = c;
  }
};

constexpr long long kIterationCap = 1LL << 22;

// Bland's rule on the columns marked eligible; returns the final status.
// Minimizes cost over the tableau in place.
LpStatus run_simplex(Tableau& t, const std::vector<Rational>& cost,
                     const std::vector<bool>& eligible, long long& iterations) {
  for (;;) {
    if (++iterations > kIterationCap)
      throw std::logic_error("simplex iteration cap exceeded; cycling suspected");
    int entering = -1;
    for (int j = 0; j < t.ncols; ++j) {
      if (!eligible[j]) continue;
      Rational r = cost[j];
      for (std::size_t i = 0; i < t.rows.size(); ++i) r -= cost[t.basis[i]] * t.rows[i][j];
      if (r < 0) {
        entering = j;
        break;  // smallest eligible index, Bland's rule
      }
    }
    if (entering < 0) return LpStatus::Optimal;
    int leaving = -1;
    Rational best_ratio = 0;
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
      if (t.rows[i][entering] <= 0) continue;
      const Rational ratio = t.rhs(i) / t.rows[i][entering];
      if (leaving < 0 || ratio < best_ratio ||
          (ratio == best_ratio && t.basis[i] < t.basis[leaving])) {
        leaving = static_cast<int>(i);
        best_ratio = ratio;
      }
    }
    if (leaving < 0) return LpStatus::Unbounded;
    t.pivot(leaving, entering);
  }
}

}  // namespace

LpSolution simplex_solve(const LpProblem& p) {
  const int nvars = static_cast<int>(p.objective.size());
  const int nrows = static_cast<int>(p.constraints.size());
  if (static_cast<int>(p.nonneg.size()) != nvars)
    throw std::invalid_argument("nonneg flags must cover every variable");
  for (const auto& con : p.constraints)
    if (static_cast<int>(con.coeffs.size()) != nvars)
      throw std::invalid_argument("constraint width mismatch");

  // Internal minimization over split nonnegative variables.
  std::vector<int> plus_col(nvars), minus_col(nvars, -1);
  int ncols = 0;
  for (int v = 0; v < nvars; ++v) {
    plus_col[v] = ncols++;
    if (!p.nonneg[v]) minus_col[v] = ncols++;
  }
  std::vector<int> slack_col(nrows, -1);
  for (int i = 0; i < nrows; ++i)
    if (p.constraints[i].relation != Relation::Equal) slack_col[i] = ncols++;
  std::vector<int> art_col(nrows);
  for (int i = 0; i < nrows; ++i) art_col[i] = ncols++;

  Tableau t;
  t.ncols = ncols;
  std::vector<bool> flipped(nrows, false);
  for (int i = 0; i < nrows; ++i) {
    const auto& con = p.constraints[i];
    std::vector<Rational> row(ncols + 1, Rational(0));
    for (int v = 0; v < nvars; ++v) {
      row[plus_col[v]] = con.coeffs[v];
      if (minus_col[v] >= 0) row[minus_col[v]] = -con.coeffs[v];
    }
    if (slack_col[i] >= 0)
      row[slack_col[i]] = con.relation == Relation::LessEq ? Rational(1) : Rational(-1);
    row[ncols] = con.rhs;
    if (row[ncols] < 0) {
      for (auto& e : row) e = -e;
      flipped[i] = true;
    }
    row[art_col[i]] = 1;
    t.rows.push_back(std::move(row));
    t.basis.push_back(art_col[i]);
    t.row_origin.push_back(i);
  }

  std::vector<bool> is_artificial(ncols, false);
  for (int i = 0; i < nrows; ++i) is_artificial[art_col[i]] = true;

  long long iterations = 0;

  // Phase one: drive the artificial mass to zero.
  std::vector<Rational> phase1(ncols, Rational(0));
  for (int i = 0; i < nrows; ++i) phase1[art_col[i]] = 1;
  std::vector<bool> eligible(ncols, true);
  for (int j = 0; j < ncols; ++j) eligible[j] = !is_artificial[j];
  run_simplex(t, phase1, eligible, iterations);
  Rational infeasibility = 0;
  for (std::size_t r = 0; r < t.rows.size(); ++r)
    infeasibility += phase1[t.basis[r]] * t.rhs(r);
  LpSolution sol;
  if (infeasibility != 0) {
    sol.status = LpStatus::Infeasible;
    return sol;
  }
  // Remove artificials from the basis: pivot them out where possible,
  // delete genuinely dependent rows otherwise.
  for (int r = static_cast<int>(t.rows.size()) - 1; r >= 0; --r) {
    if (!is_artificial[t.basis[r]]) continue;
    int col = -1;
    for (int j = 0; j < t.ncols && col < 0; ++j)
      if (!is_artificial[j] && t.rows[r][j] != 0) col = j;
    if (col >= 0) {
      t.pivot(r, col);
    } else {
      t.rows.erase(t.rows.begin() + r);
      t.basis.erase(t.basis.begin() + r);
      t.row_origin.erase(t.row_origin.begin() + r);
    }
  }

  // Phase two with the real costs; artificial columns stay in the tableau
  // (barred from entering) so the duals can be read off them.
  std::vector<Rational> cost(ncols, Rational(0));
  for (int v = 0; v < nvars; ++v) {
    const Rational c = p.sense == Sense::Maximize ? -p.objective[v] : p.objective[v];
    cost[plus_col[v]] = c;
    if (minus_col[v] >= 0) cost[minus_col[v]] = -c;
  }
  sol.status = run_simplex(t, cost, eligible, iterations);
  if (sol.status != LpStatus::Optimal) return sol;

  std::vector<Rational> value(ncols, Rational(0));
  for (std::size_t r = 0; r < t.rows.size(); ++r) value[t.basis[r]] = t.rhs(r);
  sol.primal.assign(nvars, Rational(0));
  for (int v = 0; v < nvars; ++v) {
    sol.primal[v] = value[plus_col[v]];
    if (minus_col[v] >= 0) sol.primal[v] -= value[minus_col[v]];
  }
  sol.objective = 0;
  for (int v = 0; v < nvars; ++v) sol.objective += p.objective[v] * sol.primal[v];

  // The artificial column of row i currently holds B^{-1}e_i, so the simplex
  // multipliers fall out of the kept columns; rows deleted as redundant have a
  // zero column and therefore a zero multiplier.
  sol.dual.assign(nrows, Rational(0));
  for (int i = 0; i < nrows; ++i) {
    Rational y = 0;
    for (std::size_t r = 0; r < t.rows.size(); ++r)
      y += cost[t.basis[r]] * t.rows[r][art_col[i]];
    if (flipped[i]) y = -y;
    if (p.sense == Sense::Maximize) y = -y;
    sol.dual[i] = y;
  }
  return sol;
}

LpProblem build_lp_A(const BlockMatrix& a) {
  const int m = a.rows();
  const int n = a.cols();
  LpProblem p;
  p.sense = Sense::Maximize;
  const int nvars = m * m + 1;  // X row-major, then d
  p.objective.assign(nvars, Rational(0));
  p.objective[nvars - 1] = 1;
  p.nonneg.assign(nvars, false);

  // Entry bounds: own-block at most 1, cross-block at most 0.
  for (int i = 0; i < m; ++i)
    for (int col = 0; col < n; ++col) {
      LpConstraint con;
      con.coeffs.assign(nvars, Rational(0));
      for (int tcol = 0; tcol < m; ++tcol) con.coeffs[i * m + tcol] = a.at(tcol, col);
      con.relation = Relation::LessEq;
      con.rhs = a.column_id(col).block == i ? Rational(1) : Rational(0);
      p.constraints.push_back(std::move(con));
    }
  // Column sums at least d.
  for (int col = 0; col < n; ++col) {
    LpConstraint con;
    con.coeffs.assign(nvars, Rational(0));
    for (int i = 0; i < m; ++i)
      for (int tcol = 0; tcol < m; ++tcol) con.coeffs[i * m + tcol] += a.at(tcol, col);
    con.coeffs[nvars - 1] = -1;
    con.relation = Relation::GreaterEq;
    con.rhs = 0;
    p.constraints.push_back(std::move(con));
  }
  return p;
}

LpProblem build_scaling_lp(const BlockMatrix& abar) {
  const int m = abar.rows();
  const int n = abar.cols();
  LpProblem p;
  p.sense = Sense::Maximize;
  const int nvars = m + 1;  // x, then d
  p.objective.assign(nvars, Rational(0));
  p.objective[nvars - 1] = 1;
  p.nonneg.assign(nvars, false);

  for (int col = 0; col < n; ++col) {
    LpConstraint con;
    con.coeffs.assign(nvars, Rational(0));
    for (int i = 0; i < m; ++i) con.coeffs[i] = abar.at(i, col);
    con.coeffs[nvars - 1] = -1;
    con.relation = Relation::GreaterEq;
    con.rhs = 0;
    p.constraints.push_back(std::move(con));
  }
  for (int j = 0; j < m; ++j)
    for (int k = 0; k < abar.block_size(j); ++k) {
      LpConstraint con;
      con.coeffs.assign(nvars, Rational(0));
      con.coeffs[j] = abar.at(j, ColumnId{j, k});
      con.relation = Relation::LessEq;
      con.rhs = 1;
      p.constraints.push_back(std::move(con));
    }
  return p;
}

std::string lp_problem_json(const LpProblem& p) {
  nlohmann::ordered_json doc;
  doc["sense"] = p.sense == Sense::Maximize ? "max" : "min";
  auto obj = nlohmann::ordered_json::array();
  for (const auto& c : p.objective) obj.push_back(to_string(c));
  doc["objective"] = std::move(obj);
  auto cons = nlohmann::ordered_json::array();
  for (const auto& con : p.constraints) {
    nlohmann::ordered_json c;
    auto coeffs = nlohmann::ordered_json::array();
    for (const auto& e : con.coeffs) coeffs.push_back(to_string(e));
    c["coeffs"] = std::move(coeffs);
    c["rel"] = con.relation == Relation::LessEq   ? "<="
               : con.relation == Relation::Equal  ? "=="
                                                  : ">=";
    c["rhs"] = to_string(con.rhs);
    cons.push_back(std::move(c));
  }
  doc["constraints"] = std::move(cons);
  doc["nonneg"] = p.nonneg;
  return doc.dump();
}

}  // namespace pcanon
