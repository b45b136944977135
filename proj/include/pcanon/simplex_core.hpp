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

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "pcanon/blockmat.hpp"
#include "pcanon/rational.hpp"

namespace pcanon {

/** Pivot budget exhausted; the instance is suspected invalid. */
class PivotCapExceeded : public std::runtime_error {
 public:
  explicit PivotCapExceeded(const std::string& what) : std::runtime_error(what) {}
};

/** A selection produced a singular representative submatrix mid-solve. */
class SingularBasisError : public std::runtime_error {
 public:
  explicit SingularBasisError(const std::string& what) : std::runtime_error(what) {}
};

/** One block pivot: the entering column replaces its block's selected column. */
struct PivotStep {
  ColumnId enter;
  ColumnId leave;
  friend bool operator==(const PivotStep&, const PivotStep&) = default;
};

/**
 * Solution of the block complementarity problem for (A, c): the unique v
 * with c^T - v^T A >= 0 and, per block, a selected column where the
 * residual vanishes.
 */
struct GlcpSolution {
  std::vector<Rational> v;
  RepSelection selection;
  std::vector<Rational> residual;  // c^T - v^T A over flat columns
  long long pivots = 0;
  std::vector<PivotStep> trace;
};

/** The same solution in nonnegative (z, w) coordinates of the hat basis. */
struct GlcpStandardForm {
  std::vector<Rational> z;
  std::vector<Rational> w;  // columns (j,k) with k < n_j, flat order
};

/**
 * Block-pivot simplex with Dantzig's rule.  Maintains one selected column
 * per block; each round solves v^T C_s = c_s, enters the column with the
 * most negative reduced cost (lexicographically smallest on ties), and the
 * selected column of that block leaves.  Minimizing sense; callers wanting
 * ">=" complementarity negate their data.
 *
 * `start` defaults to the per-block last columns.  `pivot_cap` defaults to
 * default_pivot_cap(a); exceeding it throws PivotCapExceeded, which callers
 * treat as suspicion that the input is not a valid instance.
 */
GlcpSolution solve_glcp(const BlockMatrix& a, std::span<const Rational> c,
                        std::optional<RepSelection> start = std::nullopt,
                        std::optional<long long> pivot_cap = std::nullopt);

/** c^T - v^T A where v solves v^T C_s = c_s; zero at selected columns. */
std::vector<Rational> reduced_costs(const BlockMatrix& a, std::span<const Rational> c,
                                    const RepSelection& s);

/**
 * Rewrites a solution over the hat basis: z = C_hat^T v and
 * w = c_N - z^T A_hat over the columns with k < n_j.  Both are nonnegative
 * for a valid solution and each block satisfies z_j * prod_k w_{jk} = 0.
 */
GlcpStandardForm glcp_standard_form(const BlockMatrix& a, std::span<const Rational> c,
                                    const GlcpSolution& sol);

/**
 * ceil((m(n-m)/d) * ln(m^2/d)), the worst-case pivot count for Dantzig's
 * rule on a discounted instance with margin d.  Evaluated in 50-digit
 * floating point; requires n > m >= 1 and 0 < d <= 1.
 */
long long ye_pivot_bound(int m, int n, const Rational& d);

/**
 * max(2 * ye_pivot_bound(m, n, 1/n), number of selections), saturating.
 * The environment variable PCANON_PIVOT_CAP, when set to a positive
 * integer, overrides the computed value.
 */
long long default_pivot_cap(const BlockMatrix& a);

/** One JSON object per pivot, one-based: {"enter":[j,k],"leave":[j,k']}. */
std::string trace_json_lines(std::span<const PivotStep> trace);

}  // namespace pcanon
