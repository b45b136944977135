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

#include "pcanon/simplex_core.hpp"

#include <cstdlib>
#include <limits>
#include <stdexcept>

#include <boost/multiprecision/mpfr.hpp>
#include <json.hpp>

namespace pcanon {

namespace {

// v solving v^T C_s = c_s, plus the residual row c^T - v^T A.
struct BasisSolve {
  std::vector<Rational> v;
  std::vector<Rational> residual;
};

BasisSolve solve_basis(const BlockMatrix& a, std::span<const Rational> c, const RepSelection& s) {
  std::vector<Rational> c_s(a.num_blocks());
  for (int j = 0; j < a.num_blocks(); ++j) c_s[j] = c[a.flat_index(ColumnId{j, s[j]})];
  std::vector<Rational> v;
  try {
    v = solve_transposed(representative_submatrix(a, s), c_s);
  } catch (const SingularMatrixError&) {
    throw SingularBasisError("selection yields a singular representative submatrix");
  }
  std::vector<Rational> residual = row_times(v, a);
  for (int col = 0; col < a.cols(); ++col) residual[col] = c[col] - residual[col];
  return BasisSolve{std::move(v), std::move(residual)};
}

}  // namespace

GlcpSolution solve_glcp(const BlockMatrix& a, std::span<const Rational> c,
                        std::optional<RepSelection> start,
                        std::optional<long long> pivot_cap) {
  if (static_cast<int>(c.size()) != a.cols())
    throw std::invalid_argument("cost vector length must equal the column count");
  RepSelection s = start.value_or(RepSelection::last_columns(a));
  if (!s.valid_for(a)) throw std::out_of_range("start selection out of range");
  const long long cap = pivot_cap.value_or(default_pivot_cap(a));

  GlcpSolution sol{{}, s, {}, 0, {}};
  for (;;) {
    BasisSolve bs = solve_basis(a, c, s);
    int entering = -1;
    for (int col = 0; col < a.cols(); ++col) {
      if (bs.residual[col] < 0 && (entering < 0 || bs.residual[col] < bs.residual[entering]))
        entering = col;  // strict < keeps the lexicographically first tie
    }
    if (entering < 0) {
      sol.v = std::move(bs.v);
      sol.selection = s;
      sol.residual = std::move(bs.residual);
      return sol;
    }
    if (sol.pivots >= cap)
      throw PivotCapExceeded("pivot cap of " + std::to_string(cap) +
                             " exceeded; input is suspected not to satisfy the "
                             "complementary Z-form existence conditions");
    const ColumnId enter = a.column_id(entering);
    const ColumnId leave{enter.block, s[enter.block]};
    sol.trace.push_back(PivotStep{enter, leave});
    s.set(enter.block, enter.index);
    ++sol.pivots;
  }
}

std::vector<Rational> reduced_costs(const BlockMatrix& a, std::span<const Rational> c,
                                    const RepSelection& s) {
  if (static_cast<int>(c.size()) != a.cols())
    throw std::invalid_argument("cost vector length must equal the column count");
  if (!s.valid_for(a)) throw std::out_of_range("selection out of range");
  return solve_basis(a, c, s).residual;
}

GlcpStandardForm glcp_standard_form(const BlockMatrix& a, std::span<const Rational> c,
                                    const GlcpSolution& sol) {
  const auto hat = hat_decomposition(a);
  const int m = a.rows();
  GlcpStandardForm out;
  out.z.assign(m, Rational(0));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) out.z[i] += hat.c_hat.at(k, i) * sol.v[k];
  // z^T A_hat equals v^T A, so w is the residual in hat coordinates.
  const auto za = row_times(out.z, hat.a_hat);
  for (int j = 0; j < a.num_blocks(); ++j)
    for (int k = 0; k + 1 < a.block_size(j); ++k) {
      const int col = a.flat_index(ColumnId{j, k});
      out.w.push_back(c[col] - za[col]);
    }
  return out;
}

long long ye_pivot_bound(int m, int n, const Rational& d) {
  if (m < 1 || n <= m) throw std::domain_error("pivot bound requires n > m >= 1");
  if (d <= 0 || d > 1) throw std::domain_error("pivot bound requires 0 < d <= 1");
  using Real = boost::multiprecision::mpfr_float_50;
  const Real dv = Real(Integer(numerator(d)).str()) / Real(Integer(denominator(d)).str());
  const Real bound = (Real(m) * (n - m) / dv) * log(Real(m) * m / dv);
  return ceil(bound).convert_to<long long>();
}

long long default_pivot_cap(const BlockMatrix& a) {
  if (const char* env = std::getenv("PCANON_PIVOT_CAP")) {
    char* end = nullptr;
    const long long cap = std::strtoll(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) return cap;
  }
  const long long saturation = std::numeric_limits<long long>::max() / 4;
  const long long selections = selection_count(a, saturation);
  // All blocks of size one leave a single selection and nothing to pivot.
  if (a.cols() <= a.rows()) return selections;
  const long long bound = 2 * ye_pivot_bound(a.rows(), a.cols(), Rational(1, a.cols()));
  return std::max(bound, selections);
}

std::string trace_json_lines(std::span<const PivotStep> trace) {
  std::string out;
  for (const auto& step : trace) {
    nlohmann::ordered_json line;
    line["enter"] = {step.enter.block + 1, step.enter.index + 1};
    line["leave"] = {step.leave.block + 1, step.leave.index + 1};
    out += line.dump();
    out += '\n';
  }
  return out;
}

}  // namespace pcanon
