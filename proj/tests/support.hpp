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

#include <string>
#include <vector>

#include "pcanon/blockmat.hpp"
#include "pcanon/rational.hpp"

namespace testsupport {

// Worked 3-block instance used across the suite; every derived quantity the
// tests pin down (determinants, the normalized form, the scaling optimum)
// was computed by hand or by an independent oracle before being frozen here.
inline std::string worked_instance_json() {
  return R"({"m":3,"blocks":[2,2,2],"rows":[)"
         R"(["4","4","-1","-3","-2","-1"],)"
         R"(["-2","-1","4","4","-1","-1"],)"
         R"(["-1","-2","-1","0","4","4"]]})";
}

inline pcanon::BlockMatrix worked_instance() {
  return pcanon::parse_block_matrix(worked_instance_json());
}

inline pcanon::Rational q(const std::string& s) { return pcanon::parse_rational(s); }

// Row-scaling matrix and normalized form of the worked instance (frozen).
inline std::vector<std::vector<std::string>> worked_xbar_rows() {
  return {{"1/3", "1/9", "1/9"}, {"3/19", "7/19", "5/38"}, {"4/33", "1/11", "10/33"}};
}

inline std::vector<std::vector<std::string>> worked_abar_rows() {
  return {{"1", "1", "0", "-5/9", "-1/3", "0"},
          {"-9/38", "0", "45/38", "1", "-3/19", "0"},
          {"0", "-7/33", "-2/33", "0", "29/33", "1"}};
}

// Optimally scaled form diag(x) * Abar with x = (47/70, 38/45, 33/35).
inline std::vector<std::vector<std::string>> worked_scaled_rows() {
  return {{"47/70", "47/70", "0", "-47/126", "-47/210", "0"},
          {"-1/5", "0", "1", "38/45", "-2/15", "0"},
          {"0", "-1/5", "-2/35", "0", "29/35", "33/35"}};
}

// A row scaling of the worked instance that satisfies only the sign
// conditions: the (row 2, block 1) pair of X * A has no zero entry.
inline std::vector<std::vector<std::string>> near_miss_x_rows() {
  return {{"111/350", "37/350", "37/350"},
          {"1/25", "7/25", "2/25"},
          {"4/35", "3/35", "2/7"}};
}

inline std::vector<pcanon::Rational> qvec(const std::vector<std::string>& parts) {
  std::vector<pcanon::Rational> out;
  out.reserve(parts.size());
  for (const auto& p : parts) out.push_back(q(p));
  return out;
}

inline pcanon::BlockMatrix make_block(const std::vector<int>& blocks,
                                      const std::vector<std::vector<std::string>>& rows) {
  pcanon::BlockMatrix a(static_cast<int>(rows.size()), blocks);
  for (int i = 0; i < a.rows(); ++i)
    for (int c = 0; c < a.cols(); ++c) a.at(i, c) = q(rows[i][c]);
  return a;
}

inline pcanon::SquareMatrix make_square(const std::vector<std::vector<std::string>>& rows) {
  pcanon::SquareMatrix m(static_cast<int>(rows.size()));
  for (int i = 0; i < m.order(); ++i)
    for (int j = 0; j < m.order(); ++j) m.at(i, j) = q(rows[i][j]);
  return m;
}

// Cofactor expansion; exponential, used only as an independent oracle for
// the elimination-based determinant on small matrices.
inline pcanon::Rational naive_det(const pcanon::SquareMatrix& m) {
  const int n = m.order();
  if (n == 1) return m.at(0, 0);
  pcanon::Rational acc = 0;
  int sign = 1;
  for (int j = 0; j < n; ++j) {
    pcanon::SquareMatrix minor(n - 1);
    for (int r = 1; r < n; ++r) {
      int cc = 0;
      for (int c = 0; c < n; ++c) {
        if (c == j) continue;
        minor.at(r - 1, cc++) = m.at(r, c);
      }
    }
    acc += pcanon::Rational(sign) * m.at(0, j) * naive_det(minor);
    sign = -sign;
  }
  return acc;
}

}  // namespace testsupport
