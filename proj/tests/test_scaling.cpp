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

#include <doctest.h>

#include <vector>

#include "pcanon/scaling.hpp"
#include "support.hpp"

using namespace pcanon;
using testsupport::make_block;
using testsupport::make_square;
using testsupport::q;
using testsupport::qvec;
using testsupport::worked_abar_rows;
using testsupport::worked_instance;
using testsupport::worked_scaled_rows;
using testsupport::worked_xbar_rows;

namespace {

BlockMatrix abar() { return make_block({2, 2, 2}, worked_abar_rows()); }

BlockMatrix eye(int m) {
  BlockMatrix a(m, std::vector<int>(m, 1));
  for (int i = 0; i < m; ++i) a.at(i, i) = 1;
  return a;
}

}  // namespace

TEST_CASE("complementary vector of the worked normalized form") {
  const auto v = complementary_v(abar());
  CHECK(v == qvec({"47/33", "532/297", "2"}));
  // Feasibility v^T Abar >= e with per-block tightness.
  const auto row = row_times(v, abar());
  CHECK(row == qvec({"1", "1", "2", "1", "1", "2"}));
}

TEST_CASE("complementary vector trivia") {
  CHECK(complementary_v(eye(3)) == qvec({"1", "1", "1"}));
  BlockMatrix twice = eye(2);
  twice.at(0, 0) = 2;
  twice.at(1, 1) = 2;
  CHECK(complementary_v(twice) == qvec({"1/2", "1/2"}));
}

TEST_CASE("optimal scaling of the worked instance") {
  const auto res = optimal_scaling(abar());
  CHECK(res.d == q("33/70"));
  CHECK(res.x == qvec({"47/70", "38/45", "33/35"}));
  CHECK(res.v == qvec({"47/33", "532/297", "2"}));
  CHECK(res.argmax == ColumnId{1, 0});
  CHECK(res.pivots == 1);
  CHECK(res.xa_opt == make_block({2, 2, 2}, worked_scaled_rows()));
  CHECK(res.tight_columns == std::vector<std::vector<int>>{{0, 1}, {1}, {0}});
}

TEST_CASE("scaling result invariants hold by substitution") {
  BlockMatrix a = abar();
  const auto res = optimal_scaling(a);
  // Column sums at least d, tight where recorded.
  for (int col = 0; col < a.cols(); ++col) {
    Rational sum = 0;
    for (int i = 0; i < a.rows(); ++i) sum += res.xa_opt.at(i, col);
    CHECK(sum >= res.d);
  }
  // Own-block entries scaled to at most one, with equality at the argmax.
  bool any_tight = false;
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.block_size(i); ++k) {
      const Rational e = res.x[i] * a.at(i, ColumnId{i, k});
      CHECK(e <= 1);
      if (e == 1) any_tight = true;
    }
  CHECK(any_tight);
  CHECK(res.x[res.argmax.block] * a.at(res.argmax.block, ColumnId{res.argmax.block,
                                                                  res.argmax.index}) == 1);
  CHECK(res.d > 0);
}

TEST_CASE("identity scales to itself") {
  const auto res = optimal_scaling(eye(2));
  CHECK(res.d == 1);
  CHECK(res.x == qvec({"1", "1"}));
  CHECK(res.argmax == ColumnId{0, 0});
}

TEST_CASE("scaling dual certificate of the worked instance") {
  BlockMatrix a = abar();
  const auto res = optimal_scaling(a);
  const auto dual = scaling_dual_certificate(a, res);
  CHECK(dual.objective == q("33/70"));
  CHECK(dual.y[1][2] == q("33/70"));  // own-block entry (2,(2,1))
  CHECK(dual.w == qvec({"5/14", "0", "0", "9/14", "0", "0"}));
  Rational ysum = 0;
  for (const auto& row : dual.y)
    for (const auto& e : row) ysum += e;
  CHECK(ysum == q("33/70"));  // the argmax entry is the only nonzero
  CHECK(verify_scaling_dual(a, dual, res.d));
}

TEST_CASE("identity dual certificate") {
  BlockMatrix a = eye(2);
  const auto res = optimal_scaling(a);
  const auto dual = scaling_dual_certificate(a, res);
  CHECK(dual.y[0][0] == 1);
  CHECK(dual.w == qvec({"1", "0"}));
  CHECK(verify_scaling_dual(a, dual, Rational(1)));
}

TEST_CASE("lifting the worked dual to the full LP") {
  BlockMatrix a = abar();
  const auto res = optimal_scaling(a);
  const auto lifted = lift_dual_to_lp(a, scaling_dual_certificate(a, res));
  CHECK(lifted.objective == q("33/70"));
  CHECK(lifted.w == qvec({"5/14", "0", "0", "9/14", "0", "0"}));
  std::vector<std::vector<Rational>> expected_y = {
      qvec({"0", "0", "33/70", "0", "0", "1/35"}),
      qvec({"0", "0", "33/70", "0", "0", "1/35"}),
      qvec({"5/14", "0", "0", "9/14", "0", "0"})};
  CHECK(lifted.y == expected_y);
  CHECK(verify_lp_dual(a, lifted, res.d));
  // The scaling-only check must reject it: cross-block entries are nonzero.
  CHECK_FALSE(verify_scaling_dual(a, lifted, res.d));
}

TEST_CASE("lifting keeps w and the objective") {
  BlockMatrix a = eye(2);
  const auto res = optimal_scaling(a);
  const auto dual = scaling_dual_certificate(a, res);
  const auto lifted = lift_dual_to_lp(a, dual);
  CHECK(lifted.w == dual.w);
  CHECK(lifted.objective == dual.objective);
  // Row 2's balance equation against row 1 forces mass onto the zero entry.
  CHECK(lifted.y[1][0] == 1);
  CHECK(verify_lp_dual(a, lifted, Rational(1)));

  // With a single row there are no cross-block systems at all.
  BlockMatrix single = make_block({2}, {{"1/2", "1"}});
  const auto sres = optimal_scaling(single);
  const auto sdual = scaling_dual_certificate(single, sres);
  const auto slift = lift_dual_to_lp(single, sdual);
  CHECK(slift.y == sdual.y);
  CHECK(slift.w == sdual.w);
  CHECK(verify_lp_dual(single, slift, sres.d));
}

TEST_CASE("verification rejects tampered certificates") {
  BlockMatrix a = abar();
  const auto res = optimal_scaling(a);
  const auto dual = scaling_dual_certificate(a, res);

  auto bad = dual;
  bad.w[0] += 1;  // breaks sum(w) = 1
  CHECK_FALSE(verify_scaling_dual(a, bad, res.d));

  bad = dual;
  bad.y[1][2] = -bad.y[1][2];  // negativity
  CHECK_FALSE(verify_scaling_dual(a, bad, res.d));

  bad = dual;
  bad.y[1][2] = 0;  // balance equation broken
  CHECK_FALSE(verify_scaling_dual(a, bad, res.d));

  CHECK_FALSE(verify_scaling_dual(a, dual, res.d + 1));  // objective mismatch

  const auto lifted = lift_dual_to_lp(a, dual);
  auto badl = lifted;
  badl.y[0][5] = 0;
  CHECK_FALSE(verify_lp_dual(a, badl, res.d));
}

TEST_CASE("two step pipeline end to end on the worked instance") {
  BlockMatrix a = worked_instance();
  const auto ts = two_step(a);
  CHECK(ts.d == q("33/70"));
  CHECK(ts.zform.xbar == make_square(worked_xbar_rows()));
  CHECK(ts.scaling.x == qvec({"47/70", "38/45", "33/35"}));
  // Xopt = diag(x) Xbar solves the LP over A: Xopt * A is the scaled form.
  CHECK(multiply(ts.xopt, a) == make_block({2, 2, 2}, worked_scaled_rows()));
  CHECK(verify_zform(ts.xopt, a).holds());
  CHECK(verify_scaling_dual(ts.zform.abar, ts.scaling_dual, ts.d));
  CHECK(verify_lp_dual(ts.zform.abar, ts.lp_dual, ts.d));
}

TEST_CASE("two step on the identity") {
  BlockMatrix a = eye(3);
  const auto ts = two_step(a);
  CHECK(ts.d == 1);
  CHECK(ts.xopt == SquareMatrix::identity(3));
}
