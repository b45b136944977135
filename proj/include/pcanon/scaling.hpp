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
#include "pcanon/zform.hpp"

namespace pcanon {

/** A scaling stage reached a state its preconditions rule out. */
class ScalingError : public std::runtime_error {
 public:
  explicit ScalingError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Optimal row scaling of a normalized form: the largest d with
 * x^T Abar >= d e^n and x_j Abar(j,(j,k)) <= 1, reached at x = d v.
 */
struct ScalingResult {
  std::vector<Rational> x;
  Rational d;
  std::vector<Rational> v;  // x = d * v
  BlockMatrix xa_opt;       // diag(x) * Abar
  long long pivots = 0;     // complementary solve
  ColumnId argmax;          // lex-smallest (i,k) maximizing v_i * Abar(i,(i,k))
  std::vector<std::vector<int>> tight_columns;  // per block: k with column sum d
};

/**
 * Exact dual solution, usable for the scaling LP (y nonzero only on
 * own-block entries) or for the full LP over Abar.  y is dense m rows by
 * flat columns; w is over flat columns.
 */
struct DualCertificate {
  std::vector<std::vector<Rational>> y;
  std::vector<Rational> w;
  Rational objective;
};

/**
 * The unique v with v^T Abar >= e^n and a tight column in every block,
 * found by the pivoting engine on negated data.
 */
std::vector<Rational> complementary_v(const BlockMatrix& abar);

/** Scales v by the largest admissible d = 1 / max v_i Abar(i,(i,k)). */
ScalingResult optimal_scaling(const BlockMatrix& abar);

/**
 * Dual optimum of the scaling LP: y puts d on the argmax own-block entry,
 * w solves Cw = d e_i over a representative submatrix C of diag(x)Abar
 * whose columns all sum to d.  Verified before returning.
 */
DualCertificate scaling_dual_certificate(const BlockMatrix& abar, const ScalingResult& res);

/**
 * Extends a scaling-LP dual to a dual of the full LP over Abar by solving,
 * for every row i, a small system over one zero entry per cross block;
 * the objective is untouched.  Verified before returning.
 */
DualCertificate lift_dual_to_lp(const BlockMatrix& abar, const DualCertificate& dual);

/** Exact feasibility + objective check against the scaling LP dual. */
bool verify_scaling_dual(const BlockMatrix& abar, const DualCertificate& dual,
                         const Rational& optimum);

/** Exact feasibility + objective check against the dual of the full LP. */
bool verify_lp_dual(const BlockMatrix& abar, const DualCertificate& dual,
                    const Rational& optimum);

/** The whole pipeline: normalize, scale, certify. */
struct TwoStepResult {
  SquareMatrix xopt;  // diag(x) * Xbar, optimal for the LP over A
  Rational d;
  ZFormResult zform;
  ScalingResult scaling;
  DualCertificate scaling_dual;
  DualCertificate lp_dual;
};

TwoStepResult two_step(const BlockMatrix& a);

}  // namespace pcanon
