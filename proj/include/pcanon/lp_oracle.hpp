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

namespace pcanon {

enum class Sense { Minimize, Maximize };
enum class Relation { LessEq, Equal, GreaterEq };
enum class LpStatus { Optimal, Unbounded, Infeasible };

struct LpConstraint {
  std::vector<Rational> coeffs;
  Relation relation = Relation::LessEq;
  Rational rhs;
};

/**
 * A general LP over rationals.  Variables are either nonnegative or free;
 * no other bounds.  Kept dumb on purpose: this is the reference problem
 * format for the brute-force cross-check solver.
 */
struct LpProblem {
  Sense sense = Sense::Maximize;
  std::vector<Rational> objective;
  std::vector<LpConstraint> constraints;
  std::vector<bool> nonneg;  // per variable; false = free
};

/**
 * dual[i] is the multiplier of constraint i, signed so that
 * sum_i dual[i] * rhs[i] equals the optimal objective exactly.
 */
struct LpSolution {
  LpStatus status = LpStatus::Optimal;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  Rational objective;
};

/**
 * The full LP over A: maximize d subject to (XA) having own-block entries
 * at most 1, cross-block entries at most 0, and every column sum at least
 * d.  Variables: the m^2 entries of X (row-major), then d; all free.
 */
LpProblem build_lp_A(const BlockMatrix& a);

/**
 * The diagonal restriction over a normalized form: maximize d subject to
 * x^T Abar >= d e^n and x_j Abar(j,(j,k)) <= 1.  Variables x_1..x_m, d.
 */
LpProblem build_scaling_lp(const BlockMatrix& abar);

/**
 * Exact two-phase simplex with Bland's rule.  Free variables are split
 * into nonnegative differences; redundant equality rows are dropped in
 * phase one.  Never fails: every outcome is a status.
 */
LpSolution simplex_solve(const LpProblem& p);

/** Minimal JSON rendering of a problem, for debugging interchange. */
std::string lp_problem_json(const LpProblem& p);

}  // namespace pcanon
