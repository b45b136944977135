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

#include <span>
#include <string>
#include <vector>

#include "pcanon/blockmat.hpp"
#include "pcanon/rational.hpp"

namespace pcanon {

/** Z-form construction or verification failed; the input is not valid. */
class ZFormError : public std::runtime_error {
 public:
  explicit ZFormError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * The canonical normalized form: Abar = Xbar * A with positive own-block
 * entries, nonpositive cross-block entries, at least one zero per
 * cross-block pair, and Abar(j, (j, n_j)) = 1.
 */
struct ZFormResult {
  SquareMatrix xbar;
  BlockMatrix abar;
  std::vector<long long> per_row_pivots;
};

/**
 * One violated normalization condition:
 *   1 - own-block entry of Xbar*A not positive      (index = offending k)
 *   2 - cross-block entry of Xbar*A positive        (index = offending k)
 *   3 - cross-block pair (row, block) has no zero   (index = -1)
 */
struct ZFormViolation {
  int condition = 0;
  int row = 0;
  int block = 0;
  int index = -1;
  friend bool operator==(const ZFormViolation&, const ZFormViolation&) = default;
};

struct ZFormVerdict {
  std::vector<ZFormViolation> violations;
  bool holds() const { return violations.empty(); }
};

/**
 * Row i of the scaling matrix, found by one complementarity subproblem:
 * drop row i and block i from A_hat = C_hat^{-1} A, solve with cost equal
 * to minus the dropped row, embed a 1 at position i, and map back through
 * C_hat^{-1}.  Throws ZFormError when the result is not positive on block i
 * (the input lacks the sign-preserving property).
 */
std::vector<Rational> zform_row(const BlockMatrix& a, int i);

/** All m rows of Xbar plus the verified normalized form. */
ZFormResult compute_zform(const BlockMatrix& a);

/** Checks conditions 1-3 on Xbar * A; pure predicate, ignores scaling. */
ZFormVerdict verify_zform(const SquareMatrix& xbar, const BlockMatrix& a);

/**
 * Eliminates row j: adds multiples of row j to clear column (j, n_j),
 * then deletes row j and block j.  Throws ZFormError when the pivot entry
 * Abar(j, (j, n_j)) is zero.
 */
BlockMatrix lemma1_reduce(const BlockMatrix& abar, int j);

/**
 * b = Xbar^{-1} q for q > 0: a right-hand side making every representative
 * submatrix of the underlying A a feasible basis with positive solution.
 */
std::vector<Rational> nstep_cone_sample(const SquareMatrix& xbar, std::span<const Rational> q);

}  // namespace pcanon
