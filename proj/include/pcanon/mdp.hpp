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

#ifndef PCANON_MDP_HPP
#define PCANON_MDP_HPP

#include <cstdint>
#include <optional>
#include <vector>

#include "pcanon/blockmat.hpp"
#include "pcanon/rational.hpp"

namespace pcanon {

// Discount structure of a block matrix whose column (j,k) equals
// e_j - gamma * p_jk for a column-stochastic vector p_jk.
struct MdpDecomposition {
  Rational gamma;  // in [0, 1)
  // One stochastic m-vector per flat column, block-major.  Empty when
  // gamma is zero (the columns are then standard basis vectors).
  std::vector<std::vector<Rational>> p_columns;

  bool operator==(const MdpDecomposition&) const = default;
};

// Recovers the discount structure if the matrix has it exactly: all column
// sums share one value 1-gamma in (0,1], own-block entries lie in
// [1-gamma, 1], cross-block entries in [-gamma, 0].  Returns nullopt on any
// mismatch; this is a recognition verdict, not an error.
std::optional<MdpDecomposition> mdp_recognize(const BlockMatrix& a);

// Appends one size-1 block: a zero column whose new-row entry is
// d = min column sum, and a new row holding d minus each old column sum.
// Every column of the result sums to d.  Throws std::domain_error when the
// minimum column sum is not positive.
BlockMatrix mdp_augment(const BlockMatrix& xa);

// Deterministic instance factory.  Draws column-stochastic vectors with
// denominators at most 100 from a SplitMix64 stream seeded by `seed`, forms
// the matrix with columns e_j - gamma * p_jk, and when `disguise` is set
// left-multiplies by a random nonsingular matrix (unit lower triangular
// perturbation times a permutation).  The stochastic draws happen before any
// disguise draw, so the two settings of `disguise` agree on p for one seed.
struct GeneratedInstance {
  BlockMatrix a;
  SquareMatrix disguise;  // identity when disguise was off
  Rational gamma;
  // The drawn stochastic columns, block-major; lets callers check
  // recognition against the exact generator output.
  std::vector<std::vector<Rational>> p_columns;
};

GeneratedInstance gen_instance(int m, const std::vector<int>& blocks,
                               const Rational& gamma, std::uint64_t seed,
                               bool disguise);

}  // namespace pcanon

#endif  // PCANON_MDP_HPP
