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

#include "pcanon/mdp.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <utility>

namespace pcanon {

namespace {

std::vector<Rational> column_sums(const BlockMatrix& a) {
  std::vector<Rational> sums(a.cols(), Rational(0));
  for (int col = 0; col < a.cols(); ++col)
    for (int i = 0; i < a.rows(); ++i) sums[col] += a.at(i, col);
  return sums;
}

// SplitMix64, the published 64-bit mixing generator; chosen so instance
// suites reproduce bit-for-bit across implementations.
struct SplitMix64 {
  std::uint64_t state;

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound); bound must be positive and desk-scale, so the
  // modulo bias is irrelevant for test-instance variety.
  std::uint64_t below(std::uint64_t bound) { return next() % bound; }
};

// Stochastic m-vector with one shared denominator at most 100: sorted cut
// points in [0, den] become the numerators.
std::vector<Rational> draw_stochastic(SplitMix64& rng, int m) {
  const std::uint64_t den = 1 + rng.below(100);
  std::vector<std::uint64_t> cuts(m + 1);
  cuts[0] = 0;
  cuts[m] = den;
  for (int i = 1; i < m; ++i) cuts[i] = rng.below(den + 1);
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rational> p(m);
  for (int i = 0; i < m; ++i)
    p[i] = Rational(Integer(cuts[i + 1] - cuts[i]), Integer(den));
  return p;
}

}  // namespace

std::optional<MdpDecomposition> mdp_recognize(const BlockMatrix& a) {
  const auto sums = column_sums(a);
  for (const auto& s : sums)
    if (s != sums[0]) return std::nullopt;
  const Rational common = sums[0];
  if (common <= 0 || common > 1) return std::nullopt;
  const Rational gamma = 1 - common;
  for (int col = 0; col < a.cols(); ++col) {
    const int own = a.column_id(col).block;
    for (int i = 0; i < a.rows(); ++i) {
      const Rational& e = a.at(i, col);
      if (i == own ? (e < common || e > 1) : (e < -gamma || e > 0))
        return std::nullopt;
    }
  }
  MdpDecomposition dec;
  dec.gamma = gamma;
  if (gamma != 0) {
    dec.p_columns.resize(a.cols());
    for (int col = 0; col < a.cols(); ++col) {
      const int own = a.column_id(col).block;
      auto& p = dec.p_columns[col];
      p.assign(a.rows(), Rational(0));
      for (int i = 0; i < a.rows(); ++i)
        p[i] = ((i == own ? Rational(1) : Rational(0)) - a.at(i, col)) / gamma;
    }
  }
  return dec;
}

BlockMatrix mdp_augment(const BlockMatrix& xa) {
  const auto sums = column_sums(xa);
  const Rational d = *std::min_element(sums.begin(), sums.end());
  if (d <= 0)
    throw std::domain_error(
        "augmentation needs every column sum positive; minimum is " +
        to_string(d));
  std::vector<int> blocks = xa.block_sizes();
  blocks.push_back(1);
  BlockMatrix out(xa.rows() + 1, blocks);
  for (int i = 0; i < xa.rows(); ++i)
    for (int col = 0; col < xa.cols(); ++col) out.at(i, col) = xa.at(i, col);
  for (int col = 0; col < xa.cols(); ++col)
    out.at(xa.rows(), col) = d - sums[col];
  out.at(xa.rows(), xa.cols()) = d;
  return out;
}

GeneratedInstance gen_instance(int m, const std::vector<int>& blocks,
                               const Rational& gamma, std::uint64_t seed,
                               bool disguise) {
  if (m < 1) throw std::invalid_argument("need at least one row");
  if (static_cast<int>(blocks.size()) != m)
    throw std::invalid_argument("need one block per row");
  for (int b : blocks)
    if (b < 1) throw std::invalid_argument("block sizes must be positive");
  if (gamma < 0 || gamma >= 1)
    throw std::domain_error("discount must lie in [0, 1)");

  SplitMix64 rng{seed};
  BlockMatrix a0(m, blocks);
  std::vector<std::vector<Rational>> p_columns(a0.cols());
  for (int col = 0; col < a0.cols(); ++col) {
    p_columns[col] = draw_stochastic(rng, m);
    const int own = a0.column_id(col).block;
    for (int i = 0; i < m; ++i)
      a0.at(i, col) =
          (i == own ? Rational(1) : Rational(0)) - gamma * p_columns[col][i];
  }

  SquareMatrix d = SquareMatrix::identity(m);
  if (disguise) {
    // Unit lower triangular times a permutation: nonsingular by construction.
    SquareMatrix lower = SquareMatrix::identity(m);
    for (int i = 1; i < m; ++i)
      for (int j = 0; j < i; ++j) {
        const auto num = static_cast<std::int64_t>(rng.below(5)) - 2;  // -2..2
        const auto den = 1 + rng.below(3);
        lower.at(i, j) = Rational(Integer(num), Integer(den));
      }
    std::vector<int> perm(m);
    std::iota(perm.begin(), perm.end(), 0);
    for (int i = m - 1; i > 0; --i)
      std::swap(perm[i], perm[rng.below(static_cast<std::uint64_t>(i) + 1)]);
    SquareMatrix pmat(m);
    for (int i = 0; i < m; ++i) pmat.at(i, perm[i]) = 1;
    d = multiply(lower, pmat);
  }

  GeneratedInstance out{disguise ? multiply(d, a0) : std::move(a0),
                        std::move(d), gamma, std::move(p_columns)};
  return out;
}

}  // namespace pcanon
