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
#include <utility>
#include <vector>

#include "pcanon/rational.hpp"

namespace pcanon {

/** Attempted solve/inversion with a singular matrix. */
class SingularMatrixError : public std::runtime_error {
 public:
  explicit SingularMatrixError(const std::string& what) : std::runtime_error(what) {}
};

/** Enumeration request larger than the configured guard. */
class EnumerationCapError : public std::runtime_error {
 public:
  explicit EnumerationCapError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Column address in a block matrix: block j and position k within the block.
 * Stored zero-based; serialized forms and log output are one-based.
 */
struct ColumnId {
  int block = 0;
  int index = 0;
  friend bool operator==(const ColumnId&, const ColumnId&) = default;
  friend auto operator<=>(const ColumnId&, const ColumnId&) = default;
};

/** Dense m-by-m matrix of exact rationals, row-major. */
class SquareMatrix {
 public:
  explicit SquareMatrix(int order)
      : order_(order), entries_(static_cast<std::size_t>(order) * order, Rational(0)) {}

  static SquareMatrix identity(int order);

  int order() const { return order_; }
  Rational& at(int i, int j) { return entries_[static_cast<std::size_t>(i) * order_ + j]; }
  const Rational& at(int i, int j) const {
    return entries_[static_cast<std::size_t>(i) * order_ + j];
  }

  friend bool operator==(const SquareMatrix&, const SquareMatrix&) = default;

 private:
  int order_;
  std::vector<Rational> entries_;
};

/**
 * An m-by-n rational matrix whose n columns are partitioned into m blocks,
 * block j holding columns (j,1)..(j,n_j).  The flat column order is block
 * after block, so the precomputed offset table turns a ColumnId into a plain
 * column index in O(1).
 */
class BlockMatrix {
 public:
  BlockMatrix(int rows, std::vector<int> block_sizes);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int num_blocks() const { return static_cast<int>(block_sizes_.size()); }
  int block_size(int block) const { return block_sizes_[block]; }
  int block_offset(int block) const { return block_offsets_[block]; }
  const std::vector<int>& block_sizes() const { return block_sizes_; }

  int flat_index(ColumnId id) const { return block_offsets_[id.block] + id.index; }
  ColumnId column_id(int flat) const;

  Rational& at(int row, int flat_col) {
    return entries_[static_cast<std::size_t>(row) * cols_ + flat_col];
  }
  const Rational& at(int row, int flat_col) const {
    return entries_[static_cast<std::size_t>(row) * cols_ + flat_col];
  }
  Rational& at(int row, ColumnId id) { return at(row, flat_index(id)); }
  const Rational& at(int row, ColumnId id) const { return at(row, flat_index(id)); }

  /** Column as a dense vector of length rows(). */
  std::vector<Rational> column(int flat_col) const;

  friend bool operator==(const BlockMatrix&, const BlockMatrix&) = default;

 private:
  int rows_;
  int cols_;
  std::vector<int> block_sizes_;
  std::vector<int> block_offsets_;
  std::vector<Rational> entries_;
};

/**
 * A choice of one column per block; identifies a representative submatrix
 * and doubles as the simplex basis over a block matrix.  Zero-based.
 */
class RepSelection {
 public:
  explicit RepSelection(std::vector<int> choice) : choice_(std::move(choice)) {}

  /** The selection picking the last column of every block. */
  static RepSelection last_columns(const BlockMatrix& a);
  /** The selection picking the first column of every block. */
  static RepSelection first_columns(const BlockMatrix& a);

  int size() const { return static_cast<int>(choice_.size()); }
  int operator[](int block) const { return choice_[block]; }
  void set(int block, int k) { choice_[block] = k; }
  const std::vector<int>& choices() const { return choice_; }

  /** True when every choice is within the block sizes of `a`. */
  bool valid_for(const BlockMatrix& a) const;

  /** Lexicographic successor over the block-size odometer; false at the end. */
  bool advance(const BlockMatrix& a);

  friend bool operator==(const RepSelection&, const RepSelection&) = default;

 private:
  std::vector<int> choice_;
};

/** Parse the canonical matrix JSON format; throws ParseError on violations. */
BlockMatrix parse_block_matrix(const std::string& text);

/** Canonical matrix JSON (exact rational strings, deterministic bytes). */
std::string serialize_block_matrix(const BlockMatrix& a);

/** The m-by-m submatrix taking column (j, s(j)) of every block j. */
SquareMatrix representative_submatrix(const BlockMatrix& a, const RepSelection& s);

/** Exact determinant via fraction-free (Bareiss) elimination. */
Rational determinant(const SquareMatrix& m);

/** Exact solution of M x = b; throws SingularMatrixError. */
std::vector<Rational> solve_linear(const SquareMatrix& m, std::span<const Rational> b);

/** Exact solution of y^T M = c^T (the row-vector companion of solve_linear). */
std::vector<Rational> solve_transposed(const SquareMatrix& m, std::span<const Rational> c);

/** Exact solutions of M X = B for several right-hand sides at once. */
std::vector<std::vector<Rational>> solve_columns(const SquareMatrix& m,
                                                 const std::vector<std::vector<Rational>>& rhs);

/** Exact inverse; throws SingularMatrixError. */
SquareMatrix inverse(const SquareMatrix& m);

SquareMatrix multiply(const SquareMatrix& x, const SquareMatrix& y);
BlockMatrix multiply(const SquareMatrix& x, const BlockMatrix& a);

/** u^T A as a dense row of length a.cols(). */
std::vector<Rational> row_times(std::span<const Rational> u, const BlockMatrix& a);

/** Number of representative selections, saturating at `cap + 1`. */
long long selection_count(const BlockMatrix& a, long long cap);

struct PPropertyViolation {
  RepSelection first;   // establishes the reference sign (or the zero case)
  RepSelection second;  // differing or zero-determinant selection
};

struct PPropertyVerdict {
  int sign = 0;  // +1 or -1 when the property holds
  std::optional<PPropertyViolation> violation;
  bool holds() const { return !violation.has_value(); }
};

/**
 * Enumerates every representative submatrix and compares determinant signs.
 * A zero determinant is itself a violation and is reported with both
 * selections equal.  Throws EnumerationCapError when the number of
 * selections exceeds `enumeration_cap`.
 */
PPropertyVerdict p_property(const BlockMatrix& a, long long enumeration_cap = 1'000'000);

/**
 * For x = y^T A, returns a block j whose entries x_{j1}..x_{jn_j} all share
 * one nonzero sign, or nullopt when no block does.
 */
std::optional<int> sign_preserving_witness(const BlockMatrix& a, std::span<const Rational> y);

struct HatDecomposition {
  SquareMatrix c_hat;  // columns (j, n_j) of A
  BlockMatrix a_hat;   // C_hat^{-1} A; its (j, n_j) columns are basis vectors
};

/**
 * Splits A into the last-column representative matrix C_hat and the
 * normalized A_hat = C_hat^{-1} A.  A singular C_hat cannot occur when A has
 * the P-property and is reported as a data error (SingularMatrixError).
 */
HatDecomposition hat_decomposition(const BlockMatrix& a);

}  // namespace pcanon
