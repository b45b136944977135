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

#include "pcanon/blockmat.hpp"

#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace pcanon {

namespace {

using IntRow = std::vector<Integer>;

// Scale each rational row by the lcm of its denominators.  Positive row
// scalings change neither the solution set of a linear system nor the sign
// of a determinant; the accumulated product corrects determinant values.
std::vector<IntRow> integerize_rows(const std::vector<std::vector<Rational>>& rows,
                                    std::vector<Integer>* scales) {
  std::vector<IntRow> out;
  out.reserve(rows.size());
  for (const auto& row : rows) {
    Integer l = 1;
    for (const auto& q : row) l = lcm(l, Integer(denominator(q)));
    IntRow irow;
    irow.reserve(row.size());
    for (const auto& q : row) irow.push_back(Integer(numerator(q)) * (l / Integer(denominator(q))));
    if (scales) scales->push_back(l);
    out.push_back(std::move(irow));
  }
  return out;
}

// Fraction-free forward elimination on an integer matrix, pivoting within
// the first `pivot_cols` columns.  Returns the permutation sign, or 0 when
// some pivot column is entirely zero (singular sub-block).
int bareiss_forward(std::vector<IntRow>& m, int pivot_cols) {
  const int rows = static_cast<int>(m.size());
  const int width = rows == 0 ? 0 : static_cast<int>(m[0].size());
  int sign = 1;
  Integer prev = 1;
  for (int k = 0; k < pivot_cols; ++k) {
    int pivot = -1;
    for (int i = k; i < rows; ++i) {
      if (m[i][k] != 0) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) return 0;
    if (pivot != k) {
      std::swap(m[pivot], m[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < rows; ++i) {
      for (int j = k + 1; j < width; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;  // exact
      }
      m[i][k] = 0;
    }
    prev = m[k][k];
  }
  return sign;
}

std::vector<std::vector<Rational>> square_rows(const SquareMatrix& m) {
  std::vector<std::vector<Rational>> rows(m.order());
  for (int i = 0; i < m.order(); ++i) {
    rows[i].reserve(m.order());
    for (int j = 0; j < m.order(); ++j) rows[i].push_back(m.at(i, j));
  }
  return rows;
}

}  // namespace

SquareMatrix SquareMatrix::identity(int order) {
  SquareMatrix m(order);
  for (int i = 0; i < order; ++i) m.at(i, i) = 1;
  return m;
}

BlockMatrix::BlockMatrix(int rows, std::vector<int> block_sizes)
    : rows_(rows), block_sizes_(std::move(block_sizes)) {
  if (rows_ <= 0) throw std::invalid_argument("BlockMatrix needs at least one row");
  block_offsets_.reserve(block_sizes_.size());
  int offset = 0;
  for (int size : block_sizes_) {
    if (size < 1) throw std::invalid_argument("every block size must be >= 1");
    block_offsets_.push_back(offset);
    offset += size;
  }
  cols_ = offset;
  entries_.assign(static_cast<std::size_t>(rows_) * cols_, Rational(0));
}

ColumnId BlockMatrix::column_id(int flat) const {
  for (int j = num_blocks() - 1; j >= 0; --j) {
    if (flat >= block_offsets_[j]) return ColumnId{j, flat - block_offsets_[j]};
  }
  throw std::out_of_range("flat column index out of range");
}

std::vector<Rational> BlockMatrix::column(int flat_col) const {
  std::vector<Rational> col;
  col.reserve(rows_);
  for (int i = 0; i < rows_; ++i) col.push_back(at(i, flat_col));
  return col;
}

RepSelection RepSelection::last_columns(const BlockMatrix& a) {
  std::vector<int> choice(a.num_blocks());
  for (int j = 0; j < a.num_blocks(); ++j) choice[j] = a.block_size(j) - 1;
  return RepSelection(std::move(choice));
}

RepSelection RepSelection::first_columns(const BlockMatrix& a) {
  return RepSelection(std::vector<int>(a.num_blocks(), 0));
}

bool RepSelection::valid_for(const BlockMatrix& a) const {
  if (size() != a.num_blocks()) return false;
  for (int j = 0; j < size(); ++j) {
    if (choice_[j] < 0 || choice_[j] >= a.block_size(j)) return false;
  }
  return true;
}

bool RepSelection::advance(const BlockMatrix& a) {
  for (int j = size() - 1; j >= 0; --j) {
    if (choice_[j] + 1 < a.block_size(j)) {
      ++choice_[j];
      for (int t = j + 1; t < size(); ++t) choice_[t] = 0;
      return true;
    }
  }
  return false;
}

BlockMatrix parse_block_matrix(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what());
  }
  try {
    if (!doc.is_object() || !doc.contains("m") || !doc.contains("blocks") || !doc.contains("rows"))
      throw ParseError("matrix JSON needs fields m, blocks, rows");
    const int m = doc.at("m").get<int>();
    std::vector<int> blocks = doc.at("blocks").get<std::vector<int>>();
    if (m <= 0) throw ParseError("m must be positive");
    if (static_cast<int>(blocks.size()) != m)
      throw ParseError("blocks must list one size per row");
    BlockMatrix a(m, blocks);
    const auto& rows = doc.at("rows");
    if (!rows.is_array() || static_cast<int>(rows.size()) != m)
      throw ParseError("rows must hold exactly m arrays");
    for (int i = 0; i < m; ++i) {
      const auto& row = rows.at(i);
      if (!row.is_array() || static_cast<int>(row.size()) != a.cols())
        throw ParseError("row " + std::to_string(i + 1) + " must hold " +
                         std::to_string(a.cols()) + " entries (block sizes inconsistent)");
      for (int c = 0; c < a.cols(); ++c) {
        a.at(i, c) = parse_rational(row.at(c).get<std::string>());
      }
    }
    return a;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("matrix JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

std::string serialize_block_matrix(const BlockMatrix& a) {
  nlohmann::ordered_json doc;
  doc["m"] = a.rows();
  doc["blocks"] = a.block_sizes();
  auto rows = nlohmann::ordered_json::array();
  for (int i = 0; i < a.rows(); ++i) {
    auto row = nlohmann::ordered_json::array();
    for (int c = 0; c < a.cols(); ++c) row.push_back(to_string(a.at(i, c)));
    rows.push_back(std::move(row));
  }
  doc["rows"] = std::move(rows);
  return doc.dump();
}

SquareMatrix representative_submatrix(const BlockMatrix& a, const RepSelection& s) {
  if (!s.valid_for(a)) throw std::out_of_range("selection out of range for block sizes");
  SquareMatrix c(a.rows());
  for (int j = 0; j < a.num_blocks(); ++j) {
    const int col = a.flat_index(ColumnId{j, s[j]});
    for (int i = 0; i < a.rows(); ++i) c.at(i, j) = a.at(i, col);
  }
  return c;
}

Rational determinant(const SquareMatrix& m) {
  const int n = m.order();
  if (n == 0) return Rational(1);
  std::vector<Integer> scales;
  auto rows = integerize_rows(square_rows(m), &scales);
  const int sign = bareiss_forward(rows, n - 1);
  if (sign == 0) return Rational(0);
  Integer det = rows[n - 1][n - 1] * sign;
  Integer denom = 1;
  for (const auto& s : scales) denom *= s;
  return Rational(det, denom);
}

std::vector<std::vector<Rational>> solve_columns(const SquareMatrix& m,
                                                 const std::vector<std::vector<Rational>>& rhs) {
  const int n = m.order();
  auto rows = square_rows(m);
  for (int i = 0; i < n; ++i) {
    for (const auto& col : rhs) {
      if (static_cast<int>(col.size()) != n)
        throw std::invalid_argument("right-hand side length mismatch");
      rows[i].push_back(col[i]);
    }
  }
  auto aug = integerize_rows(rows, nullptr);
  if (bareiss_forward(aug, n) == 0) throw SingularMatrixError("singular matrix in solve");
  // Also eliminates nothing below row n-1; aug is upper triangular on the
  // first n columns with nonzero diagonal.  Back-substitute per column.
  std::vector<std::vector<Rational>> out(rhs.size(), std::vector<Rational>(n));
  for (std::size_t c = 0; c < rhs.size(); ++c) {
    const int bcol = n + static_cast<int>(c);
    for (int i = n - 1; i >= 0; --i) {
      Rational sum = Rational(aug[i][bcol]);
      for (int j = i + 1; j < n; ++j) sum -= Rational(aug[i][j]) * out[c][j];
      out[c][i] = sum / Rational(aug[i][i]);
    }
  }
  return out;
}

std::vector<Rational> solve_linear(const SquareMatrix& m, std::span<const Rational> b) {
  return solve_columns(m, {std::vector<Rational>(b.begin(), b.end())})[0];
}

std::vector<Rational> solve_transposed(const SquareMatrix& m, std::span<const Rational> c) {
  SquareMatrix t(m.order());
  for (int i = 0; i < m.order(); ++i)
    for (int j = 0; j < m.order(); ++j) t.at(i, j) = m.at(j, i);
  return solve_linear(t, c);
}

SquareMatrix inverse(const SquareMatrix& m) {
  const int n = m.order();
  std::vector<std::vector<Rational>> basis(n, std::vector<Rational>(n, Rational(0)));
  for (int j = 0; j < n; ++j) basis[j][j] = 1;
  auto cols = solve_columns(m, basis);
  SquareMatrix inv(n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) inv.at(i, j) = cols[j][i];
  return inv;
}

SquareMatrix multiply(const SquareMatrix& x, const SquareMatrix& y) {
  const int n = x.order();
  SquareMatrix out(n);
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) {
      if (x.at(i, k) == 0) continue;
      for (int j = 0; j < n; ++j) out.at(i, j) += x.at(i, k) * y.at(k, j);
    }
  return out;
}

BlockMatrix multiply(const SquareMatrix& x, const BlockMatrix& a) {
  if (x.order() != a.rows()) throw std::invalid_argument("dimension mismatch in multiply");
  BlockMatrix out(a.rows(), a.block_sizes());
  for (int i = 0; i < a.rows(); ++i)
    for (int k = 0; k < a.rows(); ++k) {
      if (x.at(i, k) == 0) continue;
      for (int c = 0; c < a.cols(); ++c) out.at(i, c) += x.at(i, k) * a.at(k, c);
    }
  return out;
}

std::vector<Rational> row_times(std::span<const Rational> u, const BlockMatrix& a) {
  if (static_cast<int>(u.size()) != a.rows())
    throw std::invalid_argument("row vector length mismatch");
  std::vector<Rational> out(a.cols(), Rational(0));
  for (int i = 0; i < a.rows(); ++i) {
    if (u[i] == 0) continue;
    for (int c = 0; c < a.cols(); ++c) out[c] += u[i] * a.at(i, c);
  }
  return out;
}

long long selection_count(const BlockMatrix& a, long long cap) {
  long long count = 1;
  for (int j = 0; j < a.num_blocks(); ++j) {
    count *= a.block_size(j);
    if (count > cap) return cap + 1;
  }
  return count;
}

PPropertyVerdict p_property(const BlockMatrix& a, long long enumeration_cap) {
  if (selection_count(a, enumeration_cap) > enumeration_cap)
    throw EnumerationCapError("representative enumeration exceeds cap of " +
                              std::to_string(enumeration_cap));
  RepSelection s = RepSelection::first_columns(a);
  std::optional<RepSelection> reference;
  int ref_sign = 0;
  do {
    const int sign = determinant(representative_submatrix(a, s)).sign();
    if (sign == 0) return PPropertyVerdict{0, PPropertyViolation{s, s}};
    if (!reference) {
      reference = s;
      ref_sign = sign;
    } else if (sign != ref_sign) {
      return PPropertyVerdict{0, PPropertyViolation{*reference, s}};
    }
  } while (s.advance(a));
  return PPropertyVerdict{ref_sign, std::nullopt};
}

std::optional<int> sign_preserving_witness(const BlockMatrix& a, std::span<const Rational> y) {
  bool all_zero = true;
  for (const auto& q : y)
    if (q != 0) all_zero = false;
  if (all_zero) throw std::invalid_argument("witness requires a nonzero vector");
  const auto x = row_times(y, a);
  for (int j = 0; j < a.num_blocks(); ++j) {
    const int sign = x[a.block_offset(j)].sign();
    if (sign == 0) continue;
    bool uniform = true;
    for (int k = 1; k < a.block_size(j); ++k) {
      if (x[a.block_offset(j) + k].sign() != sign) {
        uniform = false;
        break;
      }
    }
    if (uniform) return j;
  }
  return std::nullopt;
}

HatDecomposition hat_decomposition(const BlockMatrix& a) {
  SquareMatrix c_hat = representative_submatrix(a, RepSelection::last_columns(a));
  std::vector<std::vector<Rational>> cols;
  cols.reserve(a.cols());
  for (int c = 0; c < a.cols(); ++c) cols.push_back(a.column(c));
  std::vector<std::vector<Rational>> solved;
  try {
    solved = solve_columns(c_hat, cols);
  } catch (const SingularMatrixError&) {
    throw SingularMatrixError(
        "last-column representative matrix is singular; the input cannot have the P-property");
  }
  BlockMatrix a_hat(a.rows(), a.block_sizes());
  for (int c = 0; c < a.cols(); ++c)
    for (int i = 0; i < a.rows(); ++i) a_hat.at(i, c) = solved[c][i];
  return HatDecomposition{std::move(c_hat), std::move(a_hat)};
}

}  // namespace pcanon
