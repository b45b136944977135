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

#ifndef PCANON_CERTIFY_HPP
#define PCANON_CERTIFY_HPP

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "pcanon/blockmat.hpp"
#include "pcanon/rational.hpp"

namespace pcanon {

// Verdict of the inverse-nonnegativity test for Z-matrices.  When the matrix
// qualifies, `witness` holds x with x > 0 and M x = e > 0 componentwise.
struct KMatrixVerdict {
  bool is_k = false;
  std::vector<Rational> witness;  // M^{-1} e when is_k, empty otherwise

  bool operator==(const KMatrixVerdict&) const = default;
};

// Requires off-diagonal entries <= 0 (throws std::invalid_argument
// otherwise).  is_k iff M is nonsingular with a nonnegative inverse.
KMatrixVerdict k_matrix_check(const SquareMatrix& m);

// Compact evidence that a matrix admits a representative submatrix C and a
// vector x with x >= 0, x != 0, and C x <= 0.  The vector is normalized to
// component sum one.
struct FailureCertificate {
  RepSelection selection;
  std::vector<Rational> x;

  bool operator==(const FailureCertificate&) const = default;
};

// Scans representative submatrices in odometer order (first columns first)
// and returns evidence from the first one admitting a nonzero nonnegative
// vector mapped nonpositively; nullopt when every submatrix refuses one.
std::optional<FailureCertificate> find_failure_certificate(const BlockMatrix& a);

// Exact substitution check of the three defining conditions against the
// matrix the certificate speaks about.
bool verify_failure_certificate(const BlockMatrix& a,
                                const FailureCertificate& cert);

// Selection (one-based), vector, and substituted residuals C x, for
// third-party re-checking.
std::string failure_certificate_json(const BlockMatrix& a,
                                     const FailureCertificate& cert);

// Positive-vector witnesses produced by the pipeline: p with p^T Abar > 0
// and a sample b from the interior of the simultaneous-positivity cone
// (C^{-1} b > 0 for every representative submatrix C of the input).
struct PositivityWitness {
  std::vector<Rational> p;
  std::vector<Rational> b;

  bool operator==(const PositivityWitness&) const = default;
};

// Outcome of the full condition check.  Exactly one alternative is present.
// `stage` is empty on the normal path and names the aborted pipeline stage
// otherwise.  On failure, `cert_matrix` holds the matrix the certificate
// speaks about (the computed canonical form, or the raw input when the
// pipeline aborted before producing one) so the evidence stays
// independently checkable.
struct ConditionVerdict {
  std::variant<PositivityWitness, FailureCertificate> outcome;
  std::string stage;
  std::optional<BlockMatrix> cert_matrix;

  bool holds() const {
    return std::holds_alternative<PositivityWitness>(outcome);
  }
  const PositivityWitness& witness() const {
    return std::get<PositivityWitness>(outcome);
  }
  const FailureCertificate& certificate() const {
    return std::get<FailureCertificate>(outcome);
  }
};

// Runs the two-step pipeline on A.  On a positive optimal scaling, returns
// the witnesses; when scaling certifies no positive row combination, returns
// a certificate against the computed canonical form.  When the pipeline
// aborts earlier, falls back to scanning representative submatrices of A
// itself (degraded mode, `stage` set); if even that yields no certificate
// the original pipeline error is rethrown.
ConditionVerdict theorem2_verdict(const BlockMatrix& a);

}  // namespace pcanon

#endif  // PCANON_CERTIFY_HPP
