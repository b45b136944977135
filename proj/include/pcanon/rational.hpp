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

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace pcanon {

/**
 * Exact arbitrary-precision rational, GMP-backed.  Values are kept in
 * canonical form (lowest terms, positive denominator) as long as they are
 * constructed through this header's helpers or from integer pairs; the raw
 * string constructor of the underlying type does NOT canonicalize, so all
 * text input must go through parse_rational().
 */
using Rational = boost::multiprecision::mpq_rational;

/** Exact arbitrary-precision integer. */
using Integer = boost::multiprecision::mpz_int;

/** Raised for malformed or out-of-contract textual input. */
class ParseError : public std::runtime_error {
 public:
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Parse "p" or "p/q" with an optional leading minus on the numerator only.
 * The denominator must be a positive integer literal; the value is reduced
 * to lowest terms on construction.  Throws ParseError on anything else,
 * including a zero denominator.
 */
Rational parse_rational(std::string_view text);

/** Canonical text form: "p" when the denominator is 1, else "p/q". */
std::string to_string(const Rational& value);

inline std::vector<Rational> ones(int n) {
  return std::vector<Rational>(static_cast<std::size_t>(n), Rational(1));
}

inline std::vector<Rational> zeros(int n) {
  return std::vector<Rational>(static_cast<std::size_t>(n), Rational(0));
}

}  // namespace pcanon
