// Copyright 2026 The sgne Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SGNE_RATIONAL_HPP_
#define SGNE_RATIONAL_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace sgne {

// Exact rational arithmetic is the substrate for every probability, payoff,
// threshold and bound in the library. No machine floating point is used.
using Rational = mpq_class;
using Integer = mpz_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input documents (game files, profiles, DIMACS, SMT-LIB, flags).
class ParseError : public Error {
 public:
  using Error::Error;
};

// Parses "p/q" or an integer "p". Decimal notation is rejected so that no
// value is ever silently rounded.
Rational ParseRational(std::string_view text);

// Parses "p/q", "p", or a dyadic literal "2^-k" / "2^k".
Rational ParseRationalOrDyadic(std::string_view text);

// Always "p/q", with the denominator spelled out ("0/1", "3/1").
std::string ToString(const Rational& value);

// Decimal rendering with `significant` significant digits, rounded half away
// from zero. Exact: computed with integer arithmetic only.
std::string ToDecimal(const Rational& value, int significant = 20);

// bit(n) = ceil(log2(n + 1)) for n >= 0; uses |n| for negative n.
int64_t BitLength(const Integer& n);

// bit(p/q) = bit(p) + bit(q) + 1 for p/q in lowest terms.
int64_t BitSize(const Rational& value);

// 2^k for any integer k.
Rational Pow2(int64_t k);

Rational Pow(const Rational& base, unsigned exponent);

// If value == 2^k for some integer k, returns k.
std::optional<int64_t> Log2Exact(const Rational& value);

Rational Abs(const Rational& value);

}  // namespace sgne

#endif  // SGNE_RATIONAL_HPP_
