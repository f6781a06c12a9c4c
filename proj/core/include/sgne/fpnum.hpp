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

#ifndef SGNE_FPNUM_HPP_
#define SGNE_FPNUM_HPP_

#include <cstdint>
#include <vector>

#include "sgne/rational.hpp"

namespace sgne {

// A nonnegative floating-point number m * 2^e with an l-bit mantissa.
//
// Canonical form: zero is (0, 0); any other value keeps the top mantissa bit
// set, m in [2^(l-1), 2^l - 1]. Every value therefore has exactly one
// representation and equality is structural.
class FloatL {
 public:
  // Zero at precision 1.
  FloatL() = default;

  // Builds m * 2^e at precision `ell`, normalizing the mantissa. Throws Error
  // if ell < 1 or m is outside [0, 2^ell - 1].
  static FloatL Make(const Integer& mantissa, int64_t exponent, int ell);
  static FloatL Zero(int ell);

  const Integer& mantissa() const { return mantissa_; }
  int64_t exponent() const { return exponent_; }
  int precision() const { return ell_; }
  bool is_zero() const { return mantissa_ == 0; }

  Rational value() const;

  // bit(m) + bit(|e|).
  int64_t RepresentationBits() const;

  friend bool operator==(const FloatL& a, const FloatL& b) {
    return a.ell_ == b.ell_ && a.exponent_ == b.exponent_ &&
           a.mantissa_ == b.mantissa_;
  }

 private:
  Integer mantissa_ = 0;
  int64_t exponent_ = 0;
  int ell_ = 1;
};

// Largest y in F(l) with y <= x. Requires x > 0 and l >= 1.
FloatL Truncate(const Rational& x, int ell);

// Like Truncate but maps 0 to the zero float. Requires x >= 0.
FloatL TruncateNonNegative(const Rational& x, int ell);

// Truncated arithmetic: the exact result of the operation, truncated to the
// common precision of the operands. FpSub requires a >= b, FpDiv b != 0.
FloatL FpAdd(const FloatL& a, const FloatL& b);
FloatL FpSub(const FloatL& a, const FloatL& b);
FloatL FpMul(const FloatL& a, const FloatL& b);
FloatL FpDiv(const FloatL& a, const FloatL& b);

// Relative distance max{x/y, y/x} - 1 of two positive rationals.
Rational Rel(const Rational& x, const Rational& y);

// max_i Rel(a_i, b_i) over distributions with a common positive support.
Rational Rel(const std::vector<Rational>& a, const std::vector<Rational>& b);

// (1 - 2^(1-l))^(-i) - 1. Requires l >= 2, i >= 0.
Rational ClosenessThreshold(int ell, int i);

// x and y are (l, i)-close: Rel(x, y) <= ClosenessThreshold(l, i).
bool IsClose(const Rational& x, const Rational& y, int ell, int i);

// A probability distribution over t outcomes given by F(l) weights
// w_1..w_t; the probability of outcome i is w_i / sum_j w_j.
class FloatDist {
 public:
  FloatDist() = default;
  explicit FloatDist(std::vector<FloatL> weights);

  const std::vector<FloatL>& weights() const { return weights_; }
  size_t size() const { return weights_.size(); }
  Rational WeightSum() const;

  // Exact probabilities w_i / sum_j w_j. Throws if all weights are zero.
  std::vector<Rational> Probabilities() const;

 private:
  std::vector<FloatL> weights_;
};

// Rounds an exact distribution with full support to D(l): x_i = Truncate(mu_i),
// weights mu'_i = x_i (/) (x_1 (+) ... (+) x_t). The normalized result is
// (l, 2t)-close to mu.
FloatDist RoundDistribution(const std::vector<Rational>& mu, int ell);

// D(l) membership certificate: all weights share one precision l >= 2, at
// least one is positive, and sum_j w_j is (l, t)-close to 1.
bool IsDlMember(const FloatDist& dist);

}  // namespace sgne

#endif  // SGNE_FPNUM_HPP_
