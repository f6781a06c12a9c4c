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

#include <gtest/gtest.h>

#include <random>

#include "sgne/fpnum.hpp"

namespace sgne {
namespace {

// Largest value m*2^e <= x with an l-bit mantissa, by direct search.
Rational TruncateOracle(const Rational& x, int ell) {
  int64_t e = 0;
  auto mantissa = [&](int64_t k) {
    Rational scaled = x * Pow2(-k);
    return Integer(scaled.get_num() / scaled.get_den());
  };
  while (mantissa(e) >= (Integer(1) << ell)) ++e;
  while (mantissa(e) < (Integer(1) << (ell - 1))) --e;
  return Rational(mantissa(e)) * Pow2(e);
}

Rational RandomPositive(std::mt19937_64& rng) {
  std::uniform_int_distribution<int64_t> num(1, int64_t{1} << 40);
  std::uniform_int_distribution<int> shift(-80, 20);
  Rational x(num(rng), num(rng));
  x.canonicalize();
  return x * Pow2(shift(rng));
}

TEST(FloatL, CanonicalTopBit) {
  FloatL a = FloatL::Make(Integer(1), 0, 4);
  EXPECT_EQ(a.mantissa(), 8);
  EXPECT_EQ(a.exponent(), -3);
  EXPECT_EQ(a, FloatL::Make(Integer(4), -2, 4));
  EXPECT_THROW(FloatL::Make(Integer(16), 0, 4), Error);
  EXPECT_TRUE(FloatL::Zero(4).is_zero());
}

TEST(Truncate, One) {
  for (int ell : {1, 2, 7, 53}) {
    FloatL f = Truncate(Rational(1), ell);
    EXPECT_EQ(f.mantissa(), Integer(1) << (ell - 1));
    EXPECT_EQ(f.exponent(), 1 - ell);
  }
}

TEST(Truncate, Examples) {
  FloatL third = Truncate(Rational(1, 3), 4);
  EXPECT_EQ(third.value(), Rational(5, 16));
  EXPECT_EQ(third.mantissa(), 5 * 2);  // canonical form is 10 * 2^-5
  FloatL f = Truncate(Rational(7, 2), 2);
  EXPECT_EQ(f.mantissa(), 3);
  EXPECT_EQ(f.exponent(), 0);
  EXPECT_THROW(Truncate(Rational(0), 5), Error);
  EXPECT_THROW(Truncate(Rational(-1), 5), Error);
}

TEST(Truncate, MatchesScanOracle) {
  std::mt19937_64 rng(11);
  for (int k = 0; k < 300; ++k) {
    Rational x = RandomPositive(rng);
    int ell = 2 + static_cast<int>(rng() % 63);
    ASSERT_EQ(Truncate(x, ell).value(), TruncateOracle(x, ell)) << ToString(x);
  }
}

TEST(Arithmetic, Examples) {
  FloatL one = Truncate(Rational(1), 4);
  FloatL three = Truncate(Rational(3), 4);
  EXPECT_EQ(FpAdd(one, one).value(), 2);
  EXPECT_EQ(FpDiv(one, three).value(), Rational(5, 16));
  EXPECT_EQ(FpDiv(one, three), Truncate(Rational(1, 3), 4));
  FloatL x = Truncate(Rational(11, 7), 4);
  EXPECT_EQ(FpMul(x, one), x);
  EXPECT_EQ(FpDiv(x, one), x);
  EXPECT_THROW(FpSub(one, three), Error);
  EXPECT_THROW(FpAdd(one, Truncate(Rational(1), 5)), Error);
}

TEST(Arithmetic, NeverRoundsUp) {
  std::mt19937_64 rng(5);
  for (int k = 0; k < 200; ++k) {
    int ell = 2 + static_cast<int>(rng() % 40);
    FloatL a = Truncate(RandomPositive(rng), ell);
    FloatL b = Truncate(RandomPositive(rng), ell);
    EXPECT_LE(FpAdd(a, b).value(), a.value() + b.value());
    EXPECT_EQ(FpAdd(a, b), FpAdd(b, a));
    EXPECT_LE(FpMul(a, b).value(), a.value() * b.value());
    EXPECT_LE(FpDiv(a, b).value(), a.value() / b.value());
    if (a.value() >= b.value()) {
      EXPECT_LE(FpSub(a, b).value(), a.value() - b.value());
    }
  }
}

TEST(Rel, Examples) {
  EXPECT_EQ(Rel(Rational(2, 3), Rational(2, 3)), 0);
  EXPECT_EQ(Rel(Rational(1), Rational(2)), 1);
  EXPECT_EQ(Rel(Rational(3, 4), Rational(1)), Rational(1, 3));
  EXPECT_THROW(Rel(Rational(0), Rational(1)), Error);
}

TEST(Closeness, Examples) {
  EXPECT_TRUE(IsClose(Rational(5, 7), Rational(5, 7), 8, 0));
  EXPECT_FALSE(IsClose(Rational(1), Rational(9, 8), 8, 0));
  EXPECT_EQ(ClosenessThreshold(4, 1), Rational(1, 7));
  EXPECT_TRUE(IsClose(Rational(1), 1 + Pow2(1 - 4), 4, 1));
  EXPECT_FALSE(IsClose(Rational(1), 1 + Pow2(1 - 4), 4, 0));
}

TEST(Closeness, ThresholdChainBetweenLinearBounds) {
  // t <= x/(1-x) with x = 2n 2^(1-l); the threshold itself exceeds 4n 2^-l.
  for (int n : {1, 2, 3, 5}) {
    for (int ell : {1000 * n * n, 1000 * n * n + 17}) {
      Rational x = 2 * n * Pow2(1 - ell);
      Rational t = ClosenessThreshold(ell, 2 * n);
      EXPECT_LE(t, x / (1 - x));
      EXPECT_GT(t, 4 * n * Pow2(-ell));
    }
  }
}

TEST(RoundDistribution, Examples) {
  FloatDist point = RoundDistribution({Rational(1)}, 8);
  EXPECT_EQ(point.Probabilities(), std::vector<Rational>{1});
  FloatDist halves = RoundDistribution({Rational(1, 2), Rational(1, 2)}, 2);
  EXPECT_EQ(halves.Probabilities(),
            (std::vector<Rational>{Rational(1, 2), Rational(1, 2)}));
  std::vector<Rational> mu = {Rational(1, 3), Rational(2, 3)};
  FloatDist d = RoundDistribution(mu, 8);
  EXPECT_TRUE(IsDlMember(d));
  EXPECT_LE(Rel(mu, d.Probabilities()), Pow(Rational(128, 127), 4) - 1);
  EXPECT_THROW(RoundDistribution({Rational(0), Rational(1)}, 8), Error);
}

TEST(DlMembership, Examples) {
  FloatL one = Truncate(Rational(1), 3);
  EXPECT_TRUE(IsDlMember(FloatDist({one})));
  EXPECT_FALSE(IsDlMember(FloatDist({one, one})));
  EXPECT_FALSE(IsDlMember(FloatDist({FloatL::Zero(3)})));
}

TEST(RoundDistribution, RandomClosenessProperty) {
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    int t = 1 + static_cast<int>(rng() % 8);
    int ell = 8 + static_cast<int>(rng() % 57);
    std::vector<Rational> mu(t);
    Rational sum = 0;
    for (auto& x : mu) {
      x = Rational(static_cast<long>(1 + rng() % 100000));
      sum += x;
    }
    for (auto& x : mu) x /= sum;
    FloatDist d = RoundDistribution(mu, ell);
    ASSERT_TRUE(IsDlMember(d));
    auto p = d.Probabilities();
    for (int j = 0; j < t; ++j) {
      ASSERT_TRUE(IsClose(mu[j], p[j], ell, 2 * t));
    }
  }
}

}  // namespace
}  // namespace sgne
