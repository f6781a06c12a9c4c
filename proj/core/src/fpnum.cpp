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

#include "sgne/fpnum.hpp"

#include <string>

namespace sgne {
namespace {

// floor(log2(x)) for x > 0.
int64_t FloorLog2(const Rational& x) {
  const Integer& a = x.get_num();
  const Integer& b = x.get_den();
  int64_t t = BitLength(a) - BitLength(b);
  // x lies in [2^(t-1), 2^(t+1)).
  Integer lhs = a;
  Integer rhs = b;
  if (t >= 0) {
    mpz_mul_2exp(rhs.get_mpz_t(), rhs.get_mpz_t(), static_cast<mp_bitcnt_t>(t));
  } else {
    mpz_mul_2exp(lhs.get_mpz_t(), lhs.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(-t));
  }
  return lhs < rhs ? t - 1 : t;
}

void RequireSamePrecision(const FloatL& a, const FloatL& b, const char* op) {
  if (a.precision() != b.precision()) {
    throw Error(std::string(op) + ": precision mismatch (" +
                std::to_string(a.precision()) + " vs " +
                std::to_string(b.precision()) + ")");
  }
}

}  // namespace

FloatL FloatL::Make(const Integer& mantissa, int64_t exponent, int ell) {
  if (ell < 1) throw Error("float precision must be >= 1");
  if (mantissa < 0 || BitLength(mantissa) > ell) {
    throw Error("mantissa " + mantissa.get_str() + " does not fit in " +
                std::to_string(ell) + " bits");
  }
  FloatL f;
  f.ell_ = ell;
  if (mantissa == 0) return f;
  const int64_t shift = ell - BitLength(mantissa);
  f.mantissa_ = mantissa;
  mpz_mul_2exp(f.mantissa_.get_mpz_t(), f.mantissa_.get_mpz_t(),
               static_cast<mp_bitcnt_t>(shift));
  f.exponent_ = exponent - shift;
  return f;
}

FloatL FloatL::Zero(int ell) { return Make(Integer(0), 0, ell); }

Rational FloatL::value() const { return Rational(mantissa_) * Pow2(exponent_); }

int64_t FloatL::RepresentationBits() const {
  return BitLength(mantissa_) + BitLength(Integer(exponent_ < 0 ? -exponent_
                                                                : exponent_));
}

FloatL Truncate(const Rational& x, int ell) {
  if (ell < 1) throw Error("truncate: precision must be >= 1");
  if (x <= 0) throw Error("truncate: argument must be positive");
  const int64_t e = FloorLog2(x) - (ell - 1);
  // m = floor(x / 2^e)
  Integer num = x.get_num();
  Integer den = x.get_den();
  if (e >= 0) {
    mpz_mul_2exp(den.get_mpz_t(), den.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  } else {
    mpz_mul_2exp(num.get_mpz_t(), num.get_mpz_t(),
                 static_cast<mp_bitcnt_t>(-e));
  }
  Integer m;
  mpz_fdiv_q(m.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
  return FloatL::Make(m, e, ell);
}

FloatL TruncateNonNegative(const Rational& x, int ell) {
  if (x < 0) throw Error("truncate: negative argument");
  if (x == 0) return FloatL::Zero(ell);
  return Truncate(x, ell);
}

FloatL FpAdd(const FloatL& a, const FloatL& b) {
  RequireSamePrecision(a, b, "fp_add");
  return TruncateNonNegative(a.value() + b.value(), a.precision());
}

FloatL FpSub(const FloatL& a, const FloatL& b) {
  RequireSamePrecision(a, b, "fp_sub");
  Rational d = a.value() - b.value();
  if (d < 0) throw Error("fp_sub: negative result is not representable");
  return TruncateNonNegative(d, a.precision());
}

FloatL FpMul(const FloatL& a, const FloatL& b) {
  RequireSamePrecision(a, b, "fp_mul");
  return TruncateNonNegative(a.value() * b.value(), a.precision());
}

FloatL FpDiv(const FloatL& a, const FloatL& b) {
  RequireSamePrecision(a, b, "fp_div");
  if (b.is_zero()) throw Error("fp_div: division by zero");
  return TruncateNonNegative(a.value() / b.value(), a.precision());
}

Rational Rel(const Rational& x, const Rational& y) {
  if (x <= 0 || y <= 0) throw Error("rel: arguments must be positive");
  Rational q = x > y ? Rational(x / y) : Rational(y / x);
  return q - 1;
}

Rational Rel(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  if (a.size() != b.size()) throw Error("rel: size mismatch");
  Rational worst = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    Rational r = Rel(a[i], b[i]);
    if (r > worst) worst = r;
  }
  return worst;
}

Rational ClosenessThreshold(int ell, int i) {
  if (ell < 2) throw Error("closeness: precision must be >= 2");
  if (i < 0) throw Error("closeness: index must be >= 0");
  // (1 - 2^(1-l))^(-1) = 2^(l-1) / (2^(l-1) - 1)
  Rational half = Pow2(ell - 1);
  Rational base = half / (half - 1);
  return Pow(base, static_cast<unsigned>(i)) - 1;
}

bool IsClose(const Rational& x, const Rational& y, int ell, int i) {
  return Rel(x, y) <= ClosenessThreshold(ell, i);
}

FloatDist::FloatDist(std::vector<FloatL> weights)
    : weights_(std::move(weights)) {}

Rational FloatDist::WeightSum() const {
  Rational s = 0;
  for (const FloatL& w : weights_) s += w.value();
  return s;
}

std::vector<Rational> FloatDist::Probabilities() const {
  Rational s = WeightSum();
  if (s == 0) throw Error("float distribution has no positive weight");
  std::vector<Rational> p;
  p.reserve(weights_.size());
  for (const FloatL& w : weights_) p.push_back(w.value() / s);
  return p;
}

FloatDist RoundDistribution(const std::vector<Rational>& mu, int ell) {
  if (mu.empty()) throw Error("round_distribution: empty distribution");
  if (ell < 2) throw Error("round_distribution: precision must be >= 2");
  std::vector<FloatL> x;
  x.reserve(mu.size());
  for (size_t i = 0; i < mu.size(); ++i) {
    if (mu[i] <= 0) {
      throw Error("round_distribution: zero-probability entry " +
                  std::to_string(i) + " inside declared support");
    }
    x.push_back(Truncate(mu[i], ell));
  }
  FloatL total = x[0];
  for (size_t i = 1; i < x.size(); ++i) total = FpAdd(total, x[i]);
  std::vector<FloatL> weights;
  weights.reserve(x.size());
  for (const FloatL& xi : x) weights.push_back(FpDiv(xi, total));
  return FloatDist(std::move(weights));
}

bool IsDlMember(const FloatDist& dist) {
  if (dist.size() == 0) return false;
  const int ell = dist.weights()[0].precision();
  if (ell < 2) return false;
  bool positive = false;
  for (const FloatL& w : dist.weights()) {
    if (w.precision() != ell) return false;
    if (!w.is_zero()) positive = true;
  }
  if (!positive) return false;
  return IsClose(dist.WeightSum(), Rational(1), ell,
                 static_cast<int>(dist.size()));
}

}  // namespace sgne
