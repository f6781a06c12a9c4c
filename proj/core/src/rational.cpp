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

#include "sgne/rational.hpp"

#include <algorithm>
#include <cctype>
#include <string>

namespace sgne {
namespace {

bool IsIntegerLiteral(std::string_view s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  }
  return true;
}

Integer ParseInteger(std::string_view s) {
  std::string text(s);
  if (!text.empty() && text[0] == '+') text.erase(0, 1);
  return Integer(text, 10);
}

}  // namespace

Rational ParseRational(std::string_view text) {
  const size_t slash = text.find('/');
  if (slash == std::string_view::npos) {
    if (!IsIntegerLiteral(text)) {
      throw ParseError("not an exact rational \"" + std::string(text) +
                       "\" (expected p/q)");
    }
    return Rational(ParseInteger(text));
  }
  std::string_view num = text.substr(0, slash);
  std::string_view den = text.substr(slash + 1);
  if (!IsIntegerLiteral(num) || !IsIntegerLiteral(den) || den[0] == '-') {
    throw ParseError("not an exact rational \"" + std::string(text) +
                     "\" (expected p/q)");
  }
  Integer d = ParseInteger(den);
  if (d == 0) {
    throw ParseError("zero denominator in \"" + std::string(text) + "\"");
  }
  Rational r(ParseInteger(num), d);
  r.canonicalize();
  return r;
}

Rational ParseRationalOrDyadic(std::string_view text) {
  if (text.rfind("2^", 0) == 0) {
    std::string_view exp = text.substr(2);
    if (!IsIntegerLiteral(exp) || exp.size() > 18) {
      throw ParseError("bad dyadic literal \"" + std::string(text) + "\"");
    }
    return Pow2(std::stoll(std::string(exp)));
  }
  return ParseRational(text);
}

std::string ToString(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

std::string ToDecimal(const Rational& value, int significant) {
  if (significant < 1) significant = 1;
  if (value == 0) return "0";
  std::string sign = value < 0 ? "-" : "";
  Rational x = Abs(value);

  // Exponent k with 10^k <= x < 10^(k+1).
  Integer num = x.get_num();
  Integer den = x.get_den();
  int64_t k = static_cast<int64_t>(num.get_str().size()) -
              static_cast<int64_t>(den.get_str().size());
  auto pow10 = [](int64_t e) {
    Integer p;
    mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(e));
    return p;
  };
  auto less_than_pow10 = [&](int64_t e) {  // x < 10^e
    if (e >= 0) return num < den * pow10(e);
    return num * pow10(-e) < den;
  };
  while (!less_than_pow10(k + 1)) ++k;
  while (less_than_pow10(k)) --k;

  // digits = round(x * 10^(significant - 1 - k))
  int64_t shift = significant - 1 - k;
  Integer scaled_num = num;
  Integer scaled_den = den;
  if (shift >= 0) {
    scaled_num *= pow10(shift);
  } else {
    scaled_den *= pow10(-shift);
  }
  Integer digits = (2 * scaled_num + scaled_den) / (2 * scaled_den);
  if (digits == pow10(significant)) {
    digits /= 10;
    ++k;
  }
  std::string d = digits.get_str();

  if (k >= -5 && k < significant) {
    std::string out;
    if (k < 0) {
      out = "0." + std::string(static_cast<size_t>(-k - 1), '0') + d;
    } else {
      out = d.substr(0, static_cast<size_t>(k + 1));
      std::string frac = d.substr(static_cast<size_t>(k + 1));
      if (!frac.empty()) out += "." + frac;
    }
    return sign + out;
  }
  std::string mantissa = d.substr(0, 1);
  if (d.size() > 1) mantissa += "." + d.substr(1);
  std::string exp = std::to_string(std::abs(k));
  if (exp.size() < 2) exp = "0" + exp;
  return sign + mantissa + (k < 0 ? "e-" : "e+") + exp;
}

int64_t BitLength(const Integer& n) {
  if (n == 0) return 0;
  return static_cast<int64_t>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

int64_t BitSize(const Rational& value) {
  return BitLength(value.get_num()) + BitLength(value.get_den()) + 1;
}

Rational Pow2(int64_t k) {
  Integer p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(),
               static_cast<mp_bitcnt_t>(k >= 0 ? k : -k));
  if (k >= 0) return Rational(p);
  return Rational(Integer(1), p);
}

Rational Pow(const Rational& base, unsigned exponent) {
  Rational result;
  mpz_pow_ui(result.get_num_mpz_t(), base.get_num_mpz_t(), exponent);
  mpz_pow_ui(result.get_den_mpz_t(), base.get_den_mpz_t(), exponent);
  result.canonicalize();
  return result;
}

std::optional<int64_t> Log2Exact(const Rational& value) {
  if (value <= 0) return std::nullopt;
  const Integer& num = value.get_num();
  const Integer& den = value.get_den();
  if (den == 1 && mpz_popcount(num.get_mpz_t()) == 1) {
    return BitLength(num) - 1;
  }
  if (num == 1 && mpz_popcount(den.get_mpz_t()) == 1) {
    return -(BitLength(den) - 1);
  }
  return std::nullopt;
}

Rational Abs(const Rational& value) { return value < 0 ? Rational(-value) : value; }

}  // namespace sgne
