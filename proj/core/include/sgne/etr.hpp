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

#ifndef SGNE_ETR_HPP_
#define SGNE_ETR_HPP_

#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "sgne/model.hpp"
#include "sgne/rational.hpp"
#include "sgne/verify.hpp"

namespace sgne {

// A monomial of degree <= 2 over variable indices: (-1, -1) is the constant,
// (a, -1) a single variable, (a, b) with a <= b a product.
using Monomial = std::pair<int, int>;

// Sparse polynomial with exact coefficients; zero coefficients are never
// stored, so structural equality is polynomial equality.
class Polynomial {
 public:
  Polynomial() = default;
  static Polynomial Constant(const Rational& c);
  static Polynomial Var(int index);

  const std::map<Monomial, Rational>& terms() const { return terms_; }
  int Degree() const;
  bool IsZero() const { return terms_.empty(); }

  Polynomial& operator+=(const Polynomial& o);
  Polynomial& operator-=(const Polynomial& o);
  Polynomial& operator*=(const Rational& c);
  friend Polynomial operator+(Polynomial a, const Polynomial& b) {
    return a += b;
  }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) {
    return a -= b;
  }
  friend Polynomial operator*(Polynomial a, const Rational& c) {
    return a *= c;
  }
  // Throws Error if the product has degree > 2.
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);

  Rational Evaluate(const std::vector<Rational>& x) const;

  friend bool operator==(const Polynomial&, const Polynomial&) = default;

 private:
  void Add(Monomial m, const Rational& c);
  std::map<Monomial, Rational> terms_;
};

enum class Relop { kEq, kGt, kGe, kLe };

// lhs <op> rhs, tagged with its constraint number (1..10, 0 for a payoff
// threshold) and where it was instantiated.
struct EtrConstraint {
  int tag = 0;
  std::string where;
  Polynomial lhs;
  Relop op = Relop::kEq;
  Polynomial rhs;

  bool Holds(const std::vector<Rational>& x) const;
};

struct EtrSystem {
  std::vector<std::string> variables;
  std::vector<EtrConstraint> constraints;

  int VariableIndex(std::string_view name) const;  // -1 if absent
};

// Controlled vertex -> successors with positive probability.
using Support = std::map<int, std::vector<int>>;

std::string PVarName(const Game& game, int v, int w);
std::string RVarName(const Game& game, int player, int v);
std::string GVarName(const Game& game, int v, int w);

// Constraints 1-10 for support S (chance edges of positive probability are
// added to S implicitly) and the thresholds x_i <= r^i_{v0} <= y_i. Throws
// Error when S leaves a controlled vertex empty or names a non-edge.
EtrSystem BuildEtr(const Game& game, const Thresholds& bounds,
                   const Support& support);

// Support of a full profile (positive entries at controlled vertices).
Support ProfileSupport(const Game& game, const StationaryProfile& profile);

// p from the profile, r from its exact payoffs, g = 1/p on S (0 if p = 0).
std::vector<Rational> InducedAssignment(const Game& game,
                                        const StationaryProfile& profile,
                                        const EtrSystem& system);

struct ConstraintViolation {
  int tag = 0;
  std::string where;
};

std::vector<ConstraintViolation> CheckAssignment(
    const EtrSystem& system, const std::vector<Rational>& assignment);
// Throws Error naming a variable missing from `assignment`.
std::vector<ConstraintViolation> CheckAssignment(
    const EtrSystem& system, const std::map<std::string, Rational>& assignment);

// SMT-LIB2 (QF_NRA) document: one real per variable, assertions in order,
// each preceded by "; paper-constraint k", and a (check-sat) trailer.
std::string EmitSmtlib(const EtrSystem& system);

// Reads documents in the subset written by EmitSmtlib (declare-fun /
// declare-const of Real, assert over + - * / = < <= > >= and rational
// literals). Tags come from the preceding constraint comment.
EtrSystem ParseSmtlib(std::string_view text);

// Number of candidate supports: product over controlled vertices of
// (2^deg - 1).
Integer CountSupports(const Game& game);

// Visits supports ordered by total size, then lexicographically (vertices in
// index order, each successor set as its sorted list of positions in the
// out-edge list). Stops when `visit` returns false.
void ForEachSupport(const Game& game,
                    const std::function<bool(const Support&)>& visit);

// The support at position `index` (0-based) of that order.
std::optional<Support> NthSupport(const Game& game, const Integer& index);

}  // namespace sgne

#endif  // SGNE_ETR_HPP_
