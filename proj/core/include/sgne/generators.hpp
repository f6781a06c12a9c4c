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

#ifndef SGNE_GENERATORS_HPP_
#define SGNE_GENERATORS_HPP_

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sgne/model.hpp"
#include "sgne/rational.hpp"

namespace sgne {

// ---- The five-player family G^n ----
//
// Players circle, square, triangle, diamond, pentagon. Vertex ids: s_0; the
// def gadgets r_i, t_i, t'_i (i = 0..n, r_0 is a fair chance vertex); and
// for i = 1..n the mul gadget a_i .. m_i (l_i for the letter ell) with
// terminals t_i_0 .. t_i_6. mul_i routes into the shared def_i and def_{i-1}.

inline constexpr std::array<std::string_view, 5> kGnPlayers = {
    "circle", "square", "triangle", "diamond", "pentagon"};

// Throws Error if n < 1.
Game BuildGn(int n);

// alpha_i = 1/2^(2^i) for i >= 0 (alpha_0 = 1/2 is the chance vertex r_0).
Rational GnAlpha(int i);

// The stationary NE with circle payoff 1: alpha_i at r_i, beta_i = 1/2 at
// c_i, gamma_i = alpha_i at f_i, delta_i = eta_i = alpha_{i-1} at j_i, m_i,
// and deterministic choices a->b, b->c, d->e, e->f, g->h, h->j, k->l, l->m.
StationaryProfile GnExactNe(int n);

// Smallest I with 1/(2^(2^I + 1) n) <= eps, clamped to I >= 1.
int GnCutoff(int n, const Rational& eps);

// theta_i = alpha_i for i < I and 0 for i >= I (i >= 1; theta_0 = 1/2).
Rational GnTheta(int i, int cutoff);

// The eps-NE with circle payoff 1 and small representations: uniform at
// every c_i, theta_i at r_i and f_i, theta_{i-1} at j_i and m_i.
StationaryProfile GnEpsilonNe(int n, const Rational& eps);

// ---- The 3SAT reduction ----

struct Literal {
  int var = 0;  // 1-based
  bool positive = true;

  friend bool operator==(const Literal&, const Literal&) = default;
};

struct CnfFormula {
  int num_vars = 0;
  std::vector<std::array<Literal, 3>> clauses;

  int num_clauses() const { return static_cast<int>(clauses.size()); }
};

// nu[k - 1] is the value of variable k.
using Valuation = std::vector<bool>;

bool Satisfies(const CnfFormula& phi, const Valuation& nu);

// First satisfying valuation in binary counting order (variable 1 least
// significant), by exhaustive search. Throws Error beyond 24 variables.
std::optional<Valuation> FindSatisfyingValuation(const CnfFormula& phi);

// Throws ParseError for clauses without exactly 3 literals, variables out of
// the declared range, or a clause count different from the header.
CnfFormula ParseDimacs(std::string_view text);
std::string ToDimacs(const CnfFormula& phi);

// Vertex id of the literal at position j (1-based) of clause i (1-based).
std::string SatLiteralId(int clause, int position);
std::string SatClauseId(int clause);
std::string SatVarName(int var);

// Players Solver, x1..xN. Clause vertices C1..Cm (Solver, initial C1),
// literal vertices C<i>.<j>: chance for positive literals (1/2 to t_x<k>,
// 1/2 to the next clause or s), owned by the variable for negative ones
// (to t_S or next). s: 1/2 to C1, 1/2 to t. Throws Error on a malformed
// formula (no clauses or bad variable index).
Game BuildSatGame(const CnfFormula& phi);

// Pure NE with Solver payoff 1: Solver picks the lowest satisfied position
// in each clause; a variable player moves on to the next clause, except at
// vertices it never reaches (nu(x) = 1) where it exits to t_S if Solver uses
// some positive x literal. Throws Error if nu does not satisfy phi.
StationaryProfile SatNeFromValuation(const CnfFormula& phi,
                                     const Valuation& nu);

// 2^(-3m).
Rational SatEpsilon(const CnfFormula& phi);

}  // namespace sgne

#endif  // SGNE_GENERATORS_HPP_
