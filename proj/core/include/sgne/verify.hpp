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

#ifndef SGNE_VERIFY_HPP_
#define SGNE_VERIFY_HPP_

#include <map>
#include <string>
#include <vector>

#include "sgne/evaluate.hpp"
#include "sgne/model.hpp"
#include "sgne/rational.hpp"

namespace sgne {

// Per-player payoff interval [x_i, y_i].
struct Thresholds {
  std::vector<Rational> lower;
  std::vector<Rational> upper;

  // [-M, M] for every player, M = MaxAbsReward(game); never binding.
  static Thresholds Vacuous(const Game& game);
};

struct PlayerReport {
  std::string player;
  Rational payoff;
  Rational best_response;
  Rational margin;  // best_response - payoff, always >= 0
  bool constraint_ok = true;
  std::map<int, int> deviation;  // an optimal pure deviation
};

struct VerificationReport {
  Rational epsilon;
  std::vector<PlayerReport> players;
  bool is_ne = false;           // every margin <= epsilon
  bool constraints_ok = true;   // every constraint_ok
  bool accepted = false;        // is_ne && constraints_ok (or promise verdict)
  bool promise_mode = false;

  bool IsNe(const Rational& eps) const;
  Rational MaxMargin() const;
  // {"epsilon", "is_ne", "constraints_ok", "accepted", "players": [...]}
  std::string ToJson() const;
};

VerificationReport VerifyEpsilonNe(const Game& game,
                                   const StationaryProfile& profile,
                                   const Rational& eps);

// constraint_ok(i) iff x_i - eps <= payoff_i <= y_i + eps. Throws Error if
// the thresholds do not cover every player.
VerificationReport VerifyConstrained(const Game& game,
                                     const StationaryProfile& profile,
                                     const Thresholds& bounds,
                                     const Rational& eps);

// The guess-and-check verifier in promise form. For every player, with an
// estimate v_i of the payoff (exact, or within eps/8 in iterative mode), it
// rejects when the promise decision at alpha = v_i + 3eps/4 with band eps/8
// answers "no", and requires x_i - 7eps/8 <= v_i <= y_i + 7eps/8. Accepts
// every eps/8-NE that satisfies the constraints up to eps/8 and rejects every
// profile that admits a deviation gaining eps or more. Margins in the report
// are exact; `accepted` carries the pipeline verdict.
VerificationReport VerifyPromise(const Game& game,
                                 const StationaryProfile& profile,
                                 const Thresholds& bounds, const Rational& eps,
                                 DecisionMode mode = DecisionMode::kExact);

// Identifies a violated ETR constraint: number 1..10, or 0 for a payoff
// threshold, and the vertex/edge/player it was instantiated for.
struct EtrViolation {
  int constraint = 0;
  std::string where;

  std::string ToString() const;
  friend bool operator==(const EtrViolation&, const EtrViolation&) = default;
};

// Instantiates p from the profile (rows at chance vertices override the
// game's probabilities, so mismatches show up as constraint 5), r by solving
// the induced chain, S as the positive entries of p, and evaluates
// constraints 1-9 and the thresholds exactly.
std::vector<EtrViolation> CheckEtrConstraints(const Game& game,
                                              const StationaryProfile& profile,
                                              const Thresholds& bounds);

}  // namespace sgne

#endif  // SGNE_VERIFY_HPP_
