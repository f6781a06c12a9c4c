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

#ifndef SGNE_EVALUATE_HPP_
#define SGNE_EVALUATE_HPP_

#include <map>
#include <set>
#include <utility>
#include <vector>

#include "sgne/model.hpp"
#include "sgne/rational.hpp"

namespace sgne {

// Outgoing distribution of every vertex under some profile. Terminal rows
// are ignored. A non-terminal vertex with an empty row is an absorbing
// non-terminal sink (its plays never end and pay 0).
using Transition = std::vector<std::vector<std::pair<int, Rational>>>;

// The Markov chain induced by a full profile. Float rows are converted to
// their exact normalized probabilities. Throws Error on an incomplete or
// invalid profile.
Transition InducedChain(const Game& game, const StationaryProfile& profile);

// Per-vertex values r^i_v of a single player.
struct PlayerValues {
  Rational payoff;             // r^i at the initial vertex
  std::vector<Rational> r;     // indexed by vertex
};

// Values for every player, sharing one V_S and one elimination.
struct ValueVector {
  std::set<int> support;                  // V_S
  std::vector<Rational> payoff;           // indexed by player
  std::vector<std::vector<Rational>> r;   // [player][vertex]
};

// Solves r_v = sum_w p_vw r_w on V_S \ T with r = mu on terminals and r = 0
// outside V_S, for every player, given an explicit transition table.
ValueVector ChainValues(const Game& game, const Transition& chain);

PlayerValues McValue(const Game& game, const StationaryProfile& profile,
                     int player);
ValueVector ExpectedPayoffs(const Game& game, const StationaryProfile& profile);

struct BestResponse {
  Rational value;
  std::map<int, int> strategy;  // player vertex -> chosen successor
};

// Copy of `profile` with the rows of `strategy` replaced by pure choices.
StationaryProfile WithPureStrategy(const StationaryProfile& profile,
                                   const std::map<int, int>& strategy);

// Optimal pure stationary strategy of `player` against the rows of the other
// players in `others` (rows at the player's own vertices are ignored).
// Policy iteration with exact evaluation; the returned value is re-certified
// against McValue of the substituted profile.
BestResponse MdpBestResponse(const Game& game,
                             const StationaryProfile& others, int player);

enum class DecisionMode {
  kExact,      // exact best-response value
  kIterative,  // F(l)-truncated evaluation within eps/2, rigorous error bound
};

// Promise decision: returns false ("no") when alpha <= val - eps and true
// ("yes") when alpha >= val + eps, where val is the player's best-response
// value. Either answer is possible in between. Requires eps > 0.
bool ApproxMdpDecision(const Game& game, const StationaryProfile& others,
                       int player, const Rational& alpha, const Rational& eps,
                       DecisionMode mode = DecisionMode::kExact);

// Value of a full profile for one player, computed by propagating
// probability mass with F(l)-truncated arithmetic until the unresolved mass
// times the largest |reward| is at most `tolerance`. The result is within
// `tolerance` of McValue. Throws Error if it fails to converge within
// `max_steps` steps.
Rational IterativeValue(const Game& game, const StationaryProfile& profile,
                        int player, const Rational& tolerance,
                        int max_steps = 1000000);

}  // namespace sgne

#endif  // SGNE_EVALUATE_HPP_
