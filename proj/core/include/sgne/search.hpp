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

#ifndef SGNE_SEARCH_HPP_
#define SGNE_SEARCH_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "sgne/etr.hpp"
#include "sgne/evaluate.hpp"
#include "sgne/model.hpp"
#include "sgne/verify.hpp"

namespace sgne {

enum class SearchMode {
  kCandidateFile,
  kPureEnumeration,
  kSupportNewton,
  kRandomRestart,
};

// "candidate-file", "pure-enumeration", "support-newton", "random-restart".
// Throws Error on anything else.
SearchMode ParseSearchMode(std::string_view name);
std::string SearchModeName(SearchMode mode);

struct SearchConfig {
  SearchMode mode = SearchMode::kPureEnumeration;
  int64_t budget = 10000;  // candidates (supports for support-newton)
  uint64_t seed = 0;
  std::vector<StationaryProfile> candidates;  // candidate-file mode
  DecisionMode decision = DecisionMode::kExact;
  Rational newton_tolerance = Pow2(-40);
  int newton_iterations = 60;
  int restart_rounds = 8;  // best-response rounds per random restart
};

struct SearchResult {
  bool found = false;
  StationaryProfile profile;
  VerificationReport report;
  int64_t tried = 0;
  // Smallest max deviation margin over fully verified candidates.
  std::optional<Rational> best_margin;
};

// Looks for a profile that passes VerifyConstrained at eps. Candidates are
// screened by the promise pipeline (thresholds payoff + 3eps/4, band eps/8,
// constraints at 7eps/8) and then re-verified exactly at eps; only exactly
// verified profiles are returned. Deterministic for a fixed config.
SearchResult SearchConstrainedNe(const Game& game, const Thresholds& bounds,
                                 const Rational& eps, const SearchConfig& cfg);

enum class NewtonStatus {
  kVerified,            // converged and passed exact verification
  kVerificationFailed,  // converged, but exact verification rejected it
  kNoConvergence,
  kSingularStart,       // zero Jacobian with a nonzero residual at the start
};

std::string NewtonStatusName(NewtonStatus status);

struct NewtonResult {
  NewtonStatus status = NewtonStatus::kNoConvergence;
  StationaryProfile candidate;  // last iterate
  Rational residual;            // max |equation| and inequality violation
  int iterations = 0;
  std::optional<VerificationReport> report;
};

// Damped Gauss-Newton on the indifference system of `support`: free row
// probabilities (last entry of each row is the complement), payoffs
// eliminated by exact solves, equations r^i_w = r^i_w' on support edges,
// plus the currently tight or violated inequalities r^i_v >= r^i_w on
// non-support edges and payoff thresholds, taken as equalities. Minimum-norm
// steps, iterates rounded down to 128-bit dyadics. On convergence within
// `tol` the candidate is verified exactly with VerifyConstrained at `eps`.
NewtonResult SupportNewton(const Game& game, const Thresholds& bounds,
                           const Support& support, const Rational& tol,
                           int iterations, const Rational& eps);

}  // namespace sgne

#endif  // SGNE_SEARCH_HPP_
