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

#ifndef SGNE_TESTS_RANDOM_GAMES_HPP_
#define SGNE_TESTS_RANDOM_GAMES_HPP_

#include <random>

#include "sgne/model.hpp"
#include "sgne/rational.hpp"

namespace sgne::testing {

using Rng = std::mt19937_64;

struct RandomGameOptions {
  int min_vertices = 4;
  int max_vertices = 8;  // including terminals and the start vertex
  int players = 3;
  int max_out = 3;
  // Rewards are 0/1 when true, k/4 in [0,1] otherwise (or in [-1,1] if
  // signed_rewards).
  bool binary_rewards = false;
  bool signed_rewards = false;
  // Player vertices only (no chance vertex apart from the start).
  bool no_chance = false;
  // Start is a chance vertex with positive probability on every other
  // non-terminal vertex.
  bool covering_start = true;
};

int Uniform(Rng& rng, int lo, int hi);

// Random probability vector with k entries, all positive.
std::vector<Rational> RandomDistribution(Rng& rng, int k, int denominator = 12);

Game RandomGame(Rng& rng, const RandomGameOptions& opt);

// Full random profile: each row a random distribution over a random
// nonempty subset of the out-edges (pure with probability pure_share).
StationaryProfile RandomProfile(Rng& rng, const Game& g, double pure_share);

StationaryProfile RandomPureProfile(Rng& rng, const Game& g);

// Every pure profile of the listed vertices (odometer order).
std::vector<std::map<int, int>> AllPureStrategies(const Game& g,
                                                  const std::vector<int>& vs);

}  // namespace sgne::testing

#endif  // SGNE_TESTS_RANDOM_GAMES_HPP_
