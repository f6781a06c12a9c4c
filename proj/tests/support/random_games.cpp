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

#include "random_games.hpp"

#include <algorithm>
#include <numeric>

namespace sgne::testing {

int Uniform(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

std::vector<Rational> RandomDistribution(Rng& rng, int k, int denominator) {
  std::vector<Rational> w(k);
  Rational sum = 0;
  for (auto& x : w) {
    x = Uniform(rng, 1, denominator);
    sum += x;
  }
  for (auto& x : w) x /= sum;
  return w;
}

Game RandomGame(Rng& rng, const RandomGameOptions& opt) {
  Game g;
  for (int p = 0; p < opt.players; ++p) g.AddPlayer("P" + std::to_string(p));
  const int nv = Uniform(rng, opt.min_vertices, opt.max_vertices);
  const int terminals = Uniform(rng, 1, std::max(1, std::min(3, nv - 2)));
  const int inner = nv - 1 - terminals;

  g.AddVertex("v0", Owner::Chance());
  for (int k = 1; k <= inner; ++k) {
    bool chance = !opt.no_chance && Uniform(rng, 0, 4) == 0;
    g.AddVertex("v" + std::to_string(k),
                chance ? Owner::Chance()
                       : Owner::Player(Uniform(rng, 0, opt.players - 1)));
  }
  for (int k = 0; k < terminals; ++k) {
    g.AddVertex("t" + std::to_string(k), Owner::Terminal());
  }
  g.SetInitial(0);

  // start vertex
  std::vector<int> start_targets;
  if (opt.covering_start) {
    for (int v = 1; v <= inner; ++v) start_targets.push_back(v);
  }
  if (start_targets.empty()) start_targets.push_back(Uniform(rng, 1, nv - 1));
  auto p0 = RandomDistribution(rng, static_cast<int>(start_targets.size()));
  for (size_t k = 0; k < start_targets.size(); ++k) {
    g.AddEdge(0, start_targets[k], p0[k]);
  }

  std::vector<int> all(nv - 1);
  std::iota(all.begin(), all.end(), 1);
  for (int v = 1; v <= inner; ++v) {
    std::shuffle(all.begin(), all.end(), rng);
    int d = Uniform(rng, 1, std::min<int>(opt.max_out, all.size()));
    std::vector<int> succ(all.begin(), all.begin() + d);
    std::sort(succ.begin(), succ.end());
    if (g.IsChance(v)) {
      auto p = RandomDistribution(rng, d);
      for (int k = 0; k < d; ++k) g.AddEdge(v, succ[k], p[k]);
    } else {
      for (int w : succ) g.AddEdge(v, w);
    }
  }
  for (int t : g.Terminals()) {
    for (int p = 0; p < opt.players; ++p) {
      Rational r;
      if (opt.binary_rewards) {
        r = Uniform(rng, 0, 1);
      } else if (opt.signed_rewards) {
        r = Rational(Uniform(rng, -4, 4), 4);
      } else {
        r = Rational(Uniform(rng, 0, 4), 4);
      }
      r.canonicalize();
      g.SetReward(t, p, r);
    }
  }
  return g;
}

StationaryProfile RandomProfile(Rng& rng, const Game& g, double pure_share) {
  StationaryProfile s;
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  for (int v : g.ControlledVertices()) {
    std::vector<int> succ;
    for (const Edge& e : g.out(v)) succ.push_back(e.to);
    std::shuffle(succ.begin(), succ.end(), rng);
    int k = coin(rng) < pure_share ? 1 : Uniform(rng, 1, succ.size());
    auto p = RandomDistribution(rng, k);
    ExactRow row;
    for (int j = 0; j < k; ++j) row[succ[j]] = p[j];
    s.SetRow(v, row);
  }
  return s;
}

StationaryProfile RandomPureProfile(Rng& rng, const Game& g) {
  return RandomProfile(rng, g, 1.0);
}

std::vector<std::map<int, int>> AllPureStrategies(const Game& g,
                                                  const std::vector<int>& vs) {
  std::vector<std::map<int, int>> out;
  std::vector<size_t> digit(vs.size(), 0);
  while (true) {
    std::map<int, int> s;
    for (size_t k = 0; k < vs.size(); ++k) s[vs[k]] = g.out(vs[k])[digit[k]].to;
    out.push_back(std::move(s));
    size_t k = 0;
    while (k < vs.size() && ++digit[k] == g.out(vs[k]).size()) digit[k++] = 0;
    if (k == vs.size()) break;
  }
  return out;
}

}  // namespace sgne::testing
