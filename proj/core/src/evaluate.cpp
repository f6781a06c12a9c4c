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

#include "sgne/evaluate.hpp"

#include <algorithm>
#include <deque>

#include "linalg.hpp"
#include "sgne/fpnum.hpp"

namespace sgne {

namespace {

using internal::DenseMatrix;
using internal::SparseRow;

std::set<int> BackwardClosure(const Game& g, const Transition& chain) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> pred(n);
  for (int v = 0; v < n; ++v) {
    if (g.IsTerminal(v)) continue;
    for (const auto& [w, p] : chain[v]) {
      if (p > 0) pred[w].push_back(v);
    }
  }
  std::set<int> reached;
  std::deque<int> queue;
  for (int t : g.Terminals()) {
    reached.insert(t);
    queue.push_back(t);
  }
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    for (int v : pred[w]) {
      if (reached.insert(v).second) queue.push_back(v);
    }
  }
  return reached;
}

// Vertices from which `player` can keep the play away from terminals forever
// when every other vertex follows `chain`.
std::vector<bool> AvoidSet(const Game& g, const Transition& chain,
                           int player) {
  const int n = g.num_vertices();
  std::vector<bool> in(n);
  for (int v = 0; v < n; ++v) in[v] = !g.IsTerminal(v);
  for (bool changed = true; changed;) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!in[v]) continue;
      bool keep;
      if (g.Controller(v) == player) {
        keep = false;
        for (const Edge& e : g.out(v)) keep = keep || in[e.to];
      } else {
        keep = true;
        for (const auto& [w, p] : chain[v]) {
          if (p > 0 && !in[w]) keep = false;
        }
      }
      if (!keep) {
        in[v] = false;
        changed = true;
      }
    }
  }
  return in;
}

std::vector<std::pair<int, Rational>> RowOf(const StationaryProfile& profile,
                                            int v) {
  std::vector<std::pair<int, Rational>> row;
  for (auto& [w, p] : profile.Distribution(v)) {
    if (p != 0) row.emplace_back(w, p);
  }
  return row;
}

}  // namespace

Transition InducedChain(const Game& g, const StationaryProfile& profile) {
  RequireFullProfile(g, profile);
  Transition chain(g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.IsTerminal(v)) continue;
    if (g.IsChance(v)) {
      for (const Edge& e : g.out(v)) {
        if (e.prob && *e.prob != 0) chain[v].emplace_back(e.to, *e.prob);
      }
    } else {
      chain[v] = RowOf(profile, v);
    }
  }
  return chain;
}

ValueVector ChainValues(const Game& g, const Transition& chain) {
  const int n = g.num_vertices();
  const int k = g.num_players();
  ValueVector out;
  out.support = BackwardClosure(g, chain);
  out.r.assign(k, std::vector<Rational>(n, Rational(0)));
  for (int t : g.Terminals()) {
    for (int i = 0; i < k; ++i) out.r[i][t] = g.Reward(t, i);
  }

  std::vector<int> index(n, -1);
  std::vector<int> unknowns;
  for (int v : out.support) {
    if (!g.IsTerminal(v)) {
      index[v] = static_cast<int>(unknowns.size());
      unknowns.push_back(v);
    }
  }
  if (!unknowns.empty()) {
    const int u = static_cast<int>(unknowns.size());
    std::vector<SparseRow> a(u);
    DenseMatrix b(u, std::vector<Rational>(k, Rational(0)));
    for (int row = 0; row < u; ++row) {
      int v = unknowns[row];
      a[row][row] += 1;
      for (const auto& [w, p] : chain[v]) {
        if (g.IsTerminal(w)) {
          for (int i = 0; i < k; ++i) b[row][i] += p * g.Reward(w, i);
        } else if (index[w] >= 0) {
          a[row][index[w]] -= p;
        }
      }
    }
    auto x = internal::SolveSparse(std::move(a), std::move(b));
    if (!x) throw Error("internal error: singular payoff system on V_S");
    for (int row = 0; row < u; ++row) {
      for (int i = 0; i < k; ++i) out.r[i][unknowns[row]] = (*x)[row][i];
    }
  }
  out.payoff.resize(k);
  for (int i = 0; i < k; ++i) out.payoff[i] = out.r[i][g.initial()];
  return out;
}

PlayerValues McValue(const Game& g, const StationaryProfile& profile,
                     int player) {
  if (player < 0 || player >= g.num_players()) {
    throw Error("player index out of range");
  }
  ValueVector all = ExpectedPayoffs(g, profile);
  return {all.payoff[player], std::move(all.r[player])};
}

ValueVector ExpectedPayoffs(const Game& g, const StationaryProfile& profile) {
  return ChainValues(g, InducedChain(g, profile));
}

StationaryProfile WithPureStrategy(const StationaryProfile& profile,
                                   const std::map<int, int>& strategy) {
  StationaryProfile out = profile;
  for (const auto& [v, w] : strategy) out.SetPure(v, w);
  return out;
}

BestResponse MdpBestResponse(const Game& g, const StationaryProfile& others,
                             int player) {
  if (player < 0 || player >= g.num_players()) {
    throw Error("player index out of range");
  }
  const int n = g.num_vertices();
  Transition chain(n);
  std::vector<int> mine;
  for (int v = 0; v < n; ++v) {
    if (g.IsTerminal(v)) continue;
    if (g.IsChance(v)) {
      for (const Edge& e : g.out(v)) {
        if (e.prob && *e.prob != 0) chain[v].emplace_back(e.to, *e.prob);
      }
    } else if (g.Controller(v) == player) {
      mine.push_back(v);
    } else {
      if (!others.HasRow(v)) {
        throw Error("profile fixes no row for '" + g.id(v) + "'");
      }
      chain[v] = RowOf(others, v);
    }
  }
  const std::vector<bool> avoid = AvoidSet(g, chain, player);

  // Policy: successor index, or kStay for the 0-valued "stay" option, which
  // is offered only inside the avoid set.
  constexpr int kStay = -1;
  std::map<int, int> policy;
  for (int v : mine) {
    int lowest = g.out(v).front().to;
    for (const Edge& e : g.out(v)) lowest = std::min(lowest, e.to);
    policy[v] = lowest;
  }

  std::vector<Rational> val;
  for (;;) {
    for (int v : mine) {
      chain[v].clear();
      if (policy[v] != kStay) chain[v].emplace_back(policy[v], Rational(1));
    }
    val = ChainValues(g, chain).r[player];
    bool switched = false;
    for (int v : mine) {
      Rational current = policy[v] == kStay ? Rational(0) : val[policy[v]];
      int best = kStay;
      Rational best_val;
      for (const Edge& e : g.out(v)) {
        if (best == kStay || val[e.to] > best_val ||
            (val[e.to] == best_val && e.to < best)) {
          best = e.to;
          best_val = val[e.to];
        }
      }
      if (avoid[v] && best_val < 0) {
        best = kStay;
        best_val = 0;
      }
      if (best_val > current) {
        policy[v] = best;
        switched = true;
      }
    }
    if (!switched) break;
  }

  BestResponse out;
  out.value = val[g.initial()];
  for (int v : mine) {
    int choice = policy[v];
    if (choice == kStay) {
      for (const Edge& e : g.out(v)) {
        if (avoid[e.to] && val[e.to] == 0 && (choice == kStay || e.to < choice)) {
          choice = e.to;
        }
      }
      if (choice == kStay) {
        throw Error("internal error: no successor realizes the stay option");
      }
    }
    out.strategy[v] = choice;
  }

  Transition check = chain;
  for (const auto& [v, w] : out.strategy) {
    check[v].assign(1, {w, Rational(1)});
  }
  Rational certified = ChainValues(g, check).payoff[player];
  if (certified != out.value) {
    throw Error("internal error: best-response value failed re-certification");
  }
  return out;
}

Rational IterativeValue(const Game& g, const StationaryProfile& profile,
                        int player, const Rational& tolerance,
                        int max_steps) {
  if (tolerance <= 0) throw Error("tolerance must be positive");
  const Transition chain = InducedChain(g, profile);
  const std::set<int> vs = BackwardClosure(g, chain);
  const int n = g.num_vertices();
  Rational bound = 0;
  for (int t : g.Terminals()) bound = std::max(bound, Rational(Abs(g.Reward(t, player))));
  if (bound == 0) return 0;

  for (int ell = 64; ell <= 1 << 16; ell *= 2) {
    // Transition probabilities truncated once; every step rounds down.
    std::vector<std::vector<std::pair<int, FloatL>>> p(n);
    for (int v = 0; v < n; ++v) {
      if (g.IsTerminal(v) || !vs.count(v)) continue;
      for (const auto& [w, q] : chain[v]) {
        if (vs.count(w)) p[v].emplace_back(w, Truncate(q, ell));
      }
    }
    std::vector<FloatL> mass(n, FloatL::Zero(ell));
    std::vector<FloatL> absorbed(n, FloatL::Zero(ell));
    Rational dropped = 0;
    int v0 = g.initial();
    if (vs.count(v0)) {
      mass[v0] = Truncate(Rational(1), ell);
    } else {
      return 0;
    }
    bool restart = false;
    for (int step = 0; step <= max_steps; ++step) {
      Rational remaining = 0, collected = 0;
      for (int v = 0; v < n; ++v) {
        if (g.IsTerminal(v)) {
          collected += absorbed[v].value();
        } else {
          remaining += mass[v].value();
        }
      }
      Rational lost = 1 - collected - remaining - dropped;
      if ((remaining + lost) * bound <= tolerance) {
        Rational value = 0;
        for (int t : g.Terminals()) value += absorbed[t].value() * g.Reward(t, player);
        return value;
      }
      if (2 * lost * bound > tolerance) {
        restart = true;
        break;
      }
      std::vector<FloatL> next(n, FloatL::Zero(ell));
      for (int v = 0; v < n; ++v) {
        if (g.IsTerminal(v) || mass[v].is_zero()) continue;
        for (const auto& [w, q] : p[v]) {
          FloatL part = FpMul(mass[v], q);
          if (g.IsTerminal(w)) {
            absorbed[w] = FpAdd(absorbed[w], part);
          } else {
            next[w] = FpAdd(next[w], part);
          }
        }
      }
      // Mass that left V_S never reaches a terminal; it pays exactly 0.
      for (int v = 0; v < n; ++v) {
        if (g.IsTerminal(v) || mass[v].is_zero()) continue;
        Rational kept = 0;
        for (const auto& [w, q] : chain[v]) {
          if (!vs.count(w)) kept += q;
        }
        dropped += mass[v].value() * kept;
      }
      mass = std::move(next);
    }
    if (!restart) break;
  }
  throw Error("iterative evaluation did not converge");
}

bool ApproxMdpDecision(const Game& g, const StationaryProfile& others,
                       int player, const Rational& alpha, const Rational& eps,
                       DecisionMode mode) {
  if (eps <= 0) throw Error("epsilon must be positive");
  BestResponse br = MdpBestResponse(g, others, player);
  if (mode == DecisionMode::kExact) return alpha > br.value;
  // Strategy rows of the player are replaced by the optimal pure choices.
  StationaryProfile full = WithPureStrategy(others, br.strategy);
  Rational approx = IterativeValue(g, full, player, eps / 2);
  return alpha >= approx;
}

}  // namespace sgne
