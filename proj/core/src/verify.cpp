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

#include "sgne/verify.hpp"

#include <algorithm>

#include "json.hpp"

namespace sgne {

namespace {

using Json = nlohmann::ordered_json;

void RequireBounds(const Game& g, const Thresholds& bounds) {
  const size_t k = static_cast<size_t>(g.num_players());
  if (bounds.lower.size() != k || bounds.upper.size() != k) {
    throw Error("thresholds must give a lower and an upper bound for each of " +
                std::to_string(k) + " players");
  }
}

Json RationalJson(const Rational& q) {
  return {{"exact", ToString(q)}, {"decimal", ToDecimal(q)}};
}

std::string EdgeName(const Game& g, int v, int w) {
  return g.id(v) + " -> " + g.id(w);
}

}  // namespace

Thresholds Thresholds::Vacuous(const Game& g) {
  Rational m = MaxAbsReward(g);
  Thresholds t;
  t.lower.assign(g.num_players(), -m);
  t.upper.assign(g.num_players(), m);
  return t;
}

bool VerificationReport::IsNe(const Rational& eps) const {
  return std::all_of(players.begin(), players.end(),
                     [&](const PlayerReport& p) { return p.margin <= eps; });
}

Rational VerificationReport::MaxMargin() const {
  Rational best = 0;
  for (const auto& p : players) best = std::max(best, p.margin);
  return best;
}

std::string VerificationReport::ToJson() const {
  Json doc;
  doc["epsilon"] = RationalJson(epsilon);
  doc["is_ne"] = is_ne;
  doc["constraints_ok"] = constraints_ok;
  doc["accepted"] = accepted;
  if (promise_mode) doc["mode"] = "promise";
  Json rows = Json::array();
  for (const auto& p : players) {
    rows.push_back({{"player", p.player},
                    {"payoff", RationalJson(p.payoff)},
                    {"best_response", RationalJson(p.best_response)},
                    {"margin", RationalJson(p.margin)},
                    {"constraint_ok", p.constraint_ok}});
  }
  doc["players"] = std::move(rows);
  return doc.dump(2) + "\n";
}

VerificationReport VerifyEpsilonNe(const Game& g,
                                   const StationaryProfile& profile,
                                   const Rational& eps) {
  if (eps < 0) throw Error("epsilon must be nonnegative");
  RequireFullProfile(g, profile);
  ValueVector values = ExpectedPayoffs(g, profile);
  VerificationReport report;
  report.epsilon = eps;
  for (int i = 0; i < g.num_players(); ++i) {
    BestResponse br = MdpBestResponse(g, profile, i);
    PlayerReport row;
    row.player = g.player_name(i);
    row.payoff = values.payoff[i];
    row.best_response = br.value;
    row.margin = br.value - values.payoff[i];
    row.deviation = std::move(br.strategy);
    if (row.margin < 0) {
      throw Error("internal error: best response below the profile payoff");
    }
    report.players.push_back(std::move(row));
  }
  report.is_ne = report.IsNe(eps);
  report.accepted = report.is_ne;
  return report;
}

VerificationReport VerifyConstrained(const Game& g,
                                     const StationaryProfile& profile,
                                     const Thresholds& bounds,
                                     const Rational& eps) {
  RequireBounds(g, bounds);
  VerificationReport report = VerifyEpsilonNe(g, profile, eps);
  for (int i = 0; i < g.num_players(); ++i) {
    PlayerReport& row = report.players[i];
    row.constraint_ok = bounds.lower[i] - eps <= row.payoff &&
                        row.payoff <= bounds.upper[i] + eps;
    report.constraints_ok = report.constraints_ok && row.constraint_ok;
  }
  report.accepted = report.is_ne && report.constraints_ok;
  return report;
}

VerificationReport VerifyPromise(const Game& g,
                                 const StationaryProfile& profile,
                                 const Thresholds& bounds, const Rational& eps,
                                 DecisionMode mode) {
  if (eps <= 0) throw Error("promise verification needs epsilon > 0");
  VerificationReport report = VerifyConstrained(g, profile, bounds, eps);
  report.promise_mode = true;
  const Rational eighth = eps / 8;
  bool accept = true;
  for (int i = 0; i < g.num_players(); ++i) {
    Rational estimate = mode == DecisionMode::kExact
                            ? report.players[i].payoff
                            : IterativeValue(g, profile, i, eighth);
    bool no_deviation = ApproxMdpDecision(g, profile, i,
                                          estimate + 3 * eps / 4, eighth, mode);
    bool in_bounds = bounds.lower[i] - 7 * eighth <= estimate &&
                     estimate <= bounds.upper[i] + 7 * eighth;
    accept = accept && no_deviation && in_bounds;
  }
  report.accepted = accept;
  return report;
}

std::string EtrViolation::ToString() const {
  std::string head = constraint == 0 ? std::string("threshold")
                                     : "constraint " + std::to_string(constraint);
  return head + " (" + where + ")";
}

std::vector<EtrViolation> CheckEtrConstraints(const Game& g,
                                              const StationaryProfile& profile,
                                              const Thresholds& bounds) {
  RequireBounds(g, bounds);
  const int n = g.num_vertices();
  Transition p(n);
  std::vector<EtrViolation> out;
  for (int v = 0; v < n; ++v) {
    if (g.IsTerminal(v)) continue;
    if (profile.HasRow(v)) {
      auto dist = profile.Distribution(v);
      for (const Edge& e : g.out(v)) {
        auto it = dist.find(e.to);
        p[v].emplace_back(e.to, it == dist.end() ? Rational(0) : it->second);
      }
    } else if (g.IsChance(v)) {
      for (const Edge& e : g.out(v)) {
        p[v].emplace_back(e.to, e.prob ? *e.prob : Rational(0));
      }
    } else {
      throw Error("profile has no row for '" + g.id(v) + "'");
    }
  }

  // Constraints 1-5. S is the set of positive entries, so 1 and 3 hold by
  // construction.
  for (int v = 0; v < n; ++v) {
    if (g.IsTerminal(v)) continue;
    Rational sum = 0;
    for (const auto& [w, q] : p[v]) {
      if (q < 0) out.push_back({3, EdgeName(g, v, w)});
      if (q > 1) out.push_back({2, EdgeName(g, v, w)});
      sum += q;
    }
    if (g.IsChance(v)) {
      size_t k = 0;
      for (const Edge& e : g.out(v)) {
        Rational want = e.prob ? *e.prob : Rational(0);
        if (p[v][k++].second != want) out.push_back({5, EdgeName(g, v, e.to)});
      }
    } else if (sum != 1) {
      out.push_back({4, g.id(v)});
    }
  }

  Transition positive(n);
  for (int v = 0; v < n; ++v) {
    for (const auto& [w, q] : p[v]) {
      if (q > 0) positive[v].emplace_back(w, q);
    }
  }
  ValueVector values;
  try {
    values = ChainValues(g, positive);
  } catch (const Error&) {
    out.push_back({8, "payoff system has no unique solution"});
    return out;
  }

  // 6-8 hold by construction of r; 9 is local optimality at every owned
  // vertex, including those outside V_S.
  for (int v = 0; v < n; ++v) {
    int i = g.Controller(v);
    if (i < 0) continue;
    for (const Edge& e : g.out(v)) {
      if (values.r[i][v] < values.r[i][e.to]) {
        out.push_back({9, "player " + g.player_name(i) + ", " +
                              EdgeName(g, v, e.to)});
      }
    }
  }
  for (int i = 0; i < g.num_players(); ++i) {
    if (values.payoff[i] < bounds.lower[i] ||
        values.payoff[i] > bounds.upper[i]) {
      out.push_back({0, "player " + g.player_name(i)});
    }
  }
  return out;
}

}  // namespace sgne
