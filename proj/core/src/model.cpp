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

#include "sgne/model.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace sgne {

namespace {

bool IsReservedOwner(std::string_view name) {
  return name == "chance" || name == "terminal";
}

std::string Quote(const std::string& id) { return "'" + id + "'"; }

}  // namespace

int Game::AddPlayer(std::string name) {
  if (name.empty()) throw Error("player name must be non-empty");
  if (IsReservedOwner(name)) {
    throw Error("player name '" + name + "' is a reserved owner tag");
  }
  if (FindPlayer(name)) throw Error("duplicate player '" + name + "'");
  players_.push_back(std::move(name));
  return num_players() - 1;
}

int Game::AddVertex(std::string id, Owner owner) {
  if (id.empty()) throw Error("vertex id must be non-empty");
  if (vertex_index_.count(id)) throw Error("duplicate vertex id '" + id + "'");
  int v = num_vertices();
  vertex_index_.emplace(id, v);
  vertices_.push_back({std::move(id), owner});
  out_.emplace_back();
  return v;
}

void Game::AddEdge(int from, int to, std::optional<Rational> prob) {
  if (from < 0 || from >= num_vertices() || to < 0 || to >= num_vertices()) {
    throw Error("edge endpoint out of range");
  }
  if (prob) prob->canonicalize();
  out_[from].push_back({to, std::move(prob)});
}

void Game::AddEdge(std::string_view from, std::string_view to,
                   std::optional<Rational> prob) {
  auto f = FindVertex(from);
  if (!f) throw ParseError("edge references unknown vertex '" +
                           std::string(from) + "'");
  auto t = FindVertex(to);
  if (!t) throw ParseError("edge references unknown vertex '" +
                           std::string(to) + "'");
  AddEdge(*f, *t, std::move(prob));
}

void Game::SetReward(int vertex, int player, Rational value) {
  if (vertex < 0 || vertex >= num_vertices()) {
    throw Error("reward vertex out of range");
  }
  if (player < 0 || player >= num_players()) {
    throw Error("reward player out of range");
  }
  auto& row = rewards_[vertex];
  if (static_cast<int>(row.size()) < num_players()) {
    row.resize(num_players(), Rational(0));
  }
  value.canonicalize();
  row[player] = std::move(value);
}

std::optional<int> Game::FindPlayer(std::string_view name) const {
  for (int p = 0; p < num_players(); ++p) {
    if (players_[p] == name) return p;
  }
  return std::nullopt;
}

int Game::PlayerIndex(std::string_view name) const {
  auto p = FindPlayer(name);
  if (!p) throw Error("unknown player '" + std::string(name) + "'");
  return *p;
}

std::optional<int> Game::FindVertex(std::string_view id) const {
  auto it = vertex_index_.find(id);
  if (it == vertex_index_.end()) return std::nullopt;
  return it->second;
}

int Game::VertexIndex(std::string_view id) const {
  auto v = FindVertex(id);
  if (!v) throw Error("unknown vertex '" + std::string(id) + "'");
  return *v;
}

int Game::num_edges() const {
  int m = 0;
  for (const auto& row : out_) m += static_cast<int>(row.size());
  return m;
}

bool Game::HasEdge(int from, int to) const {
  for (const Edge& e : out_.at(from)) {
    if (e.to == to) return true;
  }
  return false;
}

std::vector<int> Game::ControlledBy(int player) const {
  std::vector<int> result;
  for (int v = 0; v < num_vertices(); ++v) {
    if (Controller(v) == player) result.push_back(v);
  }
  return result;
}

std::vector<int> Game::ControlledVertices() const {
  std::vector<int> result;
  for (int v = 0; v < num_vertices(); ++v) {
    if (Controller(v) >= 0) result.push_back(v);
  }
  return result;
}

std::vector<int> Game::Terminals() const {
  std::vector<int> result;
  for (int v = 0; v < num_vertices(); ++v) {
    if (IsTerminal(v)) result.push_back(v);
  }
  return result;
}

Rational Game::Reward(int vertex, int player) const {
  auto it = rewards_.find(vertex);
  if (it == rewards_.end() || player >= static_cast<int>(it->second.size())) {
    return 0;
  }
  return it->second[player];
}

std::vector<std::string> ValidateGame(const Game& g) {
  std::vector<std::string> out;
  const int n = g.num_vertices();
  for (int v = 0; v < n; ++v) {
    const Vertex& vx = g.vertex(v);
    const auto& edges = g.out(v);
    const std::string name = Quote(vx.id);
    if (vx.owner.kind == OwnerKind::kPlayer &&
        (vx.owner.player < 0 || vx.owner.player >= g.num_players())) {
      out.push_back("vertex " + name + " has an unknown owner");
    }
    if (g.IsTerminal(v)) {
      if (!edges.empty()) {
        out.push_back("terminal has out-degree " +
                      std::to_string(edges.size()) + " at " + name);
      }
    } else if (edges.empty()) {
      out.push_back("non-terminal vertex " + name + " has out-degree 0");
      out.push_back("vertex " + name +
                    " has no successors but is not owned by terminal");
    }
    std::set<int> seen;
    for (const Edge& e : edges) {
      if (!seen.insert(e.to).second) {
        out.push_back("duplicate edge " + vx.id + " -> " + g.id(e.to));
      }
    }
    if (g.IsChance(v)) {
      Rational sum = 0;
      bool complete = true;
      for (const Edge& e : edges) {
        if (!e.prob) {
          out.push_back("chance edge " + vx.id + " -> " + g.id(e.to) +
                        " has no probability");
          complete = false;
          continue;
        }
        if (*e.prob < 0 || *e.prob > 1) {
          out.push_back("chance edge " + vx.id + " -> " + g.id(e.to) +
                        " has probability " + ToString(*e.prob) +
                        " outside [0,1]");
        }
        sum += *e.prob;
      }
      if (complete && !edges.empty() && sum != 1) {
        out.push_back("chance row sums to " +
                      (sum.get_den() == 1 ? sum.get_num().get_str()
                                          : ToString(sum)) +
                      " at " + name);
      }
    } else {
      for (const Edge& e : edges) {
        if (e.prob) {
          out.push_back("edge " + vx.id + " -> " + g.id(e.to) +
                        " carries a probability but " + name +
                        " is not a chance vertex");
        }
      }
    }
  }
  for (const auto& [v, row] : g.reward_table()) {
    if (!g.IsTerminal(v)) {
      out.push_back("rewards given for non-terminal vertex " +
                    Quote(g.id(v)));
    }
  }
  if (g.initial() < 0 || g.initial() >= n) {
    out.push_back("initial vertex is not set");
  }
  return out;
}

void RequireValidGame(const Game& g) {
  auto violations = ValidateGame(g);
  if (violations.empty()) return;
  std::string msg = "invalid game:";
  for (const auto& v : violations) msg += "\n  " + v;
  throw Error(msg);
}

int64_t ProbabilityBitSize(const Game& g) {
  int64_t tau = 0;
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (const Edge& e : g.out(v)) {
      if (e.prob) tau = std::max(tau, BitSize(*e.prob));
    }
  }
  return tau;
}

Rational MaxAbsReward(const Game& g) {
  Rational best = 0;
  for (const auto& [v, row] : g.reward_table()) {
    for (const Rational& r : row) best = std::max(best, Rational(Abs(r)));
  }
  return best;
}

Game ScaleRewards(const Game& g) {
  Rational scale = MaxAbsReward(g);
  Game copy = g;
  if (scale == 0) return copy;
  for (const auto& [v, row] : g.reward_table()) {
    for (int p = 0; p < static_cast<int>(row.size()); ++p) {
      copy.SetReward(v, p, row[p] / scale);
    }
  }
  return copy;
}

void StationaryProfile::Set(int vertex, int successor, Rational p) {
  auto it = rows_.find(vertex);
  if (it == rows_.end() || !std::holds_alternative<ExactRow>(it->second)) {
    rows_[vertex] = ExactRow{};
    it = rows_.find(vertex);
  }
  p.canonicalize();
  std::get<ExactRow>(it->second)[successor] = std::move(p);
}

void StationaryProfile::SetPure(int vertex, int successor) {
  rows_[vertex] = ExactRow{{successor, Rational(1)}};
}

std::map<int, Rational> StationaryProfile::Distribution(int vertex) const {
  const ProfileRow& r = rows_.at(vertex);
  if (const auto* exact = std::get_if<ExactRow>(&r)) return *exact;
  const auto& fr = std::get<FloatRow>(r);
  Rational sum = 0;
  for (const auto& [w, x] : fr) sum += x.value();
  if (sum == 0) throw Error("float row has no positive weight");
  std::map<int, Rational> d;
  for (const auto& [w, x] : fr) {
    Rational q = x.value() / sum;
    q.canonicalize();
    d[w] = q;
  }
  return d;
}

Rational StationaryProfile::Prob(int vertex, int successor) const {
  auto d = Distribution(vertex);
  auto it = d.find(successor);
  return it == d.end() ? Rational(0) : it->second;
}

std::vector<int> StationaryProfile::Support(int vertex) const {
  std::vector<int> s;
  for (const auto& [w, p] : Distribution(vertex)) {
    if (p > 0) s.push_back(w);
  }
  return s;
}

bool StationaryProfile::IsPure() const {
  for (const auto& [v, r] : rows_) {
    if (Support(v).size() != 1) return false;
  }
  return true;
}

StationaryProfile StationaryProfile::ToExact() const {
  StationaryProfile out;
  for (const auto& [v, r] : rows_) out.rows_[v] = Distribution(v);
  return out;
}

std::vector<std::string> ValidateProfile(const Game& g,
                                         const StationaryProfile& profile,
                                         bool require_complete) {
  std::vector<std::string> out;
  for (const auto& [v, row] : profile.rows()) {
    if (v < 0 || v >= g.num_vertices()) {
      out.push_back("profile row for unknown vertex index " +
                    std::to_string(v));
      continue;
    }
    const std::string name = Quote(g.id(v));
    if (g.Controller(v) < 0) {
      out.push_back("profile row at " + name +
                    ", which is not a player vertex");
      continue;
    }
    auto check_succ = [&](int w) {
      if (w < 0 || w >= g.num_vertices() || !g.HasEdge(v, w)) {
        out.push_back("profile row at " + name +
                      " puts weight on a non-successor");
        return false;
      }
      return true;
    };
    if (const auto* exact = std::get_if<ExactRow>(&row)) {
      Rational sum = 0;
      for (const auto& [w, p] : *exact) {
        check_succ(w);
        if (p < 0) out.push_back("negative probability in row " + name);
        sum += p;
      }
      if (sum != 1) {
        out.push_back("profile row " + name + " sums to " + ToString(sum));
      }
    } else {
      const auto& fr = std::get<FloatRow>(row);
      std::vector<FloatL> weights;
      for (const auto& [w, x] : fr) {
        check_succ(w);
        weights.push_back(x);
      }
      if (!IsDlMember(FloatDist(weights))) {
        out.push_back("float row " + name + " is not in D(l)");
      }
    }
  }
  if (require_complete) {
    for (int v : g.ControlledVertices()) {
      if (!profile.HasRow(v)) {
        out.push_back("profile has no row for " + Quote(g.id(v)));
      }
    }
  }
  return out;
}

void RequireFullProfile(const Game& g, const StationaryProfile& profile) {
  auto violations = ValidateProfile(g, profile, true);
  if (violations.empty()) return;
  std::string msg = "invalid profile:";
  for (const auto& v : violations) msg += "\n  " + v;
  throw Error(msg);
}

std::set<int> ReachableSupport(const Game& g,
                               const StationaryProfile& profile) {
  const int n = g.num_vertices();
  std::vector<std::vector<int>> pred(n);
  for (int v = 0; v < n; ++v) {
    if (g.IsTerminal(v)) continue;
    if (g.IsChance(v)) {
      for (const Edge& e : g.out(v)) {
        if (e.prob && *e.prob > 0) pred[e.to].push_back(v);
      }
    } else {
      if (!profile.HasRow(v)) {
        throw Error("profile has no row for '" + g.id(v) + "'");
      }
      for (int w : profile.Support(v)) pred[w].push_back(v);
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

}  // namespace sgne
