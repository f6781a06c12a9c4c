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

#ifndef SGNE_MODEL_HPP_
#define SGNE_MODEL_HPP_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "sgne/fpnum.hpp"
#include "sgne/rational.hpp"

namespace sgne {

enum class OwnerKind { kPlayer, kChance, kTerminal };

struct Owner {
  OwnerKind kind = OwnerKind::kTerminal;
  int player = -1;  // valid iff kind == kPlayer

  static Owner Player(int p) { return {OwnerKind::kPlayer, p}; }
  static Owner Chance() { return {OwnerKind::kChance, -1}; }
  static Owner Terminal() { return {OwnerKind::kTerminal, -1}; }

  friend bool operator==(const Owner&, const Owner&) = default;
};

struct Edge {
  int to = -1;
  std::optional<Rational> prob;  // present iff the source is a chance vertex

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct Vertex {
  std::string id;
  Owner owner;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

// A turn-based multiplayer stochastic game with terminal rewards.
//
// Vertices and players are addressed by dense indices in declaration order;
// string ids are kept for I/O. The builder methods reject structurally
// meaningless input (duplicate ids, unknown vertices); semantic invariants
// are reported by ValidateGame so that invalid games can still be inspected.
class Game {
 public:
  // Throws on empty, duplicate, or reserved ("chance", "terminal") names.
  int AddPlayer(std::string name);
  // Throws on a duplicate id.
  int AddVertex(std::string id, Owner owner);
  void AddEdge(int from, int to, std::optional<Rational> prob = std::nullopt);
  // Throws ParseError naming the unknown vertex.
  void AddEdge(std::string_view from, std::string_view to,
               std::optional<Rational> prob = std::nullopt);
  void SetReward(int vertex, int player, Rational value);
  void SetInitial(int vertex) { initial_ = vertex; }

  int num_players() const { return static_cast<int>(players_.size()); }
  const std::string& player_name(int p) const { return players_.at(p); }
  const std::vector<std::string>& players() const { return players_; }
  std::optional<int> FindPlayer(std::string_view name) const;
  // Throws Error if unknown.
  int PlayerIndex(std::string_view name) const;

  int num_vertices() const { return static_cast<int>(vertices_.size()); }
  const Vertex& vertex(int v) const { return vertices_.at(v); }
  const std::string& id(int v) const { return vertices_.at(v).id; }
  std::optional<int> FindVertex(std::string_view id) const;
  // Throws Error if unknown.
  int VertexIndex(std::string_view id) const;

  const std::vector<Edge>& out(int v) const { return out_.at(v); }
  int num_edges() const;
  bool HasEdge(int from, int to) const;

  bool IsTerminal(int v) const {
    return vertices_[v].owner.kind == OwnerKind::kTerminal;
  }
  bool IsChance(int v) const {
    return vertices_[v].owner.kind == OwnerKind::kChance;
  }
  // Owning player, or -1 for chance and terminal vertices.
  int Controller(int v) const {
    return vertices_[v].owner.kind == OwnerKind::kPlayer
               ? vertices_[v].owner.player
               : -1;
  }
  std::vector<int> ControlledBy(int player) const;
  std::vector<int> ControlledVertices() const;
  std::vector<int> Terminals() const;

  // mu_player(t); zero when not given.
  Rational Reward(int vertex, int player) const;
  // Raw reward table as given (may name non-terminal vertices when invalid).
  const std::map<int, std::vector<Rational>>& reward_table() const {
    return rewards_;
  }

  int initial() const { return initial_; }

  friend bool operator==(const Game&, const Game&) = default;

 private:
  std::vector<std::string> players_;
  std::vector<Vertex> vertices_;
  std::vector<std::vector<Edge>> out_;
  std::map<int, std::vector<Rational>> rewards_;
  std::map<std::string, int, std::less<>> vertex_index_;
  int initial_ = -1;
};

// Every invariant violation of `game`, as human-readable messages. Empty iff
// the game is valid.
std::vector<std::string> ValidateGame(const Game& game);

// Throws Error listing the violations if the game is invalid.
void RequireValidGame(const Game& game);

// Largest bit size of a chance probability (the tau of the bit-size measure).
int64_t ProbabilityBitSize(const Game& game);

// Largest |reward| over all terminals and players.
Rational MaxAbsReward(const Game& game);

// Copy with every reward divided by MaxAbsReward (identity if all are zero).
Game ScaleRewards(const Game& game);

// One row of a stationary profile: exact probabilities, or F(l) weights whose
// normalization is the distribution.
using ExactRow = std::map<int, Rational>;
using FloatRow = std::map<int, FloatL>;
using ProfileRow = std::variant<ExactRow, FloatRow>;

// For each controlled vertex, a distribution over its successors. A profile
// may be partial (e.g. sigma_{-i}); completeness is checked where needed.
class StationaryProfile {
 public:
  void SetRow(int vertex, ProfileRow row) { rows_[vertex] = std::move(row); }
  // Sets a single exact entry, creating an exact row if needed.
  void Set(int vertex, int successor, Rational p);
  // Deterministic choice.
  void SetPure(int vertex, int successor);
  void EraseRow(int vertex) { rows_.erase(vertex); }

  bool HasRow(int vertex) const { return rows_.count(vertex) > 0; }
  const std::map<int, ProfileRow>& rows() const { return rows_; }
  const ProfileRow& row(int vertex) const { return rows_.at(vertex); }

  // Exact probabilities of the row (float rows normalized), including any
  // zero entries that were stored explicitly.
  std::map<int, Rational> Distribution(int vertex) const;
  Rational Prob(int vertex, int successor) const;

  // Positive-probability successors of the row, in increasing index order.
  std::vector<int> Support(int vertex) const;

  bool IsPure() const;
  StationaryProfile ToExact() const;

  friend bool operator==(const StationaryProfile&,
                         const StationaryProfile&) = default;

 private:
  std::map<int, ProfileRow> rows_;
};

// Violations of the profile invariants with respect to `game`: rows only at
// player vertices, support within out-edges, nonnegative exact rows summing
// to 1, float rows in D(l). When `require_complete`, also every player vertex
// must have a row.
std::vector<std::string> ValidateProfile(const Game& game,
                                         const StationaryProfile& profile,
                                         bool require_complete);

// Throws Error unless the profile is valid and complete for `game`.
void RequireFullProfile(const Game& game, const StationaryProfile& profile);

// V_S: vertices from which a terminal is reached with positive probability
// when every controlled vertex follows `profile` (backward closure of the
// terminals over positive-probability edges).
std::set<int> ReachableSupport(const Game& game,
                               const StationaryProfile& profile);

// ---- JSON documents ----

// Game file: {players, vertices:[{id, owner}], edges:[{from, to, prob?}],
// rewards:{terminal:{player:"p/q"}}, initial}. Throws ParseError; the result
// passes ValidateGame.
Game ParseGame(std::string_view text);
std::string SerializeGame(const Game& game);

// Profile file: {"rows": {vertex: {successor: "p/q" | {"m","e","ell"}}}}.
StationaryProfile ParseProfile(const Game& game, std::string_view text);
std::string SerializeProfile(const Game& game,
                             const StationaryProfile& profile);

}  // namespace sgne

#endif  // SGNE_MODEL_HPP_
