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

#include <string>

#include "json.hpp"
#include "sgne/model.hpp"

namespace sgne {

namespace {

using Json = nlohmann::ordered_json;

Json ParseJson(std::string_view text, const char* what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    // e.byte is a 1-based offset; report it as line:column.
    size_t line = 1, col = 1;
    for (size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw ParseError(std::string(what) + ": syntax error at line " +
                     std::to_string(line) + ", column " + std::to_string(col));
  }
}

const Json& Field(const Json& obj, const char* key, const std::string& path) {
  if (!obj.is_object()) throw ParseError(path + ": expected an object");
  auto it = obj.find(key);
  if (it == obj.end()) {
    throw ParseError(path + "." + key + ": missing field");
  }
  return *it;
}

std::string String(const Json& j, const std::string& path) {
  if (!j.is_string()) throw ParseError(path + ": expected a string");
  return j.get<std::string>();
}

Rational RationalField(const Json& j, const std::string& path) {
  if (!j.is_string()) {
    throw ParseError(path + ": expected a \"p/q\" string");
  }
  try {
    return ParseRational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw ParseError(path + ": " + e.what());
  }
}

}  // namespace

Game ParseGame(std::string_view text) {
  Json doc = ParseJson(text, "game");
  if (!doc.is_object()) throw ParseError("game: expected a JSON object");
  Game g;

  const Json& players = Field(doc, "players", "game");
  if (!players.is_array()) throw ParseError("game.players: expected array");
  for (size_t i = 0; i < players.size(); ++i) {
    std::string path = "game.players[" + std::to_string(i) + "]";
    try {
      g.AddPlayer(String(players[i], path));
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(path + ": " + e.what());
    }
  }

  const Json& vertices = Field(doc, "vertices", "game");
  if (!vertices.is_array()) throw ParseError("game.vertices: expected array");
  for (size_t i = 0; i < vertices.size(); ++i) {
    std::string path = "game.vertices[" + std::to_string(i) + "]";
    std::string id = String(Field(vertices[i], "id", path), path + ".id");
    std::string owner =
        String(Field(vertices[i], "owner", path), path + ".owner");
    Owner o;
    if (owner == "chance") {
      o = Owner::Chance();
    } else if (owner == "terminal") {
      o = Owner::Terminal();
    } else if (auto p = g.FindPlayer(owner)) {
      o = Owner::Player(*p);
    } else {
      throw ParseError(path + ".owner: unknown owner '" + owner + "'");
    }
    if (g.FindVertex(id)) {
      throw ParseError(path + ".id: duplicate vertex id '" + id + "'");
    }
    g.AddVertex(id, o);
  }

  const Json& edges = Field(doc, "edges", "game");
  if (!edges.is_array()) throw ParseError("game.edges: expected array");
  for (size_t i = 0; i < edges.size(); ++i) {
    std::string path = "game.edges[" + std::to_string(i) + "]";
    std::string from = String(Field(edges[i], "from", path), path + ".from");
    std::string to = String(Field(edges[i], "to", path), path + ".to");
    std::optional<Rational> prob;
    if (edges[i].contains("prob")) {
      prob = RationalField(edges[i]["prob"], path + ".prob");
    }
    try {
      g.AddEdge(from, to, prob);
    } catch (const ParseError& e) {
      throw ParseError(path + ": " + e.what());
    }
  }

  if (doc.contains("rewards")) {
    const Json& rewards = doc["rewards"];
    if (!rewards.is_object()) {
      throw ParseError("game.rewards: expected an object");
    }
    for (const auto& [vid, row] : rewards.items()) {
      std::string path = "game.rewards." + vid;
      auto v = g.FindVertex(vid);
      if (!v) throw ParseError(path + ": unknown vertex '" + vid + "'");
      if (!row.is_object()) throw ParseError(path + ": expected an object");
      for (const auto& [pname, val] : row.items()) {
        auto p = g.FindPlayer(pname);
        if (!p) throw ParseError(path + "." + pname + ": unknown player");
        g.SetReward(*v, *p, RationalField(val, path + "." + pname));
      }
    }
  }

  std::string initial =
      String(Field(doc, "initial", "game"), "game.initial");
  auto v0 = g.FindVertex(initial);
  if (!v0) {
    throw ParseError("game.initial: unknown vertex '" + initial + "'");
  }
  g.SetInitial(*v0);

  auto violations = ValidateGame(g);
  if (!violations.empty()) {
    std::string msg = "game: " + violations.front();
    for (size_t i = 1; i < violations.size(); ++i) msg += "; " + violations[i];
    throw ParseError(msg);
  }
  return g;
}

std::string SerializeGame(const Game& g) {
  Json doc;
  doc["players"] = g.players();
  Json vertices = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    const Owner& o = g.vertex(v).owner;
    std::string owner = o.kind == OwnerKind::kChance     ? "chance"
                        : o.kind == OwnerKind::kTerminal ? "terminal"
                                                         : g.player_name(o.player);
    vertices.push_back({{"id", g.id(v)}, {"owner", owner}});
  }
  doc["vertices"] = std::move(vertices);
  Json edges = Json::array();
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (const Edge& e : g.out(v)) {
      Json je = {{"from", g.id(v)}, {"to", g.id(e.to)}};
      if (e.prob) je["prob"] = ToString(*e.prob);
      edges.push_back(std::move(je));
    }
  }
  doc["edges"] = std::move(edges);
  Json rewards = Json::object();
  for (const auto& [v, row] : g.reward_table()) {
    Json jr = Json::object();
    for (size_t p = 0; p < row.size(); ++p) {
      jr[g.player_name(static_cast<int>(p))] = ToString(row[p]);
    }
    rewards[g.id(v)] = std::move(jr);
  }
  doc["rewards"] = std::move(rewards);
  doc["initial"] = g.initial() >= 0 ? g.id(g.initial()) : std::string();
  return doc.dump(2) + "\n";
}

StationaryProfile ParseProfile(const Game& g, std::string_view text) {
  Json doc = ParseJson(text, "profile");
  const Json& rows = Field(doc, "rows", "profile");
  if (!rows.is_object()) throw ParseError("profile.rows: expected an object");
  StationaryProfile profile;
  for (const auto& [vid, row] : rows.items()) {
    std::string path = "profile.rows." + vid;
    auto v = g.FindVertex(vid);
    if (!v) throw ParseError(path + ": unknown vertex '" + vid + "'");
    if (!row.is_object() || row.empty()) {
      throw ParseError(path + ": expected a non-empty object");
    }
    bool is_float = row.begin().value().is_object();
    ExactRow exact;
    FloatRow floats;
    for (const auto& [wid, val] : row.items()) {
      std::string epath = path + "." + wid;
      auto w = g.FindVertex(wid);
      if (!w) throw ParseError(epath + ": unknown vertex '" + wid + "'");
      if (val.is_object() != is_float) {
        throw ParseError(epath + ": row mixes exact and float entries");
      }
      if (!is_float) {
        exact[*w] = RationalField(val, epath);
        continue;
      }
      std::string m = String(Field(val, "m", epath), epath + ".m");
      std::string e = String(Field(val, "e", epath), epath + ".e");
      const Json& ell = Field(val, "ell", epath);
      if (!ell.is_number_integer()) {
        throw ParseError(epath + ".ell: expected an integer");
      }
      try {
        Integer mant(m, 10);
        size_t used = 0;
        long long ex = std::stoll(e, &used);
        if (used != e.size()) throw std::invalid_argument(e);
        floats[*w] = FloatL::Make(mant, ex, ell.get<int>());
      } catch (const Error& err) {
        throw ParseError(epath + ": " + err.what());
      } catch (const std::exception&) {
        throw ParseError(epath + ": malformed float triple");
      }
    }
    if (is_float) {
      profile.SetRow(*v, std::move(floats));
    } else {
      profile.SetRow(*v, std::move(exact));
    }
  }
  auto violations = ValidateProfile(g, profile, false);
  if (!violations.empty()) {
    throw ParseError("profile: " + violations.front());
  }
  return profile;
}

std::string SerializeProfile(const Game& g, const StationaryProfile& profile) {
  Json rows = Json::object();
  for (const auto& [v, row] : profile.rows()) {
    Json jr = Json::object();
    if (const auto* exact = std::get_if<ExactRow>(&row)) {
      for (const auto& [w, p] : *exact) jr[g.id(w)] = ToString(p);
    } else {
      for (const auto& [w, x] : std::get<FloatRow>(row)) {
        jr[g.id(w)] = {{"m", x.mantissa().get_str()},
                       {"e", std::to_string(x.exponent())},
                       {"ell", x.precision()}};
      }
    }
    rows[g.id(v)] = std::move(jr);
  }
  Json doc;
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

}  // namespace sgne
