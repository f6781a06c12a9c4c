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

#include "sgne/generators.hpp"

#include <map>
#include <set>
#include <sstream>

namespace sgne {

namespace {

enum GnPlayer { kCircle, kSquare, kTriangle, kDiamond, kPentagon };

std::string Id(std::string_view stem, int i) {
  return std::string(stem) + "_" + std::to_string(i);
}

std::string TerminalId(int i, int k) {
  return "t_" + std::to_string(i) + "_" + std::to_string(k);
}

// Row with the given probability on `hit` and the complement on `miss`;
// zero entries are left out.
void SetSplit(const Game& g, StationaryProfile* s, const std::string& v,
              const std::string& hit, const std::string& miss,
              const Rational& p) {
  ExactRow row;
  if (p != 0) row[g.VertexIndex(hit)] = p;
  if (p != 1) row[g.VertexIndex(miss)] = 1 - p;
  s->SetRow(g.VertexIndex(v), std::move(row));
}

void SetPure(const Game& g, StationaryProfile* s, const std::string& v,
             const std::string& w) {
  s->SetPure(g.VertexIndex(v), g.VertexIndex(w));
}

// The shared skeleton of both G^n profiles: r_i -> t_i with r[i], c_i uniform
// (beta_i = 1/2), f_i -> t_i_2 with f[i], j_i -> k_i with j[i], m_i -> t_i_4
// with m[i], everything else on the non-deviating path.
StationaryProfile GnProfile(int n, const std::vector<Rational>& r,
                            const std::vector<Rational>& f,
                            const std::vector<Rational>& j,
                            const std::vector<Rational>& m) {
  Game g = BuildGn(n);
  StationaryProfile s;
  for (int i = 1; i <= n; ++i) {
    SetSplit(g, &s, Id("r", i), Id("t", i), Id("t'", i), r[i]);
    SetPure(g, &s, Id("a", i), Id("b", i));
    SetPure(g, &s, Id("b", i), Id("c", i));
    SetSplit(g, &s, Id("c", i), Id("d", i), Id("g", i), Rational(1, 2));
    SetPure(g, &s, Id("d", i), Id("e", i));
    SetPure(g, &s, Id("e", i), Id("f", i));
    SetSplit(g, &s, Id("f", i), TerminalId(i, 2), TerminalId(i, 3), f[i]);
    SetPure(g, &s, Id("g", i), Id("h", i));
    SetPure(g, &s, Id("h", i), Id("j", i));
    SetSplit(g, &s, Id("j", i), Id("k", i), TerminalId(i, 6), j[i]);
    SetPure(g, &s, Id("k", i), Id("l", i));
    SetPure(g, &s, Id("l", i), Id("m", i));
    SetSplit(g, &s, Id("m", i), TerminalId(i, 4), TerminalId(i, 5), m[i]);
  }
  return s;
}

}  // namespace

Game BuildGn(int n) {
  if (n < 1) throw Error("G^n needs n >= 1");
  Game g;
  for (auto name : kGnPlayers) g.AddPlayer(std::string(name));
  const Rational nn(n);
  auto player = [](GnPlayer p) { return Owner::Player(p); };

  int s0 = g.AddVertex("s_0", Owner::Chance());
  g.SetInitial(s0);

  auto add_def = [&](int i) {
    int r = g.AddVertex(Id("r", i), i == 0 ? Owner::Chance()
                                           : player(kCircle));
    int t = g.AddVertex(Id("t", i), Owner::Terminal());
    int tp = g.AddVertex(Id("t'", i), Owner::Terminal());
    if (i == 0) {
      g.AddEdge(r, t, Rational(1, 2));
      g.AddEdge(r, tp, Rational(1, 2));
    } else {
      g.AddEdge(r, t);
      g.AddEdge(r, tp);
    }
    g.SetReward(t, kSquare, 1);
    g.SetReward(t, kTriangle, nn - i - 1);
    g.SetReward(t, kDiamond, 1);
    g.SetReward(tp, kTriangle, nn - i);
    g.SetReward(tp, kPentagon, 1);
  };

  add_def(0);
  for (int i = 1; i <= n; ++i) {
    add_def(i);
    const std::vector<std::pair<std::string, GnPlayer>> inner = {
        {"a", kTriangle}, {"b", kPentagon}, {"c", kDiamond},
        {"d", kSquare},   {"e", kTriangle}, {"f", kCircle},
        {"g", kSquare},   {"h", kTriangle}, {"j", kCircle},
        {"k", kDiamond},  {"l", kPentagon}, {"m", kCircle}};
    for (const auto& [stem, p] : inner) g.AddVertex(Id(stem, i), player(p));
    std::vector<int> t(7);
    for (int k = 0; k < 7; ++k) {
      t[k] = g.AddVertex(TerminalId(i, k), Owner::Terminal());
    }
    auto v = [&](const char* stem) { return g.VertexIndex(Id(stem, i)); };
    const int ri = g.VertexIndex(Id("r", i));
    const int rprev = g.VertexIndex(Id("r", i - 1));
    g.AddEdge(v("a"), v("b"));
    g.AddEdge(v("a"), t[0]);
    g.AddEdge(v("b"), v("c"));
    g.AddEdge(v("b"), t[1]);
    g.AddEdge(v("c"), v("d"));
    g.AddEdge(v("c"), v("g"));
    g.AddEdge(v("d"), ri);
    g.AddEdge(v("d"), v("e"));
    g.AddEdge(v("e"), ri);
    g.AddEdge(v("e"), v("f"));
    g.AddEdge(v("f"), t[2]);
    g.AddEdge(v("f"), t[3]);
    g.AddEdge(v("g"), v("h"));
    g.AddEdge(v("g"), rprev);
    g.AddEdge(v("h"), v("j"));
    g.AddEdge(v("h"), rprev);
    g.AddEdge(v("j"), v("k"));
    g.AddEdge(v("j"), t[6]);
    g.AddEdge(v("k"), v("l"));
    g.AddEdge(v("k"), rprev);
    g.AddEdge(v("l"), v("m"));
    g.AddEdge(v("l"), rprev);
    g.AddEdge(v("m"), t[4]);
    g.AddEdge(v("m"), t[5]);

    g.SetReward(t[0], kTriangle, nn - i + Rational(1, 8));
    g.SetReward(t[1], kPentagon, Rational(11, 8));
    g.SetReward(t[2], kCircle, 1);
    g.SetReward(t[2], kSquare, 1);
    g.SetReward(t[2], kTriangle, nn - i - 1);
    g.SetReward(t[2], kDiamond, 1);
    g.SetReward(t[2], kPentagon, 2);
    g.SetReward(t[3], kCircle, 1);
    g.SetReward(t[3], kTriangle, nn - i);
    g.SetReward(t[3], kPentagon, 2);
    g.SetReward(t[4], kCircle, 1);
    g.SetReward(t[4], kSquare, 1);
    g.SetReward(t[4], kTriangle, nn - i);
    g.SetReward(t[4], kDiamond, 1);
    g.SetReward(t[5], kCircle, 1);
    g.SetReward(t[5], kSquare, 1);
    g.SetReward(t[5], kTriangle, nn - i);
    g.SetReward(t[5], kPentagon, 1);
    g.SetReward(t[6], kCircle, 1);
    g.SetReward(t[6], kTriangle, nn - i + 1);
    g.SetReward(t[6], kPentagon, 1);
  }
  for (int i = 1; i <= n; ++i) {
    g.AddEdge(s0, g.VertexIndex(Id("a", i)), Rational(1, n));
  }
  return g;
}

Rational GnAlpha(int i) {
  if (i < 0 || i > 62) throw Error("alpha index out of range");
  return Pow2(-(int64_t{1} << i));
}

StationaryProfile GnExactNe(int n) {
  if (n < 1) throw Error("G^n needs n >= 1");
  std::vector<Rational> r(n + 1), f(n + 1), j(n + 1), m(n + 1);
  for (int i = 1; i <= n; ++i) {
    r[i] = f[i] = GnAlpha(i);
    j[i] = m[i] = GnAlpha(i - 1);
  }
  return GnProfile(n, r, f, j, m);
}

int GnCutoff(int n, const Rational& eps) {
  if (n < 1) throw Error("G^n needs n >= 1");
  if (eps <= 0) throw Error("epsilon must be positive");
  int cutoff = 0;
  while (Pow2(-((int64_t{1} << cutoff) + 1)) / n > eps) ++cutoff;
  return std::max(cutoff, 1);
}

Rational GnTheta(int i, int cutoff) {
  if (i == 0) return Rational(1, 2);
  return i < cutoff ? GnAlpha(i) : Rational(0);
}

StationaryProfile GnEpsilonNe(int n, const Rational& eps) {
  const int cutoff = GnCutoff(n, eps);
  std::vector<Rational> r(n + 1), f(n + 1), j(n + 1), m(n + 1);
  for (int i = 1; i <= n; ++i) {
    r[i] = f[i] = GnTheta(i, cutoff);
    j[i] = m[i] = GnTheta(i - 1, cutoff);
  }
  return GnProfile(n, r, f, j, m);
}

// ---- 3SAT ----

bool Satisfies(const CnfFormula& phi, const Valuation& nu) {
  for (const auto& clause : phi.clauses) {
    bool sat = false;
    for (const Literal& l : clause) {
      if (l.var < 1 || l.var > static_cast<int>(nu.size())) {
        throw Error("valuation does not cover variable " +
                    std::to_string(l.var));
      }
      sat = sat || nu[l.var - 1] == l.positive;
    }
    if (!sat) return false;
  }
  return true;
}

std::optional<Valuation> FindSatisfyingValuation(const CnfFormula& phi) {
  if (phi.num_vars > 24) throw Error("too many variables for exhaustive search");
  Valuation nu(phi.num_vars);
  for (uint64_t bits = 0; bits < (uint64_t{1} << phi.num_vars); ++bits) {
    for (int k = 0; k < phi.num_vars; ++k) nu[k] = (bits >> k) & 1;
    if (Satisfies(phi, nu)) return nu;
  }
  return std::nullopt;
}

CnfFormula ParseDimacs(std::string_view text) {
  CnfFormula phi;
  bool header = false;
  int declared_clauses = 0;
  std::vector<Literal> pending;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  auto fail = [&](const std::string& msg) -> void {
    throw ParseError("dimacs line " + std::to_string(line_no) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream ls(line);
    std::string first;
    if (!(ls >> first)) continue;
    if (first == "c") continue;
    if (first == "%") break;
    if (first == "p") {
      std::string fmt;
      if (header) fail("duplicate header");
      if (!(ls >> fmt >> phi.num_vars >> declared_clauses) || fmt != "cnf" ||
          phi.num_vars < 0 || declared_clauses < 0) {
        fail("malformed header, expected 'p cnf <vars> <clauses>'");
      }
      header = true;
      continue;
    }
    if (!header) fail("clause before the 'p cnf' header");
    ls.clear();
    ls.str(line);
    std::string tok;
    while (ls >> tok) {
      long long lit = 0;
      size_t used = 0;
      try {
        lit = std::stoll(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) fail("bad literal '" + tok + "'");
      const int clause_no = phi.num_clauses() + 1;
      if (lit == 0) {
        if (pending.size() != 3) {
          fail("clause " + std::to_string(clause_no) + " has " +
               std::to_string(pending.size()) + " literals, expected 3");
        }
        phi.clauses.push_back({pending[0], pending[1], pending[2]});
        pending.clear();
        continue;
      }
      long long var = lit < 0 ? -lit : lit;
      if (var > phi.num_vars) {
        fail("clause " + std::to_string(clause_no) + ": variable " +
             std::to_string(var) + " outside the declared range 1.." +
             std::to_string(phi.num_vars));
      }
      pending.push_back({static_cast<int>(var), lit > 0});
    }
  }
  if (!header) throw ParseError("dimacs: missing 'p cnf' header");
  if (!pending.empty()) {
    throw ParseError("dimacs: clause " + std::to_string(phi.num_clauses() + 1) +
                     " is not terminated by 0");
  }
  if (phi.num_clauses() != declared_clauses) {
    throw ParseError("dimacs: header declares " +
                     std::to_string(declared_clauses) + " clauses but " +
                     std::to_string(phi.num_clauses()) + " were given");
  }
  return phi;
}

std::string ToDimacs(const CnfFormula& phi) {
  std::ostringstream out;
  out << "p cnf " << phi.num_vars << " " << phi.num_clauses() << "\n";
  for (const auto& clause : phi.clauses) {
    for (const Literal& l : clause) out << (l.positive ? l.var : -l.var) << " ";
    out << "0\n";
  }
  return out.str();
}

std::string SatClauseId(int clause) { return "C" + std::to_string(clause); }

std::string SatLiteralId(int clause, int position) {
  return "C" + std::to_string(clause) + "." + std::to_string(position);
}

std::string SatVarName(int var) { return "x" + std::to_string(var); }

Game BuildSatGame(const CnfFormula& phi) {
  const int m = phi.num_clauses();
  if (m < 1) throw Error("formula has no clauses");
  for (const auto& clause : phi.clauses) {
    for (const Literal& l : clause) {
      if (l.var < 1 || l.var > phi.num_vars) {
        throw Error("literal variable " + std::to_string(l.var) +
                    " out of range");
      }
    }
  }
  Game g;
  const int solver = g.AddPlayer("Solver");
  for (int k = 1; k <= phi.num_vars; ++k) g.AddPlayer(SatVarName(k));
  auto var_player = [](int var) { return var; };  // Solver is player 0

  for (int i = 1; i <= m; ++i) {
    g.AddVertex(SatClauseId(i), Owner::Player(solver));
  }
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const Literal& l = phi.clauses[i - 1][j - 1];
      g.AddVertex(SatLiteralId(i, j), l.positive
                                          ? Owner::Chance()
                                          : Owner::Player(var_player(l.var)));
    }
  }
  std::set<int> positive_vars;
  for (const auto& clause : phi.clauses) {
    for (const Literal& l : clause) {
      if (l.positive) positive_vars.insert(l.var);
    }
  }
  std::map<int, int> t_var;
  for (int var : positive_vars) {
    t_var[var] = g.AddVertex("t_" + SatVarName(var), Owner::Terminal());
  }
  const int t_solver = g.AddVertex("t_S", Owner::Terminal());
  const int s = g.AddVertex("s", Owner::Chance());
  const int t = g.AddVertex("t", Owner::Terminal());
  g.SetInitial(g.VertexIndex(SatClauseId(1)));

  const Rational half(1, 2);
  for (int i = 1; i <= m; ++i) {
    const int c = g.VertexIndex(SatClauseId(i));
    const int next = i < m ? g.VertexIndex(SatClauseId(i + 1)) : s;
    for (int j = 1; j <= 3; ++j) {
      const int lv = g.VertexIndex(SatLiteralId(i, j));
      const Literal& l = phi.clauses[i - 1][j - 1];
      g.AddEdge(c, lv);
      if (l.positive) {
        g.AddEdge(lv, t_var[l.var], half);
        g.AddEdge(lv, next, half);
      } else {
        g.AddEdge(lv, t_solver);
        g.AddEdge(lv, next);
      }
    }
  }
  g.AddEdge(s, g.VertexIndex(SatClauseId(1)), half);
  g.AddEdge(s, t, half);

  for (int p = 0; p < g.num_players(); ++p) {
    for (const auto& [var, tv] : t_var) {
      g.SetReward(tv, p, p == var_player(var) ? 0 : 1);
    }
    g.SetReward(t_solver, p, p == solver ? 0 : 1);
    g.SetReward(t, p, 1);
  }
  return g;
}

StationaryProfile SatNeFromValuation(const CnfFormula& phi,
                                     const Valuation& nu) {
  if (static_cast<int>(nu.size()) != phi.num_vars) {
    throw Error("valuation size does not match the variable count");
  }
  if (!Satisfies(phi, nu)) throw Error("valuation does not satisfy the formula");
  Game g = BuildSatGame(phi);
  const int m = phi.num_clauses();
  StationaryProfile s;
  std::set<int> used_positive;
  for (int i = 1; i <= m; ++i) {
    for (int j = 1; j <= 3; ++j) {
      const Literal& l = phi.clauses[i - 1][j - 1];
      if (nu[l.var - 1] == l.positive) {
        s.SetPure(g.VertexIndex(SatClauseId(i)),
                  g.VertexIndex(SatLiteralId(i, j)));
        if (l.positive) used_positive.insert(l.var);
        break;
      }
    }
  }
  const int t_solver = g.VertexIndex("t_S");
  for (int i = 1; i <= m; ++i) {
    const int next = i < m ? g.VertexIndex(SatClauseId(i + 1))
                           : g.VertexIndex("s");
    for (int j = 1; j <= 3; ++j) {
      const Literal& l = phi.clauses[i - 1][j - 1];
      if (l.positive) continue;
      const int v = g.VertexIndex(SatLiteralId(i, j));
      bool exit = nu[l.var - 1] && used_positive.count(l.var);
      s.SetPure(v, exit ? t_solver : next);
    }
  }
  return s;
}

Rational SatEpsilon(const CnfFormula& phi) {
  return Pow2(-3 * static_cast<int64_t>(phi.num_clauses()));
}

}  // namespace sgne
