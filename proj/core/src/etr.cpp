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

#include "sgne/etr.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <set>
#include <sstream>

#include "sgne/evaluate.hpp"

namespace sgne {

// ---- Polynomial ----

Polynomial Polynomial::Constant(const Rational& c) {
  Polynomial p;
  p.Add({-1, -1}, c);
  return p;
}

Polynomial Polynomial::Var(int index) {
  Polynomial p;
  p.Add({index, -1}, Rational(1));
  return p;
}

int Polynomial::Degree() const {
  int d = 0;
  for (const auto& [m, c] : terms_) {
    d = std::max(d, (m.first >= 0) + (m.second >= 0));
  }
  return d;
}

void Polynomial::Add(Monomial m, const Rational& c) {
  if (c == 0) return;
  auto [it, inserted] = terms_.emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

Polynomial& Polynomial::operator+=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) Add(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& o) {
  for (const auto& [m, c] : o.terms_) Add(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Rational& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, v] : terms_) v *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  Polynomial out;
  for (const auto& [ma, ca] : a.terms_) {
    for (const auto& [mb, cb] : b.terms_) {
      std::vector<int> vars;
      for (int v : {ma.first, ma.second, mb.first, mb.second}) {
        if (v >= 0) vars.push_back(v);
      }
      if (vars.size() > 2) throw Error("polynomial of degree > 2");
      std::sort(vars.begin(), vars.end());
      Monomial m{-1, -1};
      if (!vars.empty()) m.first = vars[0];
      if (vars.size() == 2) m.second = vars[1];
      out.Add(m, ca * cb);
    }
  }
  return out;
}

Rational Polynomial::Evaluate(const std::vector<Rational>& x) const {
  Rational sum = 0;
  for (const auto& [m, c] : terms_) {
    Rational t = c;
    if (m.first >= 0) t *= x.at(m.first);
    if (m.second >= 0) t *= x.at(m.second);
    sum += t;
  }
  return sum;
}

bool EtrConstraint::Holds(const std::vector<Rational>& x) const {
  Rational d = lhs.Evaluate(x) - rhs.Evaluate(x);
  switch (op) {
    case Relop::kEq: return d == 0;
    case Relop::kGt: return d > 0;
    case Relop::kGe: return d >= 0;
    case Relop::kLe: return d <= 0;
  }
  return false;
}

int EtrSystem::VariableIndex(std::string_view name) const {
  for (size_t i = 0; i < variables.size(); ++i) {
    if (variables[i] == name) return static_cast<int>(i);
  }
  return -1;
}

// ---- Building ----

std::string PVarName(const Game& g, int v, int w) {
  return "p[" + g.id(v) + "," + g.id(w) + "]";
}

std::string RVarName(const Game& g, int player, int v) {
  return "r[" + g.player_name(player) + "," + g.id(v) + "]";
}

std::string GVarName(const Game& g, int v, int w) {
  return "g[" + g.id(v) + "," + g.id(w) + "]";
}

namespace {

class Builder {
 public:
  explicit Builder(EtrSystem* sys) : sys_(sys) {}

  int Declare(std::string name) {
    int idx = static_cast<int>(sys_->variables.size());
    index_.emplace(name, idx);
    sys_->variables.push_back(std::move(name));
    return idx;
  }
  Polynomial V(const std::string& name) const {
    return Polynomial::Var(index_.at(name));
  }
  void Add(int tag, std::string where, Polynomial lhs, Relop op,
           Polynomial rhs) {
    sys_->constraints.push_back(
        {tag, std::move(where), std::move(lhs), op, std::move(rhs)});
  }

 private:
  EtrSystem* sys_;
  std::map<std::string, int> index_;
};

std::string EdgeLabel(const Game& g, int v, int w) {
  return g.id(v) + " -> " + g.id(w);
}

}  // namespace

EtrSystem BuildEtr(const Game& g, const Thresholds& bounds,
                   const Support& support) {
  RequireValidGame(g);
  if (bounds.lower.size() != static_cast<size_t>(g.num_players()) ||
      bounds.upper.size() != static_cast<size_t>(g.num_players())) {
    throw Error("thresholds must cover every player");
  }
  const int n = g.num_vertices();
  std::vector<std::set<int>> in_s(n);
  for (const auto& [v, succ] : support) {
    if (v < 0 || v >= n || g.Controller(v) < 0) {
      throw Error("support names a vertex that is not a player vertex");
    }
    for (int w : succ) {
      if (!g.HasEdge(v, w)) {
        throw Error("support edge " + g.id(v) + " -> " +
                    (w >= 0 && w < n ? g.id(w) : std::string("?")) +
                    " is not an edge");
      }
      in_s[v].insert(w);
    }
  }
  for (int v : g.ControlledVertices()) {
    if (in_s[v].empty()) {
      throw Error("support is empty at controlled vertex '" + g.id(v) + "'");
    }
  }
  for (int v = 0; v < n; ++v) {
    if (!g.IsChance(v)) continue;
    for (const Edge& e : g.out(v)) {
      if (e.prob && *e.prob > 0) in_s[v].insert(e.to);
    }
  }

  // V_S(S): backward closure of T over S.
  std::vector<std::vector<int>> pred(n);
  for (int v = 0; v < n; ++v) {
    for (int w : in_s[v]) pred[w].push_back(v);
  }
  std::vector<bool> vs(n, false);
  std::deque<int> queue;
  for (int t : g.Terminals()) {
    vs[t] = true;
    queue.push_back(t);
  }
  while (!queue.empty()) {
    int w = queue.front();
    queue.pop_front();
    for (int v : pred[w]) {
      if (!vs[v]) {
        vs[v] = true;
        queue.push_back(v);
      }
    }
  }

  EtrSystem sys;
  Builder b(&sys);
  for (int v = 0; v < n; ++v) {
    for (const Edge& e : g.out(v)) b.Declare(PVarName(g, v, e.to));
  }
  for (int i = 0; i < g.num_players(); ++i) {
    for (int v = 0; v < n; ++v) b.Declare(RVarName(g, i, v));
  }
  for (int v = 0; v < n; ++v) {
    for (const Edge& e : g.out(v)) {
      if (in_s[v].count(e.to)) b.Declare(GVarName(g, v, e.to));
    }
  }

  const Polynomial zero, one = Polynomial::Constant(1);
  auto for_edges = [&](auto&& f) {
    for (int v = 0; v < n; ++v) {
      for (const Edge& e : g.out(v)) f(v, e);
    }
  };
  for_edges([&](int v, const Edge& e) {
    if (in_s[v].count(e.to)) {
      b.Add(1, EdgeLabel(g, v, e.to), b.V(PVarName(g, v, e.to)), Relop::kGt,
            zero);
    }
  });
  for_edges([&](int v, const Edge& e) {
    if (in_s[v].count(e.to)) {
      b.Add(2, EdgeLabel(g, v, e.to), b.V(PVarName(g, v, e.to)), Relop::kLe,
            one);
    }
  });
  for_edges([&](int v, const Edge& e) {
    if (!in_s[v].count(e.to)) {
      b.Add(3, EdgeLabel(g, v, e.to), b.V(PVarName(g, v, e.to)), Relop::kEq,
            zero);
    }
  });
  for (int v : g.ControlledVertices()) {
    Polynomial sum;
    for (const Edge& e : g.out(v)) sum += b.V(PVarName(g, v, e.to));
    b.Add(4, g.id(v), sum, Relop::kEq, one);
  }
  for_edges([&](int v, const Edge& e) {
    if (g.IsChance(v)) {
      b.Add(5, EdgeLabel(g, v, e.to), b.V(PVarName(g, v, e.to)), Relop::kEq,
            Polynomial::Constant(e.prob ? *e.prob : Rational(0)));
    }
  });
  for (int i = 0; i < g.num_players(); ++i) {
    for (int t : g.Terminals()) {
      b.Add(6, g.player_name(i) + ", " + g.id(t), b.V(RVarName(g, i, t)),
            Relop::kEq, Polynomial::Constant(g.Reward(t, i)));
    }
  }
  for (int i = 0; i < g.num_players(); ++i) {
    for (int v = 0; v < n; ++v) {
      if (!vs[v]) {
        b.Add(7, g.player_name(i) + ", " + g.id(v), b.V(RVarName(g, i, v)),
              Relop::kEq, zero);
      }
    }
  }
  for (int i = 0; i < g.num_players(); ++i) {
    for (int v = 0; v < n; ++v) {
      if (!vs[v] || g.IsTerminal(v)) continue;
      Polynomial sum;
      for (const Edge& e : g.out(v)) {
        sum += b.V(PVarName(g, v, e.to)) * b.V(RVarName(g, i, e.to));
      }
      b.Add(8, g.player_name(i) + ", " + g.id(v), b.V(RVarName(g, i, v)),
            Relop::kEq, sum);
    }
  }
  for (int v = 0; v < n; ++v) {
    int i = g.Controller(v);
    if (i < 0) continue;
    for (const Edge& e : g.out(v)) {
      b.Add(9, g.player_name(i) + ", " + EdgeLabel(g, v, e.to),
            b.V(RVarName(g, i, v)), Relop::kGe, b.V(RVarName(g, i, e.to)));
    }
  }
  for_edges([&](int v, const Edge& e) {
    if (in_s[v].count(e.to)) {
      b.Add(10, EdgeLabel(g, v, e.to),
            b.V(GVarName(g, v, e.to)) * b.V(PVarName(g, v, e.to)), Relop::kEq,
            one);
    }
  });
  for (int i = 0; i < g.num_players(); ++i) {
    Polynomial r0 = b.V(RVarName(g, i, g.initial()));
    b.Add(0, g.player_name(i) + " lower", r0, Relop::kGe,
          Polynomial::Constant(bounds.lower[i]));
    b.Add(0, g.player_name(i) + " upper", r0, Relop::kLe,
          Polynomial::Constant(bounds.upper[i]));
  }
  return sys;
}

Support ProfileSupport(const Game& g, const StationaryProfile& profile) {
  RequireFullProfile(g, profile);
  Support s;
  for (int v : g.ControlledVertices()) {
    auto dist = profile.Distribution(v);
    for (const Edge& e : g.out(v)) {
      auto it = dist.find(e.to);
      if (it != dist.end() && it->second > 0) s[v].push_back(e.to);
    }
  }
  return s;
}

std::vector<Rational> InducedAssignment(const Game& g,
                                        const StationaryProfile& profile,
                                        const EtrSystem& sys) {
  ValueVector values = ExpectedPayoffs(g, profile);
  std::map<std::string, Rational> known;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.IsTerminal(v)) continue;
    std::map<int, Rational> dist;
    if (g.IsChance(v)) {
      for (const Edge& e : g.out(v)) dist[e.to] = e.prob ? *e.prob : Rational(0);
    } else {
      dist = profile.Distribution(v);
    }
    for (const Edge& e : g.out(v)) {
      Rational p = dist.count(e.to) ? dist[e.to] : Rational(0);
      known[PVarName(g, v, e.to)] = p;
      known[GVarName(g, v, e.to)] = p == 0 ? Rational(0) : Rational(1 / p);
    }
  }
  for (int i = 0; i < g.num_players(); ++i) {
    for (int v = 0; v < g.num_vertices(); ++v) {
      known[RVarName(g, i, v)] = values.r[i][v];
    }
  }
  std::vector<Rational> x;
  x.reserve(sys.variables.size());
  for (const auto& name : sys.variables) {
    auto it = known.find(name);
    if (it == known.end()) throw Error("no induced value for " + name);
    x.push_back(it->second);
  }
  return x;
}

std::vector<ConstraintViolation> CheckAssignment(
    const EtrSystem& sys, const std::vector<Rational>& x) {
  if (x.size() != sys.variables.size()) {
    throw Error("assignment size does not match the variable count");
  }
  std::vector<ConstraintViolation> out;
  for (const auto& c : sys.constraints) {
    if (!c.Holds(x)) out.push_back({c.tag, c.where});
  }
  return out;
}

std::vector<ConstraintViolation> CheckAssignment(
    const EtrSystem& sys, const std::map<std::string, Rational>& assignment) {
  std::vector<Rational> x;
  for (const auto& name : sys.variables) {
    auto it = assignment.find(name);
    if (it == assignment.end()) {
      throw Error("assignment has no value for variable " + name);
    }
    x.push_back(it->second);
  }
  return CheckAssignment(sys, x);
}

// ---- SMT-LIB ----

namespace {

std::string Symbol(const std::string& name) {
  if (name.find_first_of("|\\") != std::string::npos) {
    throw Error("variable name cannot be quoted in SMT-LIB: " + name);
  }
  return "|" + name + "|";
}

std::string Constant(const Rational& c) {
  Rational a = Abs(c);
  std::string s = a.get_den() == 1
                      ? a.get_num().get_str()
                      : "(/ " + a.get_num().get_str() + " " +
                            a.get_den().get_str() + ")";
  return c < 0 ? "(- " + s + ")" : s;
}

std::string Expr(const Polynomial& p, const std::vector<std::string>& names) {
  std::vector<std::string> terms;
  for (const auto& [m, c] : p.terms()) {
    std::vector<std::string> factors;
    if (m.first < 0) {
      terms.push_back(Constant(c));
      continue;
    }
    if (c != 1) factors.push_back(Constant(c));
    factors.push_back(Symbol(names[m.first]));
    if (m.second >= 0) factors.push_back(Symbol(names[m.second]));
    if (factors.size() == 1) {
      terms.push_back(factors[0]);
    } else {
      std::string t = "(*";
      for (const auto& f : factors) t += " " + f;
      terms.push_back(t + ")");
    }
  }
  if (terms.empty()) return "0";
  if (terms.size() == 1) return terms[0];
  std::string s = "(+";
  for (const auto& t : terms) s += " " + t;
  return s + ")";
}

const char* OpName(Relop op) {
  switch (op) {
    case Relop::kEq: return "=";
    case Relop::kGt: return ">";
    case Relop::kGe: return ">=";
    case Relop::kLe: return "<=";
  }
  return "=";
}

struct SExpr {
  bool is_list = false;
  std::string atom;
  bool quoted = false;
  std::vector<SExpr> items;
};

class SmtReader {
 public:
  explicit SmtReader(std::string_view text) : text_(text) {}

  // Next top-level item; comments are reported through `comment`.
  bool Next(SExpr* out, std::string* comment) {
    comment->clear();
    for (;;) {
      SkipSpace();
      if (pos_ >= text_.size()) return false;
      if (text_[pos_] == ';') {
        size_t end = text_.find('\n', pos_);
        if (end == std::string_view::npos) end = text_.size();
        *comment = std::string(text_.substr(pos_, end - pos_));
        pos_ = end;
        continue;
      }
      *out = Parse();
      return true;
    }
  }

  int line() const {
    return 1 + static_cast<int>(
                   std::count(text_.begin(), text_.begin() + pos_, '\n'));
  }

 private:
  void SkipSpace() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  SExpr Parse() {
    SkipSpace();
    if (pos_ >= text_.size()) Fail("unexpected end of input");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      SExpr list;
      list.is_list = true;
      for (;;) {
        SkipSpace();
        while (pos_ < text_.size() && text_[pos_] == ';') {
          while (pos_ < text_.size() && text_[pos_] != '\n') ++pos_;
          SkipSpace();
        }
        if (pos_ >= text_.size()) Fail("unbalanced parenthesis");
        if (text_[pos_] == ')') {
          ++pos_;
          return list;
        }
        list.items.push_back(Parse());
      }
    }
    if (c == ')') Fail("unexpected ')'");
    SExpr atom;
    if (c == '|') {
      size_t end = text_.find('|', pos_ + 1);
      if (end == std::string_view::npos) Fail("unterminated quoted symbol");
      atom.atom = std::string(text_.substr(pos_ + 1, end - pos_ - 1));
      atom.quoted = true;
      pos_ = end + 1;
      return atom;
    }
    size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           text_[pos_] != ';' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    atom.atom = std::string(text_.substr(start, pos_ - start));
    return atom;
  }

  [[noreturn]] void Fail(const std::string& msg) const {
    throw ParseError("smt-lib line " + std::to_string(line()) + ": " + msg);
  }

  std::string_view text_;
  size_t pos_ = 0;
};

std::optional<Rational> Numeral(const std::string& s) {
  if (s.empty() || !std::isdigit(static_cast<unsigned char>(s[0]))) {
    return std::nullopt;
  }
  size_t dot = s.find('.');
  std::string digits = s;
  Integer den = 1;
  if (dot != std::string::npos) {
    digits = s.substr(0, dot) + s.substr(dot + 1);
    for (size_t i = dot + 1; i < s.size(); ++i) den *= 10;
  }
  if (digits.empty() ||
      !std::all_of(digits.begin(), digits.end(),
                   [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
    return std::nullopt;
  }
  Rational q(Integer(digits, 10), den);
  q.canonicalize();
  return q;
}

Polynomial ToPolynomial(const SExpr& e,
                        const std::map<std::string, int>& vars) {
  if (!e.is_list) {
    if (!e.quoted) {
      if (auto q = Numeral(e.atom)) return Polynomial::Constant(*q);
    }
    auto it = vars.find(e.atom);
    if (it == vars.end()) {
      throw ParseError("smt-lib: undeclared symbol '" + e.atom + "'");
    }
    return Polynomial::Var(it->second);
  }
  if (e.items.empty() || e.items[0].is_list) {
    throw ParseError("smt-lib: malformed term");
  }
  const std::string& op = e.items[0].atom;
  std::vector<Polynomial> args;
  for (size_t i = 1; i < e.items.size(); ++i) {
    args.push_back(ToPolynomial(e.items[i], vars));
  }
  if (args.empty()) throw ParseError("smt-lib: operator without arguments");
  if (op == "+") {
    Polynomial s;
    for (const auto& a : args) s += a;
    return s;
  }
  if (op == "-") {
    if (args.size() == 1) return args[0] * Rational(-1);
    Polynomial s = args[0];
    for (size_t i = 1; i < args.size(); ++i) s -= args[i];
    return s;
  }
  if (op == "*") {
    Polynomial s = args[0];
    for (size_t i = 1; i < args.size(); ++i) s = s * args[i];
    return s;
  }
  if (op == "/") {
    Polynomial s = args[0];
    for (size_t i = 1; i < args.size(); ++i) {
      if (args[i].Degree() != 0 || args[i].IsZero()) {
        throw ParseError("smt-lib: division by a non-constant or zero term");
      }
      s *= Rational(1 / args[i].terms().begin()->second);
    }
    return s;
  }
  throw ParseError("smt-lib: unsupported operator '" + op + "'");
}

}  // namespace

std::string EmitSmtlib(const EtrSystem& sys) {
  std::ostringstream out;
  out << "(set-logic QF_NRA)\n";
  for (const auto& name : sys.variables) {
    out << "(declare-fun " << Symbol(name) << " () Real)\n";
  }
  for (const auto& c : sys.constraints) {
    if (c.tag == 0) {
      out << "; threshold\n";
    } else {
      out << "; paper-constraint " << c.tag << "\n";
    }
    out << "(assert (" << OpName(c.op) << " " << Expr(c.lhs, sys.variables)
        << " " << Expr(c.rhs, sys.variables) << "))\n";
  }
  out << "(check-sat)\n";
  return out.str();
}

EtrSystem ParseSmtlib(std::string_view text) {
  EtrSystem sys;
  std::map<std::string, int> vars;
  SmtReader reader(text);
  SExpr e;
  std::string comment, pending;
  while (reader.Next(&e, &comment)) {
    if (!e.is_list || e.items.empty() || e.items[0].is_list) {
      throw ParseError("smt-lib line " + std::to_string(reader.line()) +
                       ": expected a command");
    }
    const std::string& cmd = e.items[0].atom;
    if (cmd == "declare-fun" || cmd == "declare-const") {
      bool fun = cmd == "declare-fun";
      size_t want = fun ? 4 : 3;
      if (e.items.size() != want || e.items[1].is_list ||
          (fun && (!e.items[2].is_list || !e.items[2].items.empty())) ||
          e.items.back().is_list || e.items.back().atom != "Real") {
        throw ParseError("smt-lib: only nullary Real declarations are supported");
      }
      const std::string& name = e.items[1].atom;
      if (vars.count(name)) {
        throw ParseError("smt-lib: duplicate declaration of '" + name + "'");
      }
      vars[name] = static_cast<int>(sys.variables.size());
      sys.variables.push_back(name);
    } else if (cmd == "assert") {
      if (e.items.size() != 2 || !e.items[1].is_list ||
          e.items[1].items.size() != 3 || e.items[1].items[0].is_list) {
        throw ParseError("smt-lib: assertions must be binary relations");
      }
      const auto& rel = e.items[1].items;
      Polynomial lhs = ToPolynomial(rel[1], vars);
      Polynomial rhs = ToPolynomial(rel[2], vars);
      EtrConstraint c;
      const std::string& op = rel[0].atom;
      if (op == "=") {
        c.op = Relop::kEq;
      } else if (op == ">") {
        c.op = Relop::kGt;
      } else if (op == ">=") {
        c.op = Relop::kGe;
      } else if (op == "<=") {
        c.op = Relop::kLe;
      } else if (op == "<") {
        c.op = Relop::kGt;
        std::swap(lhs, rhs);
      } else {
        throw ParseError("smt-lib: unsupported relation '" + op + "'");
      }
      c.lhs = std::move(lhs);
      c.rhs = std::move(rhs);
      c.tag = 0;
      const std::string prefix = "; paper-constraint ";
      if (comment.rfind(prefix, 0) == 0) {
        try {
          c.tag = std::stoi(comment.substr(prefix.size()));
        } catch (const std::exception&) {
          c.tag = 0;
        }
      }
      sys.constraints.push_back(std::move(c));
    } else if (cmd == "set-logic" || cmd == "set-info" ||
               cmd == "set-option" || cmd == "check-sat" ||
               cmd == "get-model" || cmd == "exit") {
      continue;
    } else {
      throw ParseError("smt-lib: unsupported command '" + cmd + "'");
    }
  }
  return sys;
}

// ---- Supports ----

namespace {

// Nonempty subsets of {0..d-1} as sorted position lists, in lexicographic
// order.
std::vector<std::vector<int>> SubsetsLex(int d) {
  std::vector<std::vector<int>> all;
  for (int mask = 1; mask < (1 << d); ++mask) {
    std::vector<int> s;
    for (int k = 0; k < d; ++k) {
      if (mask & (1 << k)) s.push_back(k);
    }
    all.push_back(std::move(s));
  }
  std::sort(all.begin(), all.end());
  return all;
}

}  // namespace

Integer CountSupports(const Game& g) {
  Integer count = 1;
  for (int v : g.ControlledVertices()) {
    Integer options;
    mpz_ui_pow_ui(options.get_mpz_t(), 2, g.out(v).size());
    count *= options - 1;
  }
  return count;
}

void ForEachSupport(const Game& g,
                    const std::function<bool(const Support&)>& visit) {
  const std::vector<int> ctrl = g.ControlledVertices();
  const int k = static_cast<int>(ctrl.size());
  for (int v : ctrl) {
    if (g.out(v).size() > 20) throw Error("out-degree too large to enumerate");
  }
  std::vector<std::vector<std::vector<int>>> options(k);
  std::vector<int> suffix_max(k + 1, 0);
  for (int j = k - 1; j >= 0; --j) {
    int d = static_cast<int>(g.out(ctrl[j]).size());
    options[j] = SubsetsLex(d);
    suffix_max[j] = suffix_max[j + 1] + d;
  }
  Support current;
  bool stop = false;
  std::function<void(int, int)> rec = [&](int j, int left) {
    if (stop) return;
    if (j == k) {
      if (left == 0 && !visit(current)) stop = true;
      return;
    }
    int remaining_min = k - j - 1;
    int remaining_max = suffix_max[j + 1];
    const auto& out = g.out(ctrl[j]);
    for (const auto& subset : options[j]) {
      int s = static_cast<int>(subset.size());
      if (left - s < remaining_min || left - s > remaining_max) continue;
      std::vector<int> succ;
      for (int pos : subset) succ.push_back(out[pos].to);
      current[ctrl[j]] = std::move(succ);
      rec(j + 1, left - s);
      if (stop) return;
    }
    current.erase(ctrl[j]);
  };
  for (int total = k; total <= suffix_max[0] && !stop; ++total) {
    rec(0, total);
  }
}

std::optional<Support> NthSupport(const Game& g, const Integer& index) {
  if (index < 0) return std::nullopt;
  Integer seen = 0;
  std::optional<Support> found;
  ForEachSupport(g, [&](const Support& s) {
    if (seen == index) {
      found = s;
      return false;
    }
    ++seen;
    return true;
  });
  return found;
}

}  // namespace sgne
