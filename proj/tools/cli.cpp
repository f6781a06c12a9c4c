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

#include "cli.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "sgne/etr.hpp"
#include "sgne/evaluate.hpp"
#include "sgne/fpnum.hpp"
#include "sgne/generators.hpp"
#include "sgne/model.hpp"
#include "sgne/search.hpp"
#include "sgne/verify.hpp"

namespace sgne::cli {

namespace {

using Json = nlohmann::ordered_json;

// Input problems that map to the usage exit code.
class UsageError : public Error {
 public:
  using Error::Error;
};

std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void Emit(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write file '" + path + "'");
  f << text;
}

Game LoadGame(const std::string& path) {
  try {
    return ParseGame(ReadFile(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

StationaryProfile LoadProfile(const Game& g, const std::string& path) {
  try {
    return ParseProfile(g, ReadFile(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

Rational ParseFlagRational(const std::string& flag, const std::string& text) {
  try {
    return ParseRationalOrDyadic(text);
  } catch (const ParseError& e) {
    throw UsageError("flag " + flag + ": " + e.what());
  }
}

// "name=p/q" pairs over the default vacuous interval.
Thresholds ParseBounds(const Game& g, const std::vector<std::string>& lower,
                       const std::vector<std::string>& upper) {
  Thresholds t = Thresholds::Vacuous(g);
  auto apply = [&](const std::vector<std::string>& items, const char* flag,
                   std::vector<Rational>* target) {
    for (const auto& item : items) {
      auto eq = item.find('=');
      if (eq == std::string::npos) {
        throw UsageError(std::string("flag ") + flag +
                         ": expected name=p/q, got '" + item + "'");
      }
      auto p = g.FindPlayer(item.substr(0, eq));
      if (!p) {
        throw UsageError(std::string("flag ") + flag + ": unknown player '" +
                         item.substr(0, eq) + "'");
      }
      (*target)[*p] = ParseFlagRational(flag, item.substr(eq + 1));
    }
  };
  apply(lower, "--lower", &t.lower);
  apply(upper, "--upper", &t.upper);
  return t;
}

Json Number(const Rational& q) {
  return {{"exact", ToString(q)}, {"decimal", ToDecimal(q)}};
}

std::string Cell(const Rational& q) {
  return ToString(q) + " (" + ToDecimal(q) + ")";
}

// Left-aligned text table.
std::string Table(const std::vector<std::vector<std::string>>& rows) {
  std::vector<size_t> width;
  for (const auto& r : rows) {
    width.resize(std::max(width.size(), r.size()), 0);
    for (size_t c = 0; c < r.size(); ++c) {
      width[c] = std::max(width[c], r[c].size());
    }
  }
  std::string out;
  for (const auto& r : rows) {
    std::string line;
    for (size_t c = 0; c < r.size(); ++c) {
      line += r[c];
      if (c + 1 < r.size()) line += std::string(width[c] - r[c].size() + 2, ' ');
    }
    out += line + "\n";
  }
  return out;
}

std::string ReportText(const VerificationReport& r) {
  std::vector<std::vector<std::string>> rows = {
      {"player", "payoff", "best response", "margin", "constraint"}};
  for (const auto& p : r.players) {
    rows.push_back({p.player, Cell(p.payoff), Cell(p.best_response),
                    Cell(p.margin), p.constraint_ok ? "ok" : "violated"});
  }
  std::string out = Table(rows);
  out += "epsilon: " + Cell(r.epsilon) + "\n";
  out += std::string("is_ne: ") + (r.is_ne ? "true" : "false") + "\n";
  out += std::string("constraints_ok: ") + (r.constraints_ok ? "true" : "false") +
         "\n";
  if (r.promise_mode) out += "mode: promise\n";
  out += std::string("accepted: ") + (r.accepted ? "true" : "false") + "\n";
  return out;
}

Valuation ParseValuation(const std::string& text, int num_vars) {
  Valuation nu;
  for (char c : text) {
    if (c == '0' || c == '1') {
      nu.push_back(c == '1');
    } else if (c != ',' && c != ' ') {
      throw UsageError("flag --valuation: expected 0/1 digits");
    }
  }
  if (static_cast<int>(nu.size()) != num_vars) {
    throw UsageError("flag --valuation: expected " + std::to_string(num_vars) +
                     " digits");
  }
  return nu;
}

CnfFormula LoadCnf(const std::string& path) {
  try {
    return ParseDimacs(ReadFile(path));
  } catch (const ParseError& e) {
    throw UsageError(path + ": " + e.what());
  }
}

struct Options {
  bool json = false;
  std::string game, profile, out, player, cnf, valuation, mode = "pure-enumeration";
  std::string family, kind, smt, model;
  std::string epsilon = "0/1";
  std::vector<std::string> lower, upper, candidates;
  int n = 0;
  int ell = 0;
  int64_t budget = 10000;
  uint64_t seed = 0;
  std::string support_index;
  bool count_supports = false;
  bool promise = false;
  bool iterative = false;
};

int Generate(const Options& o, std::ostream& out) {
  Game g;
  if (o.family == "gn") {
    if (o.n < 1) throw UsageError("flag --n: must be >= 1");
    g = BuildGn(o.n);
  } else if (o.family == "sat") {
    if (o.cnf.empty()) throw UsageError("generate sat needs --cnf");
    g = BuildSatGame(LoadCnf(o.cnf));
  } else {
    throw UsageError("unknown family '" + o.family + "' (gn, sat)");
  }
  Emit(o.out, SerializeGame(g), out);
  return kPositive;
}

int Ne(const Options& o, std::ostream& out) {
  Game g;
  StationaryProfile s;
  if (o.kind == "gn-exact" || o.kind == "gn-epsilon") {
    if (o.n < 1) throw UsageError("flag --n: must be >= 1");
    g = BuildGn(o.n);
    if (o.kind == "gn-exact") {
      s = GnExactNe(o.n);
    } else {
      Rational eps = ParseFlagRational("--epsilon", o.epsilon);
      if (eps <= 0) throw UsageError("flag --epsilon: must be positive");
      s = GnEpsilonNe(o.n, eps);
    }
  } else if (o.kind == "sat") {
    if (o.cnf.empty()) throw UsageError("ne sat needs --cnf");
    CnfFormula phi = LoadCnf(o.cnf);
    g = BuildSatGame(phi);
    std::optional<Valuation> nu;
    if (!o.valuation.empty()) {
      nu = ParseValuation(o.valuation, phi.num_vars);
    } else {
      nu = FindSatisfyingValuation(phi);
      if (!nu) throw UsageError(o.cnf + ": formula is not satisfiable");
    }
    try {
      s = SatNeFromValuation(phi, *nu);
    } catch (const Error& e) {
      throw UsageError(std::string("flag --valuation: ") + e.what());
    }
  } else {
    throw UsageError("unknown profile kind '" + o.kind +
                     "' (gn-exact, gn-epsilon, sat)");
  }
  Emit(o.out, SerializeProfile(g, s), out);
  return kPositive;
}

int Evaluate(const Options& o, std::ostream& out) {
  Game g = LoadGame(o.game);
  StationaryProfile s = LoadProfile(g, o.profile);
  ValueVector v = ExpectedPayoffs(g, s);
  if (o.json) {
    Json rows = Json::array();
    for (int i = 0; i < g.num_players(); ++i) {
      rows.push_back({{"player", g.player_name(i)}, {"payoff", Number(v.payoff[i])}});
    }
    out << Json{{"players", rows}}.dump(2) << "\n";
  } else {
    std::vector<std::vector<std::string>> rows = {{"player", "payoff"}};
    for (int i = 0; i < g.num_players(); ++i) {
      rows.push_back({g.player_name(i), Cell(v.payoff[i])});
    }
    out << Table(rows);
  }
  return kPositive;
}

int BestResponseCmd(const Options& o, std::ostream& out) {
  Game g = LoadGame(o.game);
  StationaryProfile s = LoadProfile(g, o.profile);
  auto p = g.FindPlayer(o.player);
  if (!p) throw UsageError("flag --player: unknown player '" + o.player + "'");
  for (int v : g.ControlledVertices()) {
    if (g.Controller(v) != *p && !s.HasRow(v)) {
      throw UsageError("profile has no row for '" + g.id(v) + "'");
    }
  }
  BestResponse br = MdpBestResponse(g, s, *p);
  if (o.json) {
    Json strategy = Json::object();
    for (const auto& [v, w] : br.strategy) strategy[g.id(v)] = g.id(w);
    out << Json{{"player", o.player},
                {"value", Number(br.value)},
                {"strategy", strategy}}
               .dump(2)
        << "\n";
  } else {
    out << "player: " << o.player << "\nvalue: " << Cell(br.value) << "\n";
    std::vector<std::vector<std::string>> rows = {{"vertex", "choice"}};
    for (const auto& [v, w] : br.strategy) rows.push_back({g.id(v), g.id(w)});
    out << Table(rows);
  }
  return kPositive;
}

int Verify(const Options& o, std::ostream& out) {
  Game g = LoadGame(o.game);
  StationaryProfile s = LoadProfile(g, o.profile);
  Rational eps = ParseFlagRational("--epsilon", o.epsilon);
  if (eps < 0) throw UsageError("flag --epsilon: must be nonnegative");
  Thresholds bounds = ParseBounds(g, o.lower, o.upper);
  if (!ValidateProfile(g, s, true).empty()) {
    throw UsageError(o.profile + ": " + ValidateProfile(g, s, true).front());
  }
  VerificationReport r;
  if (o.promise) {
    if (eps <= 0) throw UsageError("flag --promise needs --epsilon > 0");
    r = VerifyPromise(g, s, bounds, eps,
                      o.iterative ? DecisionMode::kIterative : DecisionMode::kExact);
  } else {
    r = VerifyConstrained(g, s, bounds, eps);
  }
  out << (o.json ? r.ToJson() : ReportText(r));
  return r.accepted ? kPositive : kNegative;
}

// Rounds every row of a profile document to D(l); works on ids only, so the
// game file is optional.
int Round(const Options& o, std::ostream& out) {
  if (o.ell < 2) throw UsageError("flag --ell: must be >= 2");
  std::string text = ReadFile(o.profile);
  if (!o.game.empty()) {
    Game g = LoadGame(o.game);
    LoadProfile(g, o.profile);  // validates ids and rows against the game
  }
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error&) {
    throw UsageError(o.profile + ": syntax error");
  }
  if (!doc.is_object() || !doc.contains("rows") || !doc["rows"].is_object()) {
    throw UsageError(o.profile + ": missing field rows");
  }
  Json rows = Json::object();
  bool all_members = true;
  for (const auto& [vid, row] : doc["rows"].items()) {
    std::vector<std::string> ids;
    std::vector<Rational> weights;
    for (const auto& [wid, val] : row.items()) {
      Rational q;
      try {
        if (val.is_string()) {
          q = ParseRational(val.get<std::string>());
        } else {
          q = FloatL::Make(Integer(val.at("m").get<std::string>(), 10),
                           std::stoll(val.at("e").get<std::string>()),
                           val.at("ell").get<int>())
                  .value();
        }
      } catch (const std::exception& e) {
        throw UsageError(o.profile + ": rows." + vid + "." + wid + ": " + e.what());
      }
      if (q < 0) throw UsageError(o.profile + ": negative entry in row " + vid);
      if (q == 0) continue;
      ids.push_back(wid);
      weights.push_back(q);
    }
    if (weights.empty()) throw UsageError(o.profile + ": empty row " + vid);
    Rational sum = 0;
    for (const auto& w : weights) sum += w;
    for (auto& w : weights) w /= sum;
    FloatDist d = RoundDistribution(weights, o.ell);
    all_members = all_members && IsDlMember(d);
    Json jr = Json::object();
    for (size_t k = 0; k < ids.size(); ++k) {
      const FloatL& x = d.weights()[k];
      jr[ids[k]] = {{"m", x.mantissa().get_str()},
                    {"e", std::to_string(x.exponent())},
                    {"ell", x.precision()}};
    }
    rows[vid] = std::move(jr);
  }
  Emit(o.out, Json{{"rows", rows}}.dump(2) + "\n", out);
  return all_members ? kPositive : kNegative;
}

int ExportEtr(const Options& o, std::ostream& out) {
  Game g = LoadGame(o.game);
  if (o.count_supports) {
    Integer c = CountSupports(g);
    if (o.json) {
      out << Json{{"supports", c.get_str()}}.dump(2) << "\n";
    } else {
      out << c.get_str() << "\n";
    }
    return kPositive;
  }
  Support support;
  if (!o.profile.empty()) {
    support = ProfileSupport(g, LoadProfile(g, o.profile));
  } else if (!o.support_index.empty()) {
    Integer k;
    if (k.set_str(o.support_index, 10) != 0 || k < 0) {
      throw UsageError("flag --support-index: expected a nonnegative integer");
    }
    auto s = NthSupport(g, k);
    if (!s) throw UsageError("flag --support-index: out of range");
    support = *s;
  } else {
    throw UsageError("export-etr needs --profile, --support-index or --count-supports");
  }
  EtrSystem sys = BuildEtr(g, ParseBounds(g, o.lower, o.upper), support);
  Emit(o.out, EmitSmtlib(sys), out);
  return kPositive;
}

int Search(const Options& o, std::ostream& out) {
  Game g = LoadGame(o.game);
  SearchConfig cfg;
  try {
    cfg.mode = ParseSearchMode(o.mode);
  } catch (const Error& e) {
    throw UsageError(std::string("flag --mode: ") + e.what());
  }
  if (o.budget < 1) throw UsageError("flag --budget: must be >= 1");
  cfg.budget = o.budget;
  cfg.seed = o.seed;
  cfg.decision = o.iterative ? DecisionMode::kIterative : DecisionMode::kExact;
  for (const auto& c : o.candidates) cfg.candidates.push_back(LoadProfile(g, c));
  if (cfg.mode == SearchMode::kCandidateFile && cfg.candidates.empty()) {
    throw UsageError("mode candidate-file needs --candidate");
  }
  Rational eps = ParseFlagRational("--epsilon", o.epsilon);
  if (eps <= 0) throw UsageError("flag --epsilon: must be positive");
  SearchResult r =
      SearchConstrainedNe(g, ParseBounds(g, o.lower, o.upper), eps, cfg);
  if (o.json) {
    Json doc;
    doc["found"] = r.found;
    doc["tried"] = r.tried;
    doc["best_margin"] = r.best_margin ? Number(*r.best_margin) : Json();
    if (r.found) {
      doc["profile"] = Json::parse(SerializeProfile(g, r.profile));
      doc["report"] = Json::parse(r.report.ToJson());
    }
    out << doc.dump(2) << "\n";
  } else {
    out << "result: " << (r.found ? "found" : "exhausted") << "\n";
    out << "tried: " << r.tried << "\n";
    out << "best margin: "
        << (r.best_margin ? Cell(*r.best_margin) : std::string("none")) << "\n";
    if (r.found) {
      out << ReportText(r.report);
      out << SerializeProfile(g, r.profile);
    }
  }
  if (r.found && !o.out.empty()) Emit(o.out, SerializeProfile(g, r.profile), out);
  return r.found ? kPositive : kNegative;
}

std::map<std::string, Rational> LoadModel(const std::string& path) {
  Json doc;
  try {
    doc = Json::parse(ReadFile(path));
  } catch (const Json::parse_error&) {
    throw UsageError(path + ": syntax error");
  }
  if (!doc.is_object()) throw UsageError(path + ": expected an object");
  std::map<std::string, Rational> m;
  for (const auto& [name, val] : doc.items()) {
    if (!val.is_string()) throw UsageError(path + ": " + name + ": expected \"p/q\"");
    try {
      m[name] = ParseRational(val.get<std::string>());
    } catch (const ParseError& e) {
      throw UsageError(path + ": " + name + ": " + e.what());
    }
  }
  return m;
}

int CheckEtr(const Options& o, std::ostream& out) {
  std::vector<std::string> found;
  if (!o.smt.empty()) {
    if (o.model.empty()) throw UsageError("check-etr --smt needs --model");
    EtrSystem sys;
    try {
      sys = ParseSmtlib(ReadFile(o.smt));
    } catch (const ParseError& e) {
      throw UsageError(o.smt + ": " + e.what());
    }
    for (const auto& v : CheckAssignment(sys, LoadModel(o.model))) {
      found.push_back(v.tag == 0 ? "threshold"
                                 : "constraint " + std::to_string(v.tag));
    }
  } else {
    Game g = LoadGame(o.game);
    StationaryProfile s = LoadProfile(g, o.profile);
    for (const auto& v : CheckEtrConstraints(g, s, ParseBounds(g, o.lower, o.upper))) {
      found.push_back(v.ToString());
    }
  }
  if (o.json) {
    out << Json{{"satisfied", found.empty()}, {"violations", found}}.dump(2)
        << "\n";
  } else if (found.empty()) {
    out << "all constraints satisfied\n";
  } else {
    for (const auto& f : found) out << f << "\n";
  }
  return found.empty() ? kPositive : kNegative;
}

}  // namespace

int Run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"Stationary equilibria of turn-based stochastic games", "sgne"};
  app.require_subcommand(1);
  Options o;

  auto json = [&](CLI::App* sub) {
    sub->add_flag("--json", o.json, "Machine-readable JSON report");
  };
  auto bounds = [&](CLI::App* sub) {
    sub->add_option("--lower", o.lower, "Lower payoff bound name=p/q")
        ->allow_extra_args(false);
    sub->add_option("--upper", o.upper, "Upper payoff bound name=p/q")
        ->allow_extra_args(false);
  };

  auto* gen = app.add_subcommand("generate", "Write a game file");
  gen->add_option("family", o.family, "gn or sat")->required();
  gen->add_option("--n", o.n, "Size of G^n");
  gen->add_option("--cnf", o.cnf, "DIMACS 3-CNF file");
  gen->add_option("--out", o.out, "Output file (default stdout)");

  auto* ne = app.add_subcommand("ne", "Write a reference profile file");
  ne->add_option("kind", o.kind, "gn-exact, gn-epsilon or sat")->required();
  ne->add_option("--n", o.n, "Size of G^n");
  ne->add_option("--epsilon", o.epsilon, "p/q or 2^-k");
  ne->add_option("--cnf", o.cnf, "DIMACS 3-CNF file");
  ne->add_option("--valuation", o.valuation, "0/1 per variable");
  ne->add_option("--out", o.out, "Output file (default stdout)");

  auto* ev = app.add_subcommand("evaluate", "Expected payoffs of a profile");
  ev->add_option("--game", o.game)->required();
  ev->add_option("--profile", o.profile)->required();
  json(ev);

  auto* br = app.add_subcommand("best-response", "Optimal pure deviation");
  br->add_option("--game", o.game)->required();
  br->add_option("--profile", o.profile)->required();
  br->add_option("--player", o.player)->required();
  json(br);

  auto* ver = app.add_subcommand("verify", "Check a (constrained) eps-NE");
  ver->add_option("--game", o.game)->required();
  ver->add_option("--profile", o.profile)->required();
  ver->add_option("--epsilon", o.epsilon, "p/q or 2^-k (default 0/1)");
  bounds(ver);
  ver->add_flag("--promise", o.promise, "Use the eps/8 promise pipeline");
  ver->add_flag("--iterative", o.iterative,
                "Promise pipeline with truncated iterative evaluation");
  json(ver);

  auto* rnd = app.add_subcommand("round", "Round a profile to D(l)");
  rnd->add_option("--profile", o.profile)->required();
  rnd->add_option("--game", o.game, "Optional game for validation");
  rnd->add_option("--ell", o.ell, "Mantissa bits")->required();
  rnd->add_option("--out", o.out, "Output file (default stdout)");

  auto* exp = app.add_subcommand("export-etr", "Write the SMT-LIB2 system");
  exp->add_option("--game", o.game)->required();
  exp->add_option("--profile", o.profile, "Take the support of this profile");
  exp->add_option("--support-index", o.support_index,
                  "Support number in size-then-lexicographic order");
  exp->add_flag("--count-supports", o.count_supports,
                "Print the number of candidate supports");
  bounds(exp);
  exp->add_option("--out", o.out, "Output file (default stdout)");
  json(exp);

  auto* sea = app.add_subcommand("search", "Search for a constrained eps-NE");
  sea->add_option("--game", o.game)->required();
  sea->add_option("--mode", o.mode,
                  "candidate-file, pure-enumeration, support-newton, random-restart");
  sea->add_option("--budget", o.budget, "Maximum candidates");
  sea->add_option("--epsilon", o.epsilon, "p/q or 2^-k")->required();
  sea->add_option("--seed", o.seed, "Random seed");
  sea->add_option("--candidate", o.candidates, "Candidate profile file")
      ->allow_extra_args(false);
  sea->add_flag("--iterative", o.iterative,
                "Truncated iterative evaluation in the promise pipeline");
  sea->add_option("--out", o.out, "Write the found profile here");
  bounds(sea);
  json(sea);

  auto* chk = app.add_subcommand("check-etr", "Evaluate the ETR constraints");
  chk->add_option("--game", o.game);
  chk->add_option("--profile", o.profile);
  chk->add_option("--smt", o.smt, "SMT-LIB2 system file");
  chk->add_option("--model", o.model, "JSON assignment {name: p/q}");
  bounds(chk);
  json(chk);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kPositive : kUsage;
  }

  const std::vector<std::pair<CLI::App*, std::function<int()>>> handlers = {
      {gen, [&] { return Generate(o, out); }},
      {ne, [&] { return Ne(o, out); }},
      {ev, [&] { return Evaluate(o, out); }},
      {br, [&] { return BestResponseCmd(o, out); }},
      {ver, [&] { return Verify(o, out); }},
      {rnd, [&] { return Round(o, out); }},
      {exp, [&] { return ExportEtr(o, out); }},
      {sea, [&] { return Search(o, out); }},
      {chk, [&] {
         if (o.smt.empty() && (o.game.empty() || o.profile.empty())) {
           throw UsageError("check-etr needs --game and --profile, or --smt and --model");
         }
         return CheckEtr(o, out);
       }},
  };
  try {
    for (const auto& [sub, handler] : handlers) {
      if (sub->parsed()) return handler();
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

}  // namespace sgne::cli
