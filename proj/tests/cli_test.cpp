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

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "json.hpp"
#include "sgne/etr.hpp"
#include "sgne/evaluate.hpp"
#include "sgne/generators.hpp"
#include "sgne/verify.hpp"

namespace sgne {
namespace {

namespace fs = std::filesystem;
using Json = nlohmann::ordered_json;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome Sgne(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("sgne_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string& name) const { return (dir_ / name).string(); }

  std::string Write(const std::string& name, const std::string& text) const {
    std::ofstream(Path(name)) << text;
    return Path(name);
  }

  std::string Read(const std::string& name) const {
    std::ifstream in(Path(name));
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
  }

  fs::path dir_;
};

TEST_F(CliTest, GenerateMatchesLibrary) {
  Outcome o = Sgne({"generate", "gn", "--n", "3", "--out", Path("g.json")});
  EXPECT_EQ(o.code, cli::kPositive);
  EXPECT_EQ(Read("g.json"), SerializeGame(BuildGn(3)));
  o = Sgne({"generate", "gn", "--n", "2"});
  EXPECT_EQ(o.out, SerializeGame(BuildGn(2)));
}

TEST_F(CliTest, GnPipelineVerifies) {
  Sgne({"generate", "gn", "--n", "3", "--out", Path("g.json")});
  Outcome ne = Sgne({"ne", "gn-exact", "--n", "3"});
  ASSERT_EQ(ne.code, 0);
  Write("p.json", ne.out);
  Outcome o = Sgne({"verify", "--game", Path("g.json"), "--profile", Path("p.json"),
                   "--json"});
  EXPECT_EQ(o.code, cli::kPositive) << o.err;
  Json j = Json::parse(o.out);
  EXPECT_TRUE(j["accepted"].get<bool>());
  for (const auto& p : j["players"]) {
    EXPECT_EQ(p["margin"]["exact"], "0/1");
  }
  EXPECT_EQ(o.out, VerifyConstrained(BuildGn(3), GnExactNe(3),
                                     Thresholds::Vacuous(BuildGn(3)), 0)
                       .ToJson());
}

TEST_F(CliTest, NonEquilibriumExitsOne) {
  Game g = BuildGn(2);
  Write("g.json", SerializeGame(g));
  Write("p.json", SerializeProfile(g, GnEpsilonNe(2, Rational(1, 16))));
  Outcome o = Sgne({"verify", "--game", Path("g.json"), "--profile", Path("p.json"),
                   "--epsilon", "0/1"});
  EXPECT_EQ(o.code, cli::kNegative);
  EXPECT_NE(o.out.find("diamond"), std::string::npos);
  EXPECT_NE(o.out.find("1/16"), std::string::npos);
  o = Sgne({"verify", "--game", Path("g.json"), "--profile", Path("p.json"),
           "--epsilon", "2^-4"});
  EXPECT_EQ(o.code, cli::kPositive);
  o = Sgne({"verify", "--game", Path("g.json"), "--profile", Path("p.json"),
           "--epsilon", "2^-4", "--promise", "--iterative"});
  EXPECT_EQ(o.code, cli::kNegative);  // margin 1/16 exceeds eps/8
}

TEST_F(CliTest, Constraints) {
  Game g = BuildGn(2);
  Write("g.json", SerializeGame(g));
  Write("p.json", SerializeProfile(g, GnExactNe(2)));
  std::vector<std::string> base = {"verify", "--game", Path("g.json"),
                                   "--profile", Path("p.json")};
  auto with = [&](std::vector<std::string> extra) {
    auto a = base;
    a.insert(a.end(), extra.begin(), extra.end());
    return Sgne(a);
  };
  EXPECT_EQ(with({"--lower", "circle=1", "--upper", "circle=1"}).code, 0);
  EXPECT_EQ(with({"--lower", "circle=2"}).code, 1);
  Outcome bad = with({"--lower", "hexagon=1"});
  EXPECT_EQ(bad.code, cli::kUsage);
  EXPECT_NE(bad.err.find("--lower"), std::string::npos);
}

TEST_F(CliTest, UsageErrors) {
  Write("g.json", SerializeGame(BuildGn(1)));
  Write("p.json", SerializeProfile(BuildGn(1), GnExactNe(1)));
  Outcome o = Sgne({"verify", "--game", Path("g.json"), "--profile", Path("p.json"),
                   "--epsilon", "0.01"});
  EXPECT_EQ(o.code, cli::kUsage);
  EXPECT_NE(o.err.find("--epsilon"), std::string::npos);
  EXPECT_EQ(Sgne({"verify", "--game", Path("g.json"), "--profile",
                 Path("p.json"), "--bogus"})
                .code,
            cli::kUsage);
  o = Sgne({"verify", "--game", Path("missing.json"), "--profile", Path("p.json")});
  EXPECT_EQ(o.code, cli::kUsage);
  EXPECT_NE(o.err.find("missing.json"), std::string::npos);
  Write("bad.json", "{\"rows\": {\"r_1\": {\"t_1\": \"0.25\"}}}");
  o = Sgne({"evaluate", "--game", Path("g.json"), "--profile", Path("bad.json")});
  EXPECT_EQ(o.code, cli::kUsage);
  EXPECT_NE(o.err.find("rows.r_1.t_1"), std::string::npos) << o.err;
  EXPECT_EQ(Sgne({}).code, cli::kUsage);
  EXPECT_EQ(Sgne({"--help"}).code, 0);
  EXPECT_EQ(Sgne({"generate", "hex"}).code, cli::kUsage);
  EXPECT_EQ(Sgne({"search", "--game", Path("g.json"), "--epsilon", "1/8",
                 "--mode", "anneal"})
                .code,
            cli::kUsage);
}

TEST_F(CliTest, EvaluateAndBestResponse) {
  Game g = BuildGn(2);
  Write("g.json", SerializeGame(g));
  Write("p.json", SerializeProfile(g, GnExactNe(2)));
  Outcome o = Sgne({"evaluate", "--game", Path("g.json"), "--profile",
                   Path("p.json"), "--json"});
  ASSERT_EQ(o.code, 0);
  Json j = Json::parse(o.out);
  ValueVector vv = ExpectedPayoffs(g, GnExactNe(2));
  for (int p = 0; p < g.num_players(); ++p) {
    EXPECT_EQ(j["players"][p]["payoff"]["exact"], ToString(vv.payoff[p]));
  }
  o = Sgne({"best-response", "--game", Path("g.json"), "--profile", Path("p.json"),
           "--player", "diamond", "--json"});
  ASSERT_EQ(o.code, 0);
  j = Json::parse(o.out);
  EXPECT_EQ(j["value"]["exact"], ToString(vv.payoff[3]));
  EXPECT_EQ(j["strategy"]["c_1"], "d_1");
}

TEST_F(CliTest, RoundOutputIsInDl) {
  Game g = BuildGn(3);
  Write("g.json", SerializeGame(g));
  Write("p.json", SerializeProfile(g, GnExactNe(3)));
  Outcome o = Sgne({"round", "--profile", Path("p.json"), "--ell", "16"});
  ASSERT_EQ(o.code, 0) << o.err;
  StationaryProfile r = ParseProfile(g, o.out);  // validates D(l) rows
  for (const auto& [v, row] : r.rows()) {
    ASSERT_TRUE(std::holds_alternative<FloatRow>(row));
    std::vector<FloatL> w;
    for (const auto& [to, x] : std::get<FloatRow>(row)) {
      EXPECT_EQ(x.precision(), 16);
      w.push_back(x);
    }
    EXPECT_TRUE(IsDlMember(FloatDist(w)));
  }
  EXPECT_EQ(Sgne({"round", "--profile", Path("p.json"), "--ell", "16", "--game",
                 Path("g.json")})
                .out,
            o.out);
}

TEST_F(CliTest, ExportEtrMatchesLibrary) {
  Game g = BuildGn(1);
  Write("g.json", SerializeGame(g));
  Write("p.json", SerializeProfile(g, GnExactNe(1)));
  Outcome o = Sgne({"export-etr", "--game", Path("g.json"), "--profile",
                   Path("p.json")});
  ASSERT_EQ(o.code, 0);
  EXPECT_EQ(o.out, EmitSmtlib(BuildEtr(g, Thresholds::Vacuous(g),
                                       ProfileSupport(g, GnExactNe(1)))));
  o = Sgne({"export-etr", "--game", Path("g.json"), "--count-supports"});
  EXPECT_EQ(o.out, "1594323\n");
  o = Sgne({"export-etr", "--game", Path("g.json"), "--support-index", "0"});
  EXPECT_EQ(o.out, EmitSmtlib(BuildEtr(g, Thresholds::Vacuous(g),
                                       *NthSupport(g, Integer(0)))));
  EXPECT_EQ(Sgne({"export-etr", "--game", Path("g.json"), "--support-index",
                 "99999999"})
                .code,
            cli::kUsage);
}

TEST_F(CliTest, CheckEtr) {
  Game g = BuildGn(1);
  StationaryProfile s = GnExactNe(1);
  Write("g.json", SerializeGame(g));
  Write("p.json", SerializeProfile(g, s));
  EXPECT_EQ(Sgne({"check-etr", "--game", Path("g.json"), "--profile",
                 Path("p.json")})
                .code,
            0);
  EtrSystem sys = BuildEtr(g, Thresholds::Vacuous(g), ProfileSupport(g, s));
  Write("g1.smt2", EmitSmtlib(sys));
  std::vector<Rational> x = InducedAssignment(g, s, sys);
  Json model = Json::object();
  for (size_t k = 0; k < x.size(); ++k) model[sys.variables[k]] = ToString(x[k]);
  Write("m.json", model.dump());
  EXPECT_EQ(Sgne({"check-etr", "--smt", Path("g1.smt2"), "--model",
                 Path("m.json")})
                .code,
            0);
  model[PVarName(g, g.VertexIndex("r_1"), g.VertexIndex("t_1"))] = "0/1";
  Write("m.json", model.dump());
  Outcome o = Sgne({"check-etr", "--smt", Path("g1.smt2"), "--model",
                   Path("m.json"), "--json"});
  EXPECT_EQ(o.code, 1);
  EXPECT_FALSE(Json::parse(o.out)["satisfied"].get<bool>());
}

TEST_F(CliTest, SatPipelineAndSearch) {
  Write("f.cnf", "p cnf 4 2\n1 -2 3 0\n-1 2 4 0\n");
  ASSERT_EQ(Sgne({"generate", "sat", "--cnf", Path("f.cnf"), "--out",
                 Path("g.json")})
                .code,
            0);
  Outcome ne = Sgne({"ne", "sat", "--cnf", Path("f.cnf"), "--valuation", "1100"});
  ASSERT_EQ(ne.code, 0) << ne.err;
  Write("p.json", ne.out);
  EXPECT_EQ(Sgne({"verify", "--game", Path("g.json"), "--profile",
                 Path("p.json"), "--lower", "Solver=1"})
                .code,
            0);
  EXPECT_EQ(Sgne({"ne", "sat", "--cnf", Path("f.cnf"), "--valuation", "0100"})
                .code,
            cli::kUsage);

  std::vector<std::string> args = {"search", "--game", Path("g.json"),
                                   "--mode", "random-restart", "--seed", "5",
                                   "--epsilon", "2^-6", "--lower", "Solver=1",
                                   "--upper", "Solver=1", "--json"};
  Outcome a = Sgne(args), b = Sgne(args);
  EXPECT_EQ(a.code, 0);
  EXPECT_EQ(a.out, b.out);
  EXPECT_TRUE(Json::parse(a.out)["found"].get<bool>());

  Write("f2.cnf", "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n");
  Sgne({"generate", "sat", "--cnf", Path("f2.cnf"), "--out", Path("u.json")});
  Outcome u = Sgne({"search", "--game", Path("u.json"), "--epsilon", "2^-6",
                   "--lower", "Solver=1"});
  EXPECT_EQ(u.code, cli::kNegative);
  EXPECT_NE(u.out.find("exhausted"), std::string::npos);
}

TEST_F(CliTest, CandidateFileSearch) {
  Game g = BuildGn(2);
  Write("g.json", SerializeGame(g));
  Write("p.json", SerializeProfile(g, GnExactNe(2)));
  Outcome o = Sgne({"search", "--game", Path("g.json"), "--mode", "candidate-file",
                   "--candidate", Path("p.json"), "--epsilon", "1/1024",
                   "--out", Path("found.json")});
  EXPECT_EQ(o.code, 0);
  EXPECT_EQ(Read("found.json"), SerializeProfile(g, GnExactNe(2)));
}

}  // namespace
}  // namespace sgne
