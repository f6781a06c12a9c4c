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

#include "sat_profiles.hpp"
#include "sgne/evaluate.hpp"
#include "sgne/generators.hpp"
#include "sgne/verify.hpp"

namespace sgne {
namespace {

constexpr int kCircle = 0, kSquare = 1, kTriangle = 2, kDiamond = 3,
              kPentagon = 4;

std::string Id(const char* base, int i) {
  return std::string(base) + "_" + std::to_string(i);
}

TEST(BuildGn, Census) {
  Game g1 = BuildGn(1);
  EXPECT_EQ(g1.num_vertices(), 1 + 2 + 2 * 2 + 12 + 7);
  for (int n = 1; n <= 5; ++n) {
    // s_0, (n+1) def gadgets of three vertices, n mul gadgets of 19
    EXPECT_EQ(BuildGn(n).num_vertices(), 1 + 3 * (n + 1) + 19 * n);
  }
  EXPECT_THROW(BuildGn(0), Error);
}

TEST(BuildGn, Wiring) {
  const int n = 3;
  Game g = BuildGn(n);
  auto edge = [&](const std::string& a, const std::string& b) {
    return g.HasEdge(g.VertexIndex(a), g.VertexIndex(b));
  };
  EXPECT_TRUE(g.IsChance(g.initial()));
  for (const Edge& e : g.out(g.initial())) EXPECT_EQ(*e.prob, Rational(1, n));
  EXPECT_TRUE(g.IsChance(g.VertexIndex("r_0")));
  for (int i = 1; i <= n; ++i) {
    EXPECT_EQ(g.Controller(g.VertexIndex(Id("r", i))), kCircle);
    EXPECT_TRUE(edge(Id("d", i), Id("r", i)));
    EXPECT_TRUE(edge(Id("e", i), Id("r", i)));
    EXPECT_TRUE(edge(Id("g", i), Id("r", i - 1)));
    EXPECT_TRUE(edge(Id("h", i), Id("r", i - 1)));
    EXPECT_TRUE(edge(Id("k", i), Id("r", i - 1)));
    EXPECT_TRUE(edge(Id("l", i), Id("r", i - 1)));
    EXPECT_TRUE(edge(Id("c", i), Id("d", i)));
    EXPECT_TRUE(edge(Id("c", i), Id("g", i)));
    EXPECT_EQ(g.Controller(g.VertexIndex(Id("c", i))), kDiamond);
    EXPECT_EQ(g.Controller(g.VertexIndex(Id("b", i))), kPentagon);
    EXPECT_EQ(g.Controller(g.VertexIndex(Id("d", i))), kSquare);
    EXPECT_EQ(g.Controller(g.VertexIndex(Id("h", i))), kTriangle);
  }
  // every edge into a def gadget enters at r_i
  for (int v = 0; v < g.num_vertices(); ++v) {
    for (const Edge& e : g.out(v)) {
      const std::string& to = g.id(e.to);
      if (to.rfind("t_", 0) == 0 && to.size() == 3) EXPECT_EQ(g.id(v)[0], 'r');
      if (to.rfind("t'_", 0) == 0) EXPECT_EQ(g.id(v)[0], 'r');
    }
  }
}

TEST(BuildGn, MaxRewardIsN) {
  for (int n = 1; n <= 4; ++n) {
    Game g = BuildGn(n);
    Rational best = 0;
    for (const auto& [v, row] : g.reward_table()) {
      for (const auto& r : row) best = std::max(best, Abs(r));
    }
    // pentagon's reward 2 at t_i_2 / t_i_3 dominates when n = 1
    EXPECT_EQ(best, std::max(n, 2));
    EXPECT_EQ(MaxAbsReward(g), best);
    EXPECT_EQ(g.Reward(g.VertexIndex("t_1_6"), kTriangle), n);
    EXPECT_EQ(g.Reward(g.VertexIndex("t'_0"), kTriangle), n);
  }
  // n - i - 1 is negative at i = n
  EXPECT_EQ(BuildGn(2).Reward(BuildGn(2).VertexIndex("t_2"), kTriangle), -1);
}

TEST(GnExactNe, Alpha) {
  EXPECT_EQ(GnExactNe(1).Prob(BuildGn(1).VertexIndex("r_1"),
                              BuildGn(1).VertexIndex("t_1")),
            Rational(1, 4));
  Game g4 = BuildGn(4);
  EXPECT_EQ(GnExactNe(4).Prob(g4.VertexIndex("r_4"), g4.VertexIndex("t_4")),
            Rational(1, 65536));
  for (int i = 0; i <= 5; ++i) EXPECT_EQ(GnAlpha(i), Pow2(-(int64_t{1} << i)));
}

TEST(GnExactNe, GadgetIdentities) {
  const int n = 4;
  Game g = BuildGn(n);
  StationaryProfile s = GnExactNe(n);
  ValueVector vv = ExpectedPayoffs(g, s);
  for (int i = 1; i <= n; ++i) {
    Rational a = GnAlpha(i), a_prev = GnAlpha(i - 1);
    EXPECT_EQ(a, a_prev * a_prev);
    EXPECT_EQ(vv.r[kDiamond][g.VertexIndex(Id("d", i))], a);
    EXPECT_EQ(vv.r[kDiamond][g.VertexIndex(Id("g", i))], a_prev * a_prev);
    Rational tri = vv.r[kTriangle][g.VertexIndex(Id("a", i))];
    EXPECT_EQ(tri, n - i + Rational(1, 2) - a / 2 - a_prev / 2);
    EXPECT_GE(tri, n - i + Rational(1, 8));
    Rational pent = vv.r[kPentagon][g.VertexIndex(Id("b", i))];
    EXPECT_EQ(pent, Rational(3, 2) - a_prev * a_prev / 2);
    EXPECT_GE(pent, Rational(11, 8));
  }
}

TEST(GnEpsilonNe, CutoffAndTheta) {
  EXPECT_EQ(GnCutoff(2, Rational(1, 16)), 1);
  EXPECT_EQ(GnTheta(0, 1), Rational(1, 2));
  EXPECT_EQ(GnTheta(1, 1), 0);
  EXPECT_EQ(GnTheta(2, 1), 0);
  EXPECT_EQ(GnCutoff(3, Pow2(-10)), 3);
  EXPECT_EQ(GnTheta(2, 3), Rational(1, 16));
  EXPECT_THROW(GnCutoff(2, 0), Error);
}

TEST(GnEpsilonNe, MarginClosedForm) {
  for (auto [n, eps] : {std::pair<int, Rational>{2, Rational(1, 16)},
                        std::pair<int, Rational>{3, Pow2(-10)}}) {
    Game g = BuildGn(n);
    int cutoff = GnCutoff(n, eps);
    Rational theta = GnTheta(cutoff - 1, cutoff);
    Rational expected = theta * theta / 2 / n;
    EXPECT_EQ(expected, Pow2(-((int64_t{1} << cutoff) + 1)) / n);
    VerificationReport r = VerifyEpsilonNe(g, GnEpsilonNe(n, eps), eps);
    EXPECT_TRUE(r.is_ne);
    EXPECT_EQ(r.players[kCircle].payoff, 1);
    EXPECT_EQ(r.players[kDiamond].margin, expected);
  }
}

TEST(Dimacs, Examples) {
  CnfFormula phi = ParseDimacs("c comment\np cnf 3 1\n1 2 -3 0\n");
  EXPECT_EQ(phi.num_vars, 3);
  ASSERT_EQ(phi.num_clauses(), 1);
  EXPECT_EQ(phi.clauses[0][2], (Literal{3, false}));
  EXPECT_EQ(ParseDimacs(ToDimacs(phi)).clauses, phi.clauses);
  EXPECT_THROW(ParseDimacs("p cnf 3 1\n1 2 0\n"), ParseError);
  EXPECT_THROW(ParseDimacs("p cnf 3 2\n1 2 3 0\n"), ParseError);
  try {
    ParseDimacs("p cnf 3 2\n1 2 3 0\n1 2 7 0\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("clause 2"), std::string::npos)
        << e.what();
  }
}

TEST(BuildSatGame, FigureTwoInstance) {
  CnfFormula phi = ParseDimacs("p cnf 3 1\n1 2 -3 0\n");
  Game g = BuildSatGame(phi);
  EXPECT_TRUE(ValidateGame(g).empty());
  EXPECT_EQ(g.players(),
            (std::vector<std::string>{"Solver", "x1", "x2", "x3"}));
  // m + 3m + s + positive-variable terminals + t_S + t
  EXPECT_EQ(g.num_vertices(), 1 + 3 + 1 + 2 + 2);
  int c1 = g.VertexIndex("C1");
  EXPECT_EQ(g.initial(), c1);
  EXPECT_EQ(g.Controller(c1), 0);
  EXPECT_TRUE(g.IsChance(g.VertexIndex("C1.1")));
  EXPECT_EQ(g.Controller(g.VertexIndex("C1.3")), g.PlayerIndex("x3"));
  EXPECT_TRUE(g.HasEdge(g.VertexIndex("C1.3"), g.VertexIndex("t_S")));
  EXPECT_TRUE(g.HasEdge(g.VertexIndex("C1.3"), g.VertexIndex("s")));
  EXPECT_TRUE(g.HasEdge(g.VertexIndex("C1.1"), g.VertexIndex("t_x1")));
  EXPECT_TRUE(g.HasEdge(g.VertexIndex("s"), c1));
  EXPECT_FALSE(g.FindVertex("t_x3"));
  int tx1 = g.VertexIndex("t_x1");
  EXPECT_EQ(g.Reward(tx1, g.PlayerIndex("x1")), 0);
  EXPECT_EQ(g.Reward(tx1, 0), 1);
  EXPECT_EQ(g.Reward(g.VertexIndex("t_S"), 0), 0);
  EXPECT_EQ(g.Reward(g.VertexIndex("t"), 2), 1);
}

TEST(BuildSatGame, DuplicateLiteralsArePositional) {
  CnfFormula phi = ParseDimacs("p cnf 2 2\n1 1 -2 0\n-2 1 2 0\n");
  Game g = BuildSatGame(phi);
  EXPECT_TRUE(ValidateGame(g).empty());
  EXPECT_NE(g.VertexIndex("C1.1"), g.VertexIndex("C1.2"));
  EXPECT_TRUE(g.HasEdge(g.VertexIndex("C1.2"), g.VertexIndex("C2")));
  EXPECT_EQ(g.num_vertices(), 2 + 6 + 1 + 2 + 2);
}

TEST(SatNeFromValuation, PayoffsAndEquilibrium) {
  CnfFormula phi = ParseDimacs("p cnf 3 1\n1 2 -3 0\n");
  Game g = BuildSatGame(phi);
  StationaryProfile s = SatNeFromValuation(phi, {true, false, false});
  EXPECT_TRUE(s.IsPure());
  VerificationReport r = VerifyEpsilonNe(g, s, 0);
  EXPECT_TRUE(r.is_ne);
  EXPECT_EQ(r.players[0].payoff, 1);
  EXPECT_EQ(r.players[1].payoff, Rational(1, 3));
  EXPECT_EQ(r.players[2].payoff, 1);
  EXPECT_EQ(r.players[3].payoff, 1);
  EXPECT_THROW(SatNeFromValuation(phi, {false, false, true}), Error);
  EXPECT_THROW(SatNeFromValuation(phi, {true}), Error);
}

TEST(SatNeFromValuation, EveryValuationOfSmallFormulas) {
  CnfFormula phi = ParseDimacs("p cnf 4 3\n1 -2 3 0\n-1 2 4 0\n-3 -4 2 0\n");
  Game g = BuildSatGame(phi);
  int sat = 0;
  for (int mask = 0; mask < 16; ++mask) {
    Valuation nu(4);
    for (int k = 0; k < 4; ++k) nu[k] = mask >> k & 1;
    if (!Satisfies(phi, nu)) continue;
    ++sat;
    VerificationReport r = VerifyEpsilonNe(g, SatNeFromValuation(phi, nu), 0);
    EXPECT_TRUE(r.is_ne);
    EXPECT_EQ(r.players[0].payoff, 1);
  }
  EXPECT_GT(sat, 0);
  EXPECT_TRUE(FindSatisfyingValuation(phi));
  EXPECT_FALSE(FindSatisfyingValuation(
      ParseDimacs("p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")));
}

TEST(SatEpsilon, Values) {
  CnfFormula phi;
  EXPECT_EQ(SatEpsilon(phi), 1);
  phi = ParseDimacs("p cnf 3 1\n1 2 3 0\n");
  EXPECT_EQ(SatEpsilon(phi), Rational(1, 8));
  phi = ParseDimacs("p cnf 3 3\n1 2 3 0\n1 2 3 0\n1 2 3 0\n");
  EXPECT_EQ(SatEpsilon(phi), Rational(1, 512));
}

TEST(WorstCaseProfiles, SolverLossMatchesClaim) {
  for (int m = 1; m <= 4; ++m) {
    CnfFormula phi = testing::WorstCaseFormula(m);
    Rational pm = Pow2(m);
    for (Rational q : {Rational(0), Rational(1, 3), Rational(1)}) {
      EXPECT_EQ(testing::SolverLoss(phi, q), 2 * q / (3 * pm - 2 + q));
    }
  }
}

}  // namespace
}  // namespace sgne
