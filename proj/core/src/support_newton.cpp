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

#include <algorithm>

#include "linalg.hpp"
#include "sgne/search.hpp"

namespace sgne {

namespace {

using internal::DenseMatrix;
using internal::SparseRow;

constexpr int kDyadicBits = 128;

Rational RoundDown(const Rational& x) {
  Integer scaled = x.get_num() << kDyadicBits;
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), scaled.get_mpz_t(), x.get_den().get_mpz_t());
  Rational out(q, Integer(1) << kDyadicBits);
  out.canonicalize();
  return out;
}

struct MixedRow {
  int vertex;
  std::vector<int> succ;  // support, in the given order
  int offset;             // first parameter index; k - 1 parameters
};

struct Residual {
  Rational value;
  std::vector<Rational> grad;
};

class NewtonSystem {
 public:
  NewtonSystem(const Game& g, const Thresholds& bounds, const Support& support)
      : g_(g), bounds_(bounds), support_(support) {
    for (int v : g.ControlledVertices()) {
      auto it = support.find(v);
      if (it == support.end() || it->second.empty()) {
        throw Error("support is empty at controlled vertex '" + g.id(v) + "'");
      }
      for (int w : it->second) {
        if (!g.HasEdge(v, w)) throw Error("support names a non-edge");
      }
      if (it->second.size() > 1) {
        rows_.push_back({v, it->second, num_params_});
        num_params_ += static_cast<int>(it->second.size()) - 1;
      }
    }
  }

  int num_params() const { return num_params_; }

  std::vector<Rational> Start() const {
    std::vector<Rational> theta(num_params_);
    for (const auto& row : rows_) {
      Rational uniform(1, static_cast<long>(row.succ.size()));
      for (size_t j = 0; j + 1 < row.succ.size(); ++j) {
        theta[row.offset + j] = uniform;
      }
    }
    return theta;
  }

  // Every row probability, including the complement, is positive.
  bool Interior(const std::vector<Rational>& theta) const {
    for (const auto& row : rows_) {
      Rational sum = 0;
      for (size_t j = 0; j + 1 < row.succ.size(); ++j) {
        const Rational& p = theta[row.offset + j];
        if (p <= 0) return false;
        sum += p;
      }
      if (sum >= 1) return false;
    }
    return true;
  }

  StationaryProfile Profile(const std::vector<Rational>& theta) const {
    StationaryProfile s;
    for (int v : g_.ControlledVertices()) {
      const auto& succ = support_.at(v);
      if (succ.size() == 1) s.SetPure(v, succ[0]);
    }
    for (const auto& row : rows_) {
      ExactRow r;
      Rational rest = 1;
      for (size_t j = 0; j + 1 < row.succ.size(); ++j) {
        r[row.succ[j]] = theta[row.offset + j];
        rest -= theta[row.offset + j];
      }
      r[row.succ.back()] = rest;
      s.SetRow(row.vertex, std::move(r));
    }
    return s;
  }

  // Equations first, then every inequality (constraint 9 on non-support
  // edges, payoff thresholds) as value >= 0.
  void Evaluate(const std::vector<Rational>& theta, std::vector<Residual>* eqs,
                std::vector<Residual>* ineqs) const {
    const int n = g_.num_vertices();
    const Transition chain = InducedChain(g_, Profile(theta));
    const ValueVector val = ChainValues(g_, chain);

    std::vector<int> index(n, -1);
    std::vector<int> unknowns;
    for (int v : val.support) {
      if (!g_.IsTerminal(v)) {
        index[v] = static_cast<int>(unknowns.size());
        unknowns.push_back(v);
      }
    }
    // Columns of (I - P)^-1 for the mixed rows inside V_S \ T.
    std::vector<int> col(rows_.size(), -1);
    DenseMatrix inv;
    if (!unknowns.empty()) {
      const int u = static_cast<int>(unknowns.size());
      std::vector<SparseRow> a(u);
      for (int r = 0; r < u; ++r) {
        a[r][r] += 1;
        for (const auto& [w, p] : chain[unknowns[r]]) {
          if (index[w] >= 0) a[r][index[w]] -= p;
        }
      }
      int k = 0;
      for (size_t m = 0; m < rows_.size(); ++m) {
        if (index[rows_[m].vertex] >= 0) col[m] = k++;
      }
      DenseMatrix e(u, std::vector<Rational>(k, Rational(0)));
      for (size_t m = 0; m < rows_.size(); ++m) {
        if (col[m] >= 0) e[index[rows_[m].vertex]][col[m]] = 1;
      }
      if (k > 0) {
        auto x = internal::SolveSparse(std::move(a), std::move(e));
        if (!x) throw Error("internal error: singular payoff system");
        inv = std::move(*x);
      }
    }

    auto grad = [&](int player, int vertex) {
      std::vector<Rational> d(num_params_, Rational(0));
      if (index[vertex] < 0) return d;
      for (size_t m = 0; m < rows_.size(); ++m) {
        if (col[m] < 0) continue;
        const Rational& weight = inv[index[vertex]][col[m]];
        if (weight == 0) continue;
        const auto& succ = rows_[m].succ;
        const Rational& last = val.r[player][succ.back()];
        for (size_t j = 0; j + 1 < succ.size(); ++j) {
          d[rows_[m].offset + j] = weight * (val.r[player][succ[j]] - last);
        }
      }
      return d;
    };
    auto diff = [&](int player, int a, int b) {
      Residual res;
      res.value = val.r[player][a] - val.r[player][b];
      res.grad = grad(player, a);
      auto gb = grad(player, b);
      for (int t = 0; t < num_params_; ++t) res.grad[t] -= gb[t];
      return res;
    };

    eqs->clear();
    ineqs->clear();
    for (const auto& row : rows_) {
      int i = g_.Controller(row.vertex);
      for (size_t j = 0; j + 1 < row.succ.size(); ++j) {
        eqs->push_back(diff(i, row.succ[j], row.succ.back()));
      }
    }
    for (int v : g_.ControlledVertices()) {
      int i = g_.Controller(v);
      const auto& succ = support_.at(v);
      for (const Edge& e : g_.out(v)) {
        if (std::find(succ.begin(), succ.end(), e.to) == succ.end()) {
          ineqs->push_back(diff(i, v, e.to));
        }
      }
    }
    const int v0 = g_.initial();
    for (int i = 0; i < g_.num_players(); ++i) {
      Residual lo{val.r[i][v0] - bounds_.lower[i], grad(i, v0)};
      Residual hi{bounds_.upper[i] - val.r[i][v0], grad(i, v0)};
      for (auto& x : hi.grad) x = -x;
      ineqs->push_back(std::move(lo));
      ineqs->push_back(std::move(hi));
    }
  }

 private:
  const Game& g_;
  const Thresholds& bounds_;
  const Support& support_;
  std::vector<MixedRow> rows_;
  int num_params_ = 0;
};

Rational Merit(const std::vector<Residual>& eqs,
               const std::vector<Residual>& ineqs) {
  Rational m = 0;
  for (const auto& r : eqs) m += r.value * r.value;
  for (const auto& r : ineqs) {
    if (r.value < 0) m += r.value * r.value;
  }
  return m;
}

Rational Violation(const std::vector<Residual>& eqs,
                   const std::vector<Residual>& ineqs) {
  Rational worst = 0;
  for (const auto& r : eqs) worst = std::max(worst, Rational(Abs(r.value)));
  for (const auto& r : ineqs) worst = std::max(worst, Rational(-r.value));
  return worst;
}

}  // namespace

std::string NewtonStatusName(NewtonStatus status) {
  switch (status) {
    case NewtonStatus::kVerified: return "verified";
    case NewtonStatus::kVerificationFailed: return "verification-failed";
    case NewtonStatus::kNoConvergence: return "no-convergence";
    case NewtonStatus::kSingularStart: return "singular-start";
  }
  return "unknown";
}

NewtonResult SupportNewton(const Game& g, const Thresholds& bounds,
                           const Support& support, const Rational& tol,
                           int iterations, const Rational& eps) {
  RequireValidGame(g);
  if (bounds.lower.size() != static_cast<size_t>(g.num_players()) ||
      bounds.upper.size() != static_cast<size_t>(g.num_players())) {
    throw Error("thresholds must cover every player");
  }
  if (tol <= 0) throw Error("tolerance must be positive");
  NewtonSystem sys(g, bounds, support);
  const Rational active = std::max(tol, Pow2(-20));

  NewtonResult result;
  std::vector<Rational> theta = sys.Start();
  std::vector<Residual> eqs, ineqs;
  sys.Evaluate(theta, &eqs, &ineqs);

  for (int it = 0;; ++it) {
    result.iterations = it;
    result.residual = Violation(eqs, ineqs);
    result.candidate = sys.Profile(theta);
    if (result.residual <= tol) break;
    if (it >= iterations || sys.num_params() == 0) {
      result.status = NewtonStatus::kNoConvergence;
      return result;
    }

    DenseMatrix jac;
    std::vector<Rational> rhs;
    for (const auto& r : eqs) {
      jac.push_back(r.grad);
      rhs.push_back(-r.value);
    }
    for (const auto& r : ineqs) {
      if (r.value <= active) {
        jac.push_back(r.grad);
        rhs.push_back(-r.value);
      }
    }
    bool zero = true;
    for (const auto& row : jac) {
      for (const auto& x : row) zero = zero && x == 0;
    }
    if (zero) {
      result.status = it == 0 ? NewtonStatus::kSingularStart
                              : NewtonStatus::kNoConvergence;
      return result;
    }
    std::vector<Rational> step = internal::MinNormSolve(jac, rhs);

    const Rational merit = Merit(eqs, ineqs);
    bool accepted = false;
    Rational t = 1;
    for (int halving = 0; halving <= 40; ++halving, t /= 2) {
      std::vector<Rational> trial(theta.size());
      for (size_t k = 0; k < theta.size(); ++k) {
        trial[k] = RoundDown(theta[k] + t * step[k]);
      }
      if (!sys.Interior(trial)) continue;
      std::vector<Residual> e2, i2;
      sys.Evaluate(trial, &e2, &i2);
      if (Merit(e2, i2) < merit) {
        theta = std::move(trial);
        eqs = std::move(e2);
        ineqs = std::move(i2);
        accepted = true;
        break;
      }
    }
    if (!accepted) {
      result.status = NewtonStatus::kNoConvergence;
      return result;
    }
  }

  VerificationReport report =
      VerifyConstrained(g, result.candidate, bounds, eps);
  result.status = report.accepted ? NewtonStatus::kVerified
                                  : NewtonStatus::kVerificationFailed;
  result.report = std::move(report);
  return result;
}

}  // namespace sgne
