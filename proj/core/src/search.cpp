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

#include "sgne/search.hpp"

#include <random>

namespace sgne {

namespace {

class Searcher {
 public:
  Searcher(const Game& g, const Thresholds& bounds, const Rational& eps,
           const SearchConfig& cfg)
      : g_(g), bounds_(bounds), eps_(eps), cfg_(cfg) {}

  bool Exhausted() const { return result_.tried >= cfg_.budget; }
  SearchResult& result() { return result_; }

  // Screens and verifies one candidate; true once a profile is found.
  bool Try(const StationaryProfile& s) {
    ++result_.tried;
    if (!ValidateProfile(g_, s, true).empty()) return false;
    const Rational slack = 7 * eps_ / 8;
    ValueVector values = ExpectedPayoffs(g_, s);
    for (int i = 0; i < g_.num_players(); ++i) {
      if (values.payoff[i] < bounds_.lower[i] - slack ||
          values.payoff[i] > bounds_.upper[i] + slack) {
        return false;
      }
    }
    VerificationReport report =
        VerifyPromise(g_, s, bounds_, eps_, cfg_.decision);
    Note(report);
    if (!report.accepted) return false;
    // Exact re-verification at eps: the promise report carries the exact
    // margins and constraint checks of VerifyConstrained.
    report.promise_mode = false;
    report.accepted = report.is_ne && report.constraints_ok;
    if (!report.accepted) return false;
    result_.found = true;
    result_.profile = s;
    result_.report = std::move(report);
    return true;
  }

  void Note(const VerificationReport& report) {
    Rational m = report.MaxMargin();
    if (!result_.best_margin || m < *result_.best_margin) {
      result_.best_margin = m;
    }
  }

 private:
  const Game& g_;
  const Thresholds& bounds_;
  const Rational& eps_;
  const SearchConfig& cfg_;
  SearchResult result_;
};

void PureEnumeration(const Game& g, Searcher* s) {
  const std::vector<int> ctrl = g.ControlledVertices();
  std::vector<size_t> digit(ctrl.size(), 0);
  for (;;) {
    if (s->Exhausted()) return;
    StationaryProfile p;
    for (size_t k = 0; k < ctrl.size(); ++k) {
      p.SetPure(ctrl[k], g.out(ctrl[k])[digit[k]].to);
    }
    if (s->Try(p)) return;
    // Next candidate: the last controlled vertex is the least significant.
    size_t k = ctrl.size();
    while (k > 0) {
      --k;
      if (++digit[k] < g.out(ctrl[k]).size()) break;
      digit[k] = 0;
      if (k == 0) return;
    }
    if (ctrl.empty()) return;
  }
}

void RandomRestart(const Game& g, const SearchConfig& cfg, Searcher* s) {
  std::mt19937_64 rng(cfg.seed);
  const std::vector<int> ctrl = g.ControlledVertices();
  while (!s->Exhausted()) {
    StationaryProfile p;
    for (int v : ctrl) {
      p.SetPure(v, g.out(v)[rng() % g.out(v).size()].to);
    }
    for (int round = 0; round <= cfg.restart_rounds; ++round) {
      if (s->Exhausted()) return;
      if (s->Try(p)) return;
      bool changed = false;
      for (int i = 0; i < g.num_players(); ++i) {
        BestResponse br = MdpBestResponse(g, p, i);
        if (br.value > McValue(g, p, i).payoff) {
          p = WithPureStrategy(p, br.strategy);
          changed = true;
        }
      }
      if (!changed) break;
    }
  }
}

void SupportIteration(const Game& g, const Thresholds& bounds,
                      const Rational& eps, const SearchConfig& cfg,
                      Searcher* s) {
  ForEachSupport(g, [&](const Support& support) {
    if (s->Exhausted()) return false;
    NewtonResult r = SupportNewton(g, bounds, support, cfg.newton_tolerance,
                                   cfg.newton_iterations, eps);
    if (r.status == NewtonStatus::kVerified) {
      // Count this support and run the full screening on the candidate.
      return !s->Try(r.candidate);
    }
    ++s->result().tried;
    if (r.report) s->Note(*r.report);
    return true;
  });
}

}  // namespace

SearchMode ParseSearchMode(std::string_view name) {
  if (name == "candidate-file") return SearchMode::kCandidateFile;
  if (name == "pure-enumeration") return SearchMode::kPureEnumeration;
  if (name == "support-newton") return SearchMode::kSupportNewton;
  if (name == "random-restart") return SearchMode::kRandomRestart;
  throw Error("unknown search mode '" + std::string(name) + "'");
}

std::string SearchModeName(SearchMode mode) {
  switch (mode) {
    case SearchMode::kCandidateFile: return "candidate-file";
    case SearchMode::kPureEnumeration: return "pure-enumeration";
    case SearchMode::kSupportNewton: return "support-newton";
    case SearchMode::kRandomRestart: return "random-restart";
  }
  return "unknown";
}

SearchResult SearchConstrainedNe(const Game& g, const Thresholds& bounds,
                                 const Rational& eps, const SearchConfig& cfg) {
  RequireValidGame(g);
  if (cfg.budget < 1) throw Error("search budget must be at least 1");
  if (eps <= 0) throw Error("search needs epsilon > 0");
  if (bounds.lower.size() != static_cast<size_t>(g.num_players()) ||
      bounds.upper.size() != static_cast<size_t>(g.num_players())) {
    throw Error("thresholds must cover every player");
  }
  Searcher s(g, bounds, eps, cfg);
  switch (cfg.mode) {
    case SearchMode::kCandidateFile:
      for (const auto& c : cfg.candidates) {
        if (s.Exhausted() || s.Try(c)) break;
      }
      break;
    case SearchMode::kPureEnumeration:
      PureEnumeration(g, &s);
      break;
    case SearchMode::kSupportNewton:
      SupportIteration(g, bounds, eps, cfg, &s);
      break;
    case SearchMode::kRandomRestart:
      RandomRestart(g, cfg, &s);
      break;
  }
  return std::move(s.result());
}

}  // namespace sgne
