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

#include "linalg.hpp"

#include <cstddef>
#include <utility>

namespace sgne::internal {

std::optional<DenseMatrix> SolveSparse(std::vector<SparseRow> a,
                                       DenseMatrix b) {
  const int n = static_cast<int>(a.size());
  const size_t k = b.empty() ? 0 : b[0].size();
  std::vector<int> pivot_of_col(n, -1);
  std::vector<bool> used(n, false);

  // Column -> rows that currently hold a nonzero in it.
  std::vector<std::map<int, bool>> col_rows(n);
  for (int r = 0; r < n; ++r) {
    for (const auto& [c, v] : a[r]) col_rows[c][r] = true;
  }

  for (int col = 0; col < n; ++col) {
    int pivot = -1;
    size_t best = 0;
    for (const auto& [r, unused] : col_rows[col]) {
      if (used[r]) continue;
      if (pivot < 0 || a[r].size() < best) {
        pivot = r;
        best = a[r].size();
      }
    }
    if (pivot < 0) return std::nullopt;
    used[pivot] = true;
    pivot_of_col[col] = pivot;
    const Rational pv = a[pivot].at(col);

    std::vector<int> targets;
    for (const auto& [r, unused] : col_rows[col]) {
      if (r != pivot) targets.push_back(r);
    }
    for (int r : targets) {
      Rational factor = a[r].at(col) / pv;
      for (const auto& [c, v] : a[pivot]) {
        Rational updated = a[r][c] - factor * v;
        if (updated == 0) {
          a[r].erase(c);
          col_rows[c].erase(r);
        } else {
          a[r][c] = updated;
          col_rows[c][r] = true;
        }
      }
      for (size_t j = 0; j < k; ++j) {
        if (b[pivot][j] != 0) b[r][j] -= factor * b[pivot][j];
      }
    }
  }

  DenseMatrix x(n, std::vector<Rational>(k));
  for (int col = 0; col < n; ++col) {
    const int r = pivot_of_col[col];
    const Rational& pv = a[r].at(col);
    for (size_t j = 0; j < k; ++j) x[col][j] = b[r][j] / pv;
  }
  return x;
}

std::vector<int> IndependentRows(const DenseMatrix& m) {
  std::vector<int> chosen;
  std::vector<std::vector<Rational>> basis;  // reduced copies of chosen rows
  std::vector<size_t> lead;
  for (size_t r = 0; r < m.size(); ++r) {
    std::vector<Rational> v = m[r];
    for (size_t i = 0; i < basis.size(); ++i) {
      if (v[lead[i]] == 0) continue;
      Rational f = v[lead[i]] / basis[i][lead[i]];
      for (size_t c = 0; c < v.size(); ++c) v[c] -= f * basis[i][c];
    }
    size_t c = 0;
    while (c < v.size() && v[c] == 0) ++c;
    if (c == v.size()) continue;
    chosen.push_back(static_cast<int>(r));
    basis.push_back(std::move(v));
    lead.push_back(c);
  }
  return chosen;
}

std::vector<Rational> MinNormSolve(const DenseMatrix& j,
                                   const std::vector<Rational>& b) {
  const size_t cols = j.empty() ? 0 : j[0].size();
  std::vector<Rational> x(cols);
  std::vector<int> rows = IndependentRows(j);
  if (rows.empty()) return x;
  const size_t r = rows.size();
  std::vector<SparseRow> gram(r);
  for (size_t p = 0; p < r; ++p) {
    for (size_t q = 0; q < r; ++q) {
      Rational s = 0;
      for (size_t c = 0; c < cols; ++c) s += j[rows[p]][c] * j[rows[q]][c];
      if (s != 0) gram[p][static_cast<int>(q)] = s;
    }
  }
  DenseMatrix rhs(r, std::vector<Rational>(1));
  for (size_t p = 0; p < r; ++p) rhs[p][0] = b[rows[p]];
  std::optional<DenseMatrix> y = SolveSparse(std::move(gram), std::move(rhs));
  if (!y) return x;  // cannot happen for independent rows
  for (size_t p = 0; p < r; ++p) {
    for (size_t c = 0; c < cols; ++c) x[c] += j[rows[p]][c] * (*y)[p][0];
  }
  return x;
}

}  // namespace sgne::internal
