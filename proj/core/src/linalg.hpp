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

#ifndef SGNE_SRC_LINALG_HPP_
#define SGNE_SRC_LINALG_HPP_

#include <map>
#include <optional>
#include <vector>

#include "sgne/rational.hpp"

namespace sgne::internal {

using SparseRow = std::map<int, Rational>;
using DenseMatrix = std::vector<std::vector<Rational>>;

// Solves A X = B exactly, where A is n x n given by sparse rows and B is
// n x k. Returns nullopt if A is singular.
std::optional<DenseMatrix> SolveSparse(std::vector<SparseRow> a,
                                       DenseMatrix b);

// Indices of a maximal linearly independent subset of the rows of `m`,
// chosen greedily in row order.
std::vector<int> IndependentRows(const DenseMatrix& m);

// Minimum-norm solution x = J_r^T (J_r J_r^T)^-1 b_r of J x = b restricted to
// the independent rows J_r of J. Exact when the system is consistent.
std::vector<Rational> MinNormSolve(const DenseMatrix& j,
                                   const std::vector<Rational>& b);

}  // namespace sgne::internal

#endif  // SGNE_SRC_LINALG_HPP_
