// Copyright 2026 The stencil-osp Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Exact solvers for desk-scale instances and the greedy baselines the
// pipelines are compared against. The exact solvers use integer geometry and
// exhaustive search, and share nothing with the heuristics beyond the
// evaluator and the pitch rule.

#ifndef OSP_ORACLE_H_
#define OSP_ORACLE_H_

#include <cstdint>
#include <span>
#include <vector>

#include "osp/model.h"

namespace osp {

template <typename Objective, typename Witness>
struct OracleResult {
  Objective optimum{};
  Witness witness{};
  int64_t explored = 0;
};

struct SelectionWitness {
  Placement1D placement;
  WritingTimeReport report;
};

struct Selection2DWitness {
  Placement2D placement;
  WritingTimeReport report;
};

// Minimum system writing time over every subset, row assignment and
// left-to-right order, with the pattern-containment row rule. Requires
// n <= 12 and rows <= 3; throws std::invalid_argument otherwise.
OracleResult<ShotCount, SelectionWitness> Exact1D(const Instance& instance);

// Per-candidate row (-1 for unselected).
using RowChoice = std::vector<int>;

// Multiple knapsack with item size w_i - s_i, profit profit_i and every row's
// capacity W - max_i s_i. Branch and bound; requires n <= 20, rows <= 3.
OracleResult<double, RowChoice> ExactKnapsack3Prime(const Instance& instance,
                                                    std::span<const double> profits);

// Integer optimum of the simplified program itself: a row holds a set when
// sum (w_i - s_i) + max s_i <= W. Same limits as ExactKnapsack3Prime.
OracleResult<double, RowChoice> ExactSimplified(const Instance& instance,
                                                std::span<const double> profits);

struct OrderingWitness {
  // Left-to-right order, indices into the row.
  std::vector<int> order;
  std::vector<bool> insert_left;
  Micron left = 0;
  Micron right = 0;
};

// Minimum width over every left/right insertion trace of the canonical
// order (decreasing symmetric slack, ties by id). Ties go to the larger
// left + right blank. Requires 1 <= k <= 20.
OracleResult<Micron, OrderingWitness> ExactOrderings(
    std::span<const CharacterCandidate> row);

// Minimum width over every permutation of the row. Requires k <= 9.
Micron ExactPermutationWidth(std::span<const CharacterCandidate> row);

// Minimum system writing time over every subset and every assignment of a
// relative position (left, right, below, above) to each selected pair; the
// pitch constraints are then solved by longest paths. This covers all
// continuous placements. Requires n <= 6.
OracleResult<ShotCount, Selection2DWitness> Exact2D(const Instance& instance);

// Same optimum by enumerating box positions on a `grid_step` lattice.
// Exact for instances whose lengths are all multiples of grid_step.
// Requires n <= 3.
OracleResult<ShotCount, Selection2DWitness> Exact2DGrid(const Instance& instance,
                                                        Micron grid_step);

struct BaselineResult1D {
  Placement1D placement;
  WritingTimeReport report;
};

// Candidates sorted by profit / (w - s) at the all-VSB state, first-fit into
// rows under the simplified capacity rule, then greedily ordered; rows that
// still overflow lose their lowest-profit members.
BaselineResult1D GreedyBaseline1D(const Instance& instance);

struct BaselineResult2D {
  Placement2D placement;
  WritingTimeReport report;
};

// Candidates sorted by profit per unit box area, first-fit onto shelves that
// span the stencil width, shelves stacked bottom-up with overlap-aware
// pitches; characters whose pattern falls outside the stencil are dropped.
BaselineResult2D GreedyBaseline2D(const Instance& instance);

}  // namespace osp

#endif  // OSP_ORACLE_H_
