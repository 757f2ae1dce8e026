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


// Row-structured stencil planning: symmetric-blank row ordering, the
// simplified assignment program and its successive LP rounding, exact
// left/right insertion refinement, and greedy insertion of leftovers.

#ifndef OSP_OSP1D_H_
#define OSP_OSP1D_H_

#include <functional>
#include <span>
#include <vector>

#include "osp/evaluate.h"
#include "osp/lp.h"
#include "osp/model.h"

namespace osp {

// Width of a row packed under the symmetric-blank model:
// sum(w_i) - (sum(s_i) - max(s_i)). Zero for an empty row.
Micron RowWidthSymmetric(std::span<const CharacterCandidate> row);

// Indices of `row` sorted by decreasing symmetric slack, ties by ascending id.
std::vector<int> CanonicalRowOrder(std::span<const CharacterCandidate> row);

// Left-to-right order of `row` (indices) and its true width.
struct RowOrder {
  std::vector<int> order;
  Micron width = 0;
};

// Inserts the candidates in canonical order, each at whichever end of the
// partial row gives the larger true overlap (right on ties). Under symmetric
// blanks every choice reaches RowWidthSymmetric.
RowOrder GreedyRowOrderIndices(std::span<const CharacterCandidate> row);

// GreedyRowOrderIndices laid out from x = 0.
std::vector<RowSlot> GreedyRowOrder(std::span<const CharacterCandidate> row);

// Width, exposed left blank and exposed right blank of a packed row.
struct RowTriplet {
  Micron width = 0;
  Micron left = 0;
  Micron right = 0;

  // Extent of the patterns alone; what must fit the stencil width.
  Micron span() const { return width - left - right; }
  friend bool operator==(const RowTriplet&, const RowTriplet&) = default;
};

// True width and exposed blanks of `order` packed tightly.
RowTriplet MeasureRow(std::span<const CharacterCandidate> row,
                      std::span<const int> order);

// Tight left-to-right positions for `order`. The first box starts at 0 unless
// the row is wider than `stencil_width`, in which case it is shifted left so
// the last pattern ends at the stencil edge.
std::vector<RowSlot> LayoutRow(std::span<const CharacterCandidate> row,
                               std::span<const int> order,
                               Micron stencil_width);

enum class RefineObjective { kMinWidth, kMinSpan };

struct RefinedRow {
  RowTriplet triplet;
  // One bit per candidate in canonical order: true when it was added at the
  // left end. The first candidate's bit is always false.
  std::vector<bool> insert_left;
  // Resulting left-to-right order (indices into the row).
  std::vector<int> order;
  // Largest partial-solution set held after pruning.
  size_t peak_solutions = 0;
};

// Dynamic program over the 2^(k-1) left/right insertion choices of the
// canonical order. Partial solutions dominated in (width, left, right) are
// pruned; when the set still exceeds `cap` the widest are dropped. kMinWidth
// breaks ties toward the larger left + right; kMinSpan toward the smaller
// width.
RefinedRow RefineRow(std::span<const CharacterCandidate> row, size_t cap = 4096,
                     RefineObjective objective = RefineObjective::kMinWidth);

// Pareto filter used by RefineRow: drops every triplet for which another has
// width <=, left >= and right >= with at least one strict, and keeps one copy
// of exact duplicates (the first).
std::vector<RowTriplet> ParetoFrontier(std::vector<RowTriplet> triplets);

// Variable layout of the simplified program: a_ij at i * rows + j, then B_j at
// n * rows + j.
inline int AssignVar(int candidate, int row, int rows) {
  return candidate * rows + row;
}
inline int RowBlankVar(int row, int candidates, int rows) {
  return candidates * rows + row;
}

// LP relaxation of the simplified assignment program:
//   max sum_ij profit_i a_ij
//   sum_i (w_i - s_i) a_ij + B_j <= W      for each row j
//   s_i a_ij - B_j <= 0                     for each i, j
//   sum_j a_ij <= 1                         for each i
//   0 <= a_ij <= 1, 0 <= B_j <= max_i s_i.
LpProblem BuildSimplifiedLp(const Instance& instance,
                            std::span<const double> profits);

// Rows of the simplified program in the middle of rounding.
struct RowAssignment {
  // Candidate indices per row, in assignment order.
  std::vector<std::vector<int>> rows;
  // sum (w_i - s_i) over each row.
  std::vector<Micron> used;
  // B_j: largest symmetric slack in each row (0 when empty).
  std::vector<Micron> max_slack;
  // Row of each candidate, -1 when unassigned.
  std::vector<int> row_of;

  static RowAssignment Empty(const Instance& instance);
  // Whether the candidate can join row j without breaking the capacity rule
  // used + (w - s) + max(B_j, s) <= W.
  bool Fits(const Instance& instance, int candidate, int row) const;
  void Assign(const Instance& instance, int candidate, int row);
  std::vector<CandidateId> SelectedIds(const Instance& instance) const;
};

// Checks the capacity, blank and single-row rules exactly. Returns an empty
// string when all hold, else a description of the first failure.
std::string CheckAssignment(const Instance& instance,
                            const RowAssignment& assignment);

struct SuccRoundingOptions {
  double th_inv = 0.9;
  SimplexOptions lp;
  // Called after every variable fixed to 1.
  std::function<void(const RowAssignment&)> observer;
};

struct SuccRoundingStats {
  int outer_iterations = 0;
  int lp_solves = 0;
  int64_t lp_iterations = 0;
  // Objective of the first relaxation (profits at the all-VSB state).
  double first_lp_objective = 0.0;
};

// Successive LP rounding of the simplified program. Each outer iteration
// refreshes profits from the current selection, solves the relaxation over
// still-free pairs (pairs whose candidate cannot fit the row are pinned to 0),
// and then repeatedly fixes every fitting pair whose value is at least
// th_inv times the largest fitting value. Stops when an iteration fixes
// nothing. Throws std::logic_error if a relaxation fails to solve.
RowAssignment SuccRounding(const Instance& instance,
                           const SuccRoundingOptions& options,
                           SuccRoundingStats* stats = nullptr);

// Removes the lowest-profit candidates from a row (indices into `instance`)
// until its greedy order fits the stencil width. Returns the removed ones.
std::vector<int> LegalizeRow(const Instance& instance,
                             std::span<const double> profits,
                             std::vector<int>& row);

// Tries, in decreasing current profit, to append each unselected candidate at
// the end of some row that keeps the pattern span within W, choosing the end
// with the smallest span increase. Profits are refreshed after every
// insertion. Rows are left-to-right candidate indices.
void GreedyInsertion(const Instance& instance,
                     std::vector<std::vector<int>>& rows);

// Converts left-to-right index rows to a placement with tight positions.
Placement1D MakePlacement1D(const Instance& instance,
                            const std::vector<std::vector<int>>& rows);

struct Solve1DParams {
  double th_inv = 0.9;
  size_t refine_cap = 4096;
  SimplexOptions lp;
};

struct Solve1DResult {
  Placement1D placement;
  WritingTimeReport report;
  // Writing time after rounding and greedy ordering, before refinement.
  ShotCount rounding_total = 0;
  // Candidates removed to make greedy-ordered rows fit.
  int legalized_out = 0;
  int inserted = 0;
  SuccRoundingStats rounding;
};

// Rounding, greedy ordering, refinement, greedy insertion and evaluation.
// Throws ValidationError for a 2D instance.
Solve1DResult Solve1D(const Instance& instance, const Solve1DParams& params = {});

}  // namespace osp

#endif  // OSP_OSP1D_H_
