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


#include "osp/osp1d.h"

#include <algorithm>
#include <deque>
#include <map>
#include <numeric>
#include <stdexcept>
#include <tuple>

namespace osp {

Micron RowWidthSymmetric(std::span<const CharacterCandidate> row) {
  Micron width = 0;
  Micron max_slack = 0;
  for (const CharacterCandidate& c : row) {
    width += c.width() - c.slack();
    max_slack = std::max(max_slack, c.slack());
  }
  return row.empty() ? 0 : width + max_slack;
}

std::vector<int> CanonicalRowOrder(std::span<const CharacterCandidate> row) {
  std::vector<int> order(row.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (row[a].slack() != row[b].slack()) return row[a].slack() > row[b].slack();
    return row[a].id < row[b].id;
  });
  return order;
}

RowOrder GreedyRowOrderIndices(std::span<const CharacterCandidate> row) {
  RowOrder result;
  if (row.empty()) return result;
  const std::vector<int> canonical = CanonicalRowOrder(row);
  std::deque<int> packed = {canonical[0]};
  Micron width = row[canonical[0]].width();
  Micron left = row[canonical[0]].blank_left;
  Micron right = row[canonical[0]].blank_right;
  for (size_t k = 1; k < canonical.size(); ++k) {
    const CharacterCandidate& c = row[canonical[k]];
    const Micron overlap_left = std::min(c.blank_right, left);
    const Micron overlap_right = std::min(c.blank_left, right);
    if (overlap_left > overlap_right) {
      packed.push_front(canonical[k]);
      width += c.width() - overlap_left;
      left = c.blank_left;
    } else {
      packed.push_back(canonical[k]);
      width += c.width() - overlap_right;
      right = c.blank_right;
    }
  }
  result.order.assign(packed.begin(), packed.end());
  result.width = width;
  return result;
}

std::vector<RowSlot> GreedyRowOrder(std::span<const CharacterCandidate> row) {
  const RowOrder greedy = GreedyRowOrderIndices(row);
  std::vector<RowSlot> slots;
  Micron x = 0;
  for (size_t k = 0; k < greedy.order.size(); ++k) {
    const CharacterCandidate& c = row[greedy.order[k]];
    if (k > 0) x += HorizontalPitch(row[greedy.order[k - 1]], c);
    slots.push_back({c.id, x});
  }
  return slots;
}

RowTriplet MeasureRow(std::span<const CharacterCandidate> row,
                      std::span<const int> order) {
  RowTriplet t;
  if (order.empty()) return t;
  for (size_t k = 0; k + 1 < order.size(); ++k) {
    t.width += HorizontalPitch(row[order[k]], row[order[k + 1]]);
  }
  t.width += row[order.back()].width();
  t.left = row[order.front()].blank_left;
  t.right = row[order.back()].blank_right;
  return t;
}

std::vector<RowSlot> LayoutRow(std::span<const CharacterCandidate> row,
                               std::span<const int> order,
                               Micron stencil_width) {
  std::vector<RowSlot> slots;
  if (order.empty()) return slots;
  const RowTriplet t = MeasureRow(row, order);
  Micron x = std::min<Micron>(0, stencil_width - (t.width - t.right));
  for (size_t k = 0; k < order.size(); ++k) {
    if (k > 0) x += HorizontalPitch(row[order[k - 1]], row[order[k]]);
    slots.push_back({row[order[k]].id, x});
  }
  return slots;
}

namespace {

bool TripletOrder(const RowTriplet& a, const RowTriplet& b) {
  return std::tie(a.width, b.left, b.right) < std::tie(b.width, a.left, a.right);
}

bool Dominates(const RowTriplet& a, const RowTriplet& b) {
  return a.width <= b.width && a.left >= b.left && a.right >= b.right;
}

// Stable Pareto filter over items carrying a triplet. Input order breaks ties
// between identical triplets.
template <typename T, typename Get>
std::vector<T> FilterFrontier(std::vector<T> items, Get get) {
  std::stable_sort(items.begin(), items.end(), [&](const T& a, const T& b) {
    return TripletOrder(get(a), get(b));
  });
  std::vector<T> kept;
  for (T& item : items) {
    bool dominated = false;
    for (const T& k : kept) {
      if (Dominates(get(k), get(item))) {
        dominated = true;
        break;
      }
    }
    if (!dominated) kept.push_back(std::move(item));
  }
  return kept;
}

}  // namespace

std::vector<RowTriplet> ParetoFrontier(std::vector<RowTriplet> triplets) {
  return FilterFrontier(std::move(triplets),
                        [](const RowTriplet& t) -> const RowTriplet& { return t; });
}

RefinedRow RefineRow(std::span<const CharacterCandidate> row, size_t cap,
                     RefineObjective objective) {
  RefinedRow result;
  if (row.empty()) return result;
  const std::vector<int> canonical = CanonicalRowOrder(row);

  struct Node {
    int parent;
    bool left;
  };
  struct Partial {
    RowTriplet triplet;
    int node;
  };
  std::vector<Node> nodes = {{-1, false}};
  const CharacterCandidate& first = row[canonical[0]];
  std::vector<Partial> partials = {
      {{first.width(), first.blank_left, first.blank_right}, 0}};
  result.peak_solutions = 1;

  for (size_t k = 1; k < canonical.size(); ++k) {
    const CharacterCandidate& c = row[canonical[k]];
    std::vector<Partial> next;
    next.reserve(partials.size() * 2);
    for (const Partial& p : partials) {
      const RowTriplet& t = p.triplet;
      nodes.push_back({p.node, false});
      next.push_back({{t.width + c.width() - std::min(c.blank_left, t.right),
                       t.left, c.blank_right},
                      static_cast<int>(nodes.size()) - 1});
      nodes.push_back({p.node, true});
      next.push_back({{t.width + c.width() - std::min(c.blank_right, t.left),
                       c.blank_left, t.right},
                      static_cast<int>(nodes.size()) - 1});
    }
    partials = FilterFrontier(
        std::move(next), [](const Partial& p) -> const RowTriplet& { return p.triplet; });
    if (partials.size() > cap) partials.resize(cap);
    result.peak_solutions = std::max(result.peak_solutions, partials.size());
  }

  auto better = [objective](const RowTriplet& a, const RowTriplet& b) {
    if (objective == RefineObjective::kMinSpan) {
      if (a.span() != b.span()) return a.span() < b.span();
      return a.width < b.width;
    }
    if (a.width != b.width) return a.width < b.width;
    return a.left + a.right > b.left + b.right;
  };
  const Partial* best = &partials.front();
  for (const Partial& p : partials) {
    if (better(p.triplet, best->triplet)) best = &p;
  }
  result.triplet = best->triplet;

  result.insert_left.assign(canonical.size(), false);
  int node = best->node;
  for (size_t k = canonical.size(); k-- > 1;) {
    result.insert_left[k] = nodes[node].left;
    node = nodes[node].parent;
  }
  std::deque<int> packed = {canonical[0]};
  for (size_t k = 1; k < canonical.size(); ++k) {
    if (result.insert_left[k]) {
      packed.push_front(canonical[k]);
    } else {
      packed.push_back(canonical[k]);
    }
  }
  result.order.assign(packed.begin(), packed.end());
  return result;
}

LpProblem BuildSimplifiedLp(const Instance& instance,
                            std::span<const double> profits) {
  const int n = static_cast<int>(instance.candidates.size());
  const int rows = instance.row_count;
  if (static_cast<int>(profits.size()) != n) {
    throw std::invalid_argument("profit vector length must match candidates");
  }
  Micron max_slack = 0;
  for (const CharacterCandidate& c : instance.candidates) {
    max_slack = std::max(max_slack, c.slack());
  }
  LpProblem lp;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < rows; ++j) lp.AddVariable(profits[i], 0.0, 1.0);
  }
  for (int j = 0; j < rows; ++j) {
    lp.AddVariable(0.0, 0.0, static_cast<double>(max_slack));
  }
  for (int j = 0; j < rows; ++j) {
    std::vector<LpTerm> terms;
    for (int i = 0; i < n; ++i) {
      const CharacterCandidate& c = instance.candidates[i];
      terms.push_back({AssignVar(i, j, rows),
                       static_cast<double>(c.width() - c.slack())});
    }
    terms.push_back({RowBlankVar(j, n, rows), 1.0});
    lp.AddConstraint(std::move(terms),
                     static_cast<double>(instance.stencil_width));
  }
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < rows; ++j) {
      lp.AddConstraint(
          {{AssignVar(i, j, rows),
            static_cast<double>(instance.candidates[i].slack())},
           {RowBlankVar(j, n, rows), -1.0}},
          0.0);
    }
  }
  for (int i = 0; i < n; ++i) {
    std::vector<LpTerm> terms;
    for (int j = 0; j < rows; ++j) terms.push_back({AssignVar(i, j, rows), 1.0});
    lp.AddConstraint(std::move(terms), 1.0);
  }
  return lp;
}

RowAssignment RowAssignment::Empty(const Instance& instance) {
  RowAssignment a;
  a.rows.assign(instance.row_count, {});
  a.used.assign(instance.row_count, 0);
  a.max_slack.assign(instance.row_count, 0);
  a.row_of.assign(instance.candidates.size(), -1);
  return a;
}

bool RowAssignment::Fits(const Instance& instance, int candidate,
                         int row) const {
  if (row_of[candidate] >= 0) return false;
  const CharacterCandidate& c = instance.candidates[candidate];
  return used[row] + (c.width() - c.slack()) +
             std::max(max_slack[row], c.slack()) <=
         instance.stencil_width;
}

void RowAssignment::Assign(const Instance& instance, int candidate, int row) {
  const CharacterCandidate& c = instance.candidates[candidate];
  rows[row].push_back(candidate);
  used[row] += c.width() - c.slack();
  max_slack[row] = std::max(max_slack[row], c.slack());
  row_of[candidate] = row;
}

std::vector<CandidateId> RowAssignment::SelectedIds(
    const Instance& instance) const {
  std::vector<CandidateId> ids;
  for (const auto& row : rows) {
    for (int i : row) ids.push_back(instance.candidates[i].id);
  }
  return ids;
}

std::string CheckAssignment(const Instance& instance,
                            const RowAssignment& assignment) {
  std::vector<int> seen(instance.candidates.size(), 0);
  for (size_t j = 0; j < assignment.rows.size(); ++j) {
    Micron used = 0;
    Micron blank = 0;
    for (int i : assignment.rows[j]) {
      if (++seen[i] > 1) {
        return "candidate " + std::to_string(instance.candidates[i].id) +
               " assigned to more than one row";
      }
      const CharacterCandidate& c = instance.candidates[i];
      used += c.width() - c.slack();
      blank = std::max(blank, c.slack());
    }
    if (used + blank > instance.stencil_width) {
      return "row " + std::to_string(j) + " exceeds capacity";
    }
    if (used != assignment.used[j] || blank != assignment.max_slack[j]) {
      return "row " + std::to_string(j) + " bookkeeping out of date";
    }
  }
  return "";
}

namespace {

struct RowClass {
  Micron used;
  Micron max_slack;
  std::vector<int> rows;
};

// Groups rows with identical state. Identical rows admit a symmetric LP
// optimum, so each group is solved as a single aggregated row whose
// capacity and blank budget scale with the group size.
std::vector<RowClass> GroupRows(const RowAssignment& assignment) {
  std::map<std::pair<Micron, Micron>, std::vector<int>> groups;
  for (size_t j = 0; j < assignment.rows.size(); ++j) {
    groups[{assignment.used[j], assignment.max_slack[j]}].push_back(
        static_cast<int>(j));
  }
  std::vector<RowClass> classes;
  for (auto& [key, rows] : groups) {
    classes.push_back({key.first, key.second, std::move(rows)});
  }
  return classes;
}

struct PairValue {
  double value;
  int candidate;
  int row;
};

}  // namespace

RowAssignment SuccRounding(const Instance& instance,
                           const SuccRoundingOptions& options,
                           SuccRoundingStats* stats) {
  if (!(options.th_inv > 0.0 && options.th_inv <= 1.0)) {
    throw std::invalid_argument("th_inv must lie in (0, 1]");
  }
  SuccRoundingStats local_stats;
  SuccRoundingStats& st = stats != nullptr ? *stats : local_stats;
  st = {};
  const int n = static_cast<int>(instance.candidates.size());
  RowAssignment assignment = RowAssignment::Empty(instance);
  Micron max_slack = 0;
  for (const CharacterCandidate& c : instance.candidates) {
    max_slack = std::max(max_slack, c.slack());
  }
  constexpr double kValueFloor = 1e-9;

  while (true) {
    ++st.outer_iterations;
    const std::vector<double> profits = ComputeProfits(
        instance, Evaluate(instance, assignment.SelectedIds(instance)));

    // Relaxation over the free pairs, one aggregated row per class.
    const std::vector<RowClass> classes = GroupRows(assignment);
    LpProblem lp;
    struct ClassVar {
      int candidate;
      int cls;
      int var;
    };
    std::vector<ClassVar> class_vars;
    std::vector<std::vector<LpTerm>> single_row(n);
    for (size_t k = 0; k < classes.size(); ++k) {
      const RowClass& cls = classes[k];
      const double mult = static_cast<double>(cls.rows.size());
      const int representative = cls.rows.front();
      std::vector<LpTerm> capacity;
      std::vector<std::pair<int, int>> members;
      for (int i = 0; i < n; ++i) {
        if (!assignment.Fits(instance, i, representative)) continue;
        const int var = lp.AddVariable(profits[i], 0.0, 1.0);
        class_vars.push_back({i, static_cast<int>(k), var});
        single_row[i].push_back({var, 1.0});
        const CharacterCandidate& c = instance.candidates[i];
        capacity.push_back({var, static_cast<double>(c.width() - c.slack())});
        members.emplace_back(i, var);
      }
      if (members.empty()) continue;
      const int blank = lp.AddVariable(0.0, static_cast<double>(cls.max_slack),
                                       static_cast<double>(max_slack));
      capacity.push_back({blank, mult});
      lp.AddConstraint(std::move(capacity),
                       mult * static_cast<double>(instance.stencil_width - cls.used));
      for (auto [i, var] : members) {
        const Micron s = instance.candidates[i].slack();
        if (s <= cls.max_slack) continue;  // implied by the blank's lower bound
        lp.AddConstraint({{var, static_cast<double>(s)}, {blank, -mult}}, 0.0);
      }
    }
    if (class_vars.empty()) break;
    for (int i = 0; i < n; ++i) {
      if (single_row[i].size() > 1) lp.AddConstraint(std::move(single_row[i]), 1.0);
    }

    const LpSolution solution = SolveLp(lp, options.lp);
    ++st.lp_solves;
    st.lp_iterations += solution.iterations;
    if (solution.status != LpStatus::kOptimal) {
      throw std::logic_error(std::string("rounding relaxation not solved: ") +
                             LpStatusName(solution.status));
    }
    if (st.lp_solves == 1) st.first_lp_objective = solution.objective;

    std::vector<PairValue> pairs;
    for (const ClassVar& cv : class_vars) {
      const RowClass& cls = classes[cv.cls];
      const double value =
          solution.x[cv.var] / static_cast<double>(cls.rows.size());
      if (value <= kValueFloor) continue;
      for (int row : cls.rows) pairs.push_back({value, cv.candidate, row});
    }
    std::sort(pairs.begin(), pairs.end(), [](const PairValue& a, const PairValue& b) {
      return std::tie(b.value, a.candidate, a.row) <
             std::tie(a.value, b.candidate, b.row);
    });

    int fixed = 0;
    size_t cursor = 0;
    while (true) {
      while (cursor < pairs.size() &&
             !assignment.Fits(instance, pairs[cursor].candidate, pairs[cursor].row)) {
        ++cursor;
      }
      if (cursor == pairs.size()) break;
      const double threshold = pairs[cursor].value * options.th_inv;
      for (size_t p = cursor; p < pairs.size() && pairs[p].value >= threshold - 1e-12;
           ++p) {
        if (!assignment.Fits(instance, pairs[p].candidate, pairs[p].row)) continue;
        assignment.Assign(instance, pairs[p].candidate, pairs[p].row);
        ++fixed;
        if (options.observer) options.observer(assignment);
      }
    }
    if (fixed == 0) break;
  }
  return assignment;
}

namespace {

std::vector<CharacterCandidate> Gather(const Instance& instance,
                                       std::span<const int> indices) {
  std::vector<CharacterCandidate> out;
  out.reserve(indices.size());
  for (int i : indices) out.push_back(instance.candidates[i]);
  return out;
}

std::vector<int> MapOrder(std::span<const int> indices,
                          std::span<const int> order) {
  std::vector<int> mapped;
  mapped.reserve(order.size());
  for (int k : order) mapped.push_back(indices[k]);
  return mapped;
}

RowTriplet TripletOf(const Instance& instance, std::span<const int> row) {
  RowTriplet t;
  if (row.empty()) return t;
  for (size_t k = 0; k + 1 < row.size(); ++k) {
    t.width += HorizontalPitch(instance.candidates[row[k]],
                               instance.candidates[row[k + 1]]);
  }
  t.width += instance.candidates[row.back()].width();
  t.left = instance.candidates[row.front()].blank_left;
  t.right = instance.candidates[row.back()].blank_right;
  return t;
}

}  // namespace

std::vector<int> LegalizeRow(const Instance& instance,
                             std::span<const double> profits,
                             std::vector<int>& row) {
  std::vector<int> removed;
  while (!row.empty()) {
    const std::vector<CharacterCandidate> members = Gather(instance, row);
    const RowOrder greedy = GreedyRowOrderIndices(members);
    const RowTriplet t = MeasureRow(members, greedy.order);
    if (t.span() <= instance.stencil_width) {
      row = MapOrder(row, greedy.order);
      break;
    }
    auto worst = std::min_element(row.begin(), row.end(), [&](int a, int b) {
      if (profits[a] != profits[b]) return profits[a] < profits[b];
      return instance.candidates[a].id > instance.candidates[b].id;
    });
    removed.push_back(*worst);
    row.erase(worst);
  }
  return removed;
}

void GreedyInsertion(const Instance& instance,
                     std::vector<std::vector<int>>& rows) {
  const int n = static_cast<int>(instance.candidates.size());
  std::vector<char> selected(n, 0);
  std::vector<CandidateId> ids;
  for (const auto& row : rows) {
    for (int i : row) {
      selected[i] = 1;
      ids.push_back(instance.candidates[i].id);
    }
  }
  WritingTimeReport report = Evaluate(instance, ids);
  std::vector<RowTriplet> shapes;
  for (const auto& row : rows) shapes.push_back(TripletOf(instance, row));
  std::vector<char> blocked(n, 0);
  const Micron limit = instance.stencil_width;

  while (true) {
    const std::vector<double> profits = ComputeProfits(instance, report);
    std::vector<int> order;
    for (int i = 0; i < n; ++i) {
      if (!selected[i] && !blocked[i] && profits[i] > 0.0) order.push_back(i);
    }
    std::sort(order.begin(), order.end(), [&](int a, int b) {
      if (profits[a] != profits[b]) return profits[a] > profits[b];
      return instance.candidates[a].id < instance.candidates[b].id;
    });
    bool inserted = false;
    for (int i : order) {
      const CharacterCandidate& c = instance.candidates[i];
      int best_row = -1;
      bool best_left = false;
      RowTriplet best_shape;
      Micron best_growth = 0;
      for (size_t j = 0; j < rows.size(); ++j) {
        const RowTriplet& t = shapes[j];
        auto consider = [&](const RowTriplet& shape, bool left) {
          if (shape.span() > limit) return;
          const Micron growth = shape.span() - t.span();
          if (best_row < 0 || growth < best_growth) {
            best_row = static_cast<int>(j);
            best_left = left;
            best_shape = shape;
            best_growth = growth;
          }
        };
        if (rows[j].empty()) {
          consider({c.width(), c.blank_left, c.blank_right}, false);
          continue;
        }
        consider({t.width + c.width() - std::min(c.blank_left, t.right), t.left,
                  c.blank_right},
                 false);
        consider({t.width + c.width() - std::min(c.blank_right, t.left),
                  c.blank_left, t.right},
                 true);
      }
      if (best_row < 0) {
        blocked[i] = 1;
        continue;
      }
      auto& row = rows[best_row];
      if (best_left) {
        row.insert(row.begin(), i);
      } else {
        row.push_back(i);
      }
      shapes[best_row] = best_shape;
      selected[i] = 1;
      ids.push_back(c.id);
      report = Evaluate(instance, ids);
      inserted = true;
      break;
    }
    if (!inserted) break;
  }
}

Placement1D MakePlacement1D(const Instance& instance,
                            const std::vector<std::vector<int>>& rows) {
  Placement1D placement;
  placement.rows.resize(std::max<size_t>(rows.size(), instance.row_count));
  for (size_t j = 0; j < rows.size(); ++j) {
    const std::vector<CharacterCandidate> members = Gather(instance, rows[j]);
    std::vector<int> order(members.size());
    std::iota(order.begin(), order.end(), 0);
    placement.rows[j] = LayoutRow(members, order, instance.stencil_width);
  }
  return placement;
}

Solve1DResult Solve1D(const Instance& instance, const Solve1DParams& params) {
  if (instance.mode != Mode::k1D) {
    throw ValidationError("1D solver requires a 1d instance");
  }
  Solve1DResult result;
  SuccRoundingOptions rounding;
  rounding.th_inv = params.th_inv;
  rounding.lp = params.lp;
  const RowAssignment assignment = SuccRounding(instance, rounding, &result.rounding);

  const std::vector<double> profits = ComputeProfits(
      instance, Evaluate(instance, assignment.SelectedIds(instance)));
  std::vector<std::vector<int>> rows = assignment.rows;
  std::vector<CandidateId> ids;
  for (auto& row : rows) {
    result.legalized_out += static_cast<int>(LegalizeRow(instance, profits, row).size());
    for (int i : row) ids.push_back(instance.candidates[i].id);
  }
  result.rounding_total = Evaluate(instance, ids).total;

  for (auto& row : rows) {
    if (row.size() < 2) continue;
    const std::vector<CharacterCandidate> members = Gather(instance, row);
    const RefinedRow refined =
        RefineRow(members, params.refine_cap, RefineObjective::kMinSpan);
    if (refined.triplet.span() <= TripletOf(instance, row).span()) {
      row = MapOrder(row, refined.order);
    }
  }

  size_t before = 0;
  for (const auto& row : rows) before += row.size();
  GreedyInsertion(instance, rows);
  size_t after = 0;
  for (const auto& row : rows) after += row.size();
  result.inserted = static_cast<int>(after - before);

  result.placement = MakePlacement1D(instance, rows);
  result.report = Evaluate(instance, result.placement.SelectedIds());
  return result;
}

}  // namespace osp
