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


#include "osp/oracle.h"

#include <algorithm>
#include <bit>
#include <functional>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "osp/evaluate.h"
#include "osp/osp1d.h"
#include "osp/sequence_pair.h"

namespace osp {
namespace {

constexpr Micron kUnreached = std::numeric_limits<Micron>::max() / 4;

// Writing time of each subset (bit i = candidate i), computed directly.
std::vector<ShotCount> SubsetTotals(const Instance& instance) {
  const int n = static_cast<int>(instance.candidates.size());
  const int regions = instance.region_count;
  std::vector<ShotCount> vsb(regions, 0);
  for (const CharacterCandidate& c : instance.candidates) {
    for (int r = 0; r < regions; ++r) vsb[r] += c.usage[r] * c.vsb_shots;
  }
  std::vector<ShotCount> totals(size_t{1} << n);
  std::vector<ShotCount> t(regions);
  for (uint32_t mask = 0; mask < totals.size(); ++mask) {
    t = vsb;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) {
        for (int r = 0; r < regions; ++r) t[r] -= instance.candidates[i].reduction(r);
      }
    }
    totals[mask] = *std::max_element(t.begin(), t.end());
  }
  return totals;
}

std::vector<uint32_t> MasksByTotal(const std::vector<ShotCount>& totals) {
  std::vector<uint32_t> masks(totals.size());
  std::iota(masks.begin(), masks.end(), 0u);
  std::stable_sort(masks.begin(), masks.end(),
                   [&](uint32_t a, uint32_t b) { return totals[a] < totals[b]; });
  return masks;
}

std::vector<CandidateId> IdsOf(const Instance& instance, uint32_t mask) {
  std::vector<CandidateId> ids;
  for (size_t i = 0; i < instance.candidates.size(); ++i) {
    if (mask >> i & 1) ids.push_back(instance.candidates[i].id);
  }
  return ids;
}

}  // namespace

OracleResult<ShotCount, SelectionWitness> Exact1D(const Instance& instance) {
  const int n = static_cast<int>(instance.candidates.size());
  const int rows = instance.row_count;
  if (instance.mode != Mode::k1D || n > 12 || rows > 3) {
    throw std::invalid_argument("Exact1D needs a 1d instance with n <= 12, rows <= 3");
  }
  const auto& cand = instance.candidates;
  const size_t subsets = size_t{1} << n;
  OracleResult<ShotCount, SelectionWitness> result;

  // offset[mask][first][last]: least distance between the first and last box
  // origins over orders of `mask` with those ends.
  auto cell = [n](uint32_t mask, int first, int last) {
    return (static_cast<size_t>(mask) * n + first) * n + last;
  };
  std::vector<Micron> offset(subsets * n * n, kUnreached);
  std::vector<int8_t> parent(subsets * n * n, -1);
  for (int i = 0; i < n; ++i) offset[cell(1u << i, i, i)] = 0;
  for (uint32_t mask = 1; mask < subsets; ++mask) {
    for (int first = 0; first < n; ++first) {
      if (!(mask >> first & 1)) continue;
      for (int last = 0; last < n; ++last) {
        const Micron base = offset[cell(mask, first, last)];
        if (base == kUnreached) continue;
        for (int k = 0; k < n; ++k) {
          if (mask >> k & 1) continue;
          ++result.explored;
          const Micron pitch =
              cand[last].width() - std::min(cand[last].blank_right, cand[k].blank_left);
          const size_t to = cell(mask | 1u << k, first, k);
          if (base + pitch < offset[to]) {
            offset[to] = base + pitch;
            parent[to] = static_cast<int8_t>(last);
          }
        }
      }
    }
  }
  // Best (first, last) per subset by pattern span.
  std::vector<char> fits(subsets, 0);
  std::vector<std::pair<int, int>> ends(subsets, {-1, -1});
  fits[0] = 1;
  for (uint32_t mask = 1; mask < subsets; ++mask) {
    Micron best = kUnreached;
    for (int first = 0; first < n; ++first) {
      for (int last = 0; last < n; ++last) {
        const Micron o = offset[cell(mask, first, last)];
        if (o == kUnreached) continue;
        const Micron span = o + cand[last].blank_left + cand[last].pattern_width -
                            cand[first].blank_left;
        if (span < best) {
          best = span;
          ends[mask] = {first, last};
        }
      }
    }
    fits[mask] = best <= instance.stencil_width;
  }

  // packable[k][S]: S splits into at most k fitting rows; split[k][S] is the
  // row holding S's lowest member.
  std::vector<std::vector<char>> packable(rows + 1, std::vector<char>(subsets, 0));
  std::vector<std::vector<uint32_t>> split(rows + 1, std::vector<uint32_t>(subsets, 0));
  packable[0][0] = 1;
  for (int k = 1; k <= rows; ++k) {
    for (uint32_t s = 0; s < subsets; ++s) {
      if (packable[k - 1][s]) {
        packable[k][s] = 1;
        split[k][s] = 0;
        continue;
      }
      const uint32_t low = s & (~s + 1);
      for (uint32_t t = s; t != 0; t = (t - 1) & s) {
        if (!(t & low) || !fits[t] || !packable[k - 1][s ^ t]) continue;
        ++result.explored;
        packable[k][s] = 1;
        split[k][s] = t;
        break;
      }
    }
  }

  const std::vector<ShotCount> totals = SubsetTotals(instance);
  uint32_t best_mask = 0;
  for (uint32_t mask : MasksByTotal(totals)) {
    if (packable[rows][mask]) {
      best_mask = mask;
      break;
    }
  }
  result.optimum = totals[best_mask];

  Placement1D& placement = result.witness.placement;
  placement.rows.resize(rows);
  uint32_t rest = best_mask;
  for (int k = rows; k >= 1 && rest != 0; --k) {
    const uint32_t part = split[k][rest];
    if (part == 0) continue;
    rest ^= part;
    std::vector<int> order;
    auto [first, last] = ends[part];
    uint32_t mask = part;
    while (true) {
      order.push_back(last);
      const int prev = parent[cell(mask, first, last)];
      if (prev < 0) break;
      mask ^= 1u << last;
      last = prev;
    }
    std::reverse(order.begin(), order.end());
    Micron width = cand[order.back()].width();
    for (size_t q = 0; q + 1 < order.size(); ++q) {
      width += cand[order[q]].width() -
               std::min(cand[order[q]].blank_right, cand[order[q + 1]].blank_left);
    }
    Micron x = std::min<Micron>(
        0, instance.stencil_width - (width - cand[order.back()].blank_right));
    std::vector<RowSlot>& row = placement.rows[rows - k];
    for (size_t q = 0; q < order.size(); ++q) {
      if (q > 0) {
        x += cand[order[q - 1]].width() -
             std::min(cand[order[q - 1]].blank_right, cand[order[q]].blank_left);
      }
      row.push_back({cand[order[q]].id, x});
    }
  }
  result.witness.report = Evaluate(instance, IdsOf(instance, best_mask));
  return result;
}

namespace {

enum class CapacityRule { kFixedBlank, kRowBlank };

OracleResult<double, RowChoice> KnapsackSearch(const Instance& instance,
                                               std::span<const double> profits,
                                               CapacityRule rule) {
  const int n = static_cast<int>(instance.candidates.size());
  const int rows = instance.row_count;
  if (n > 20 || rows > 3 || static_cast<int>(profits.size()) != n) {
    throw std::invalid_argument("knapsack oracle needs n <= 20, rows <= 3");
  }
  const Micron width = instance.stencil_width;
  Micron max_slack = 0;
  for (const CharacterCandidate& c : instance.candidates) {
    max_slack = std::max(max_slack, c.slack());
  }
  struct Item {
    int index;
    Micron size;
    Micron slack;
    double profit;
  };
  std::vector<Item> items;
  for (int i = 0; i < n; ++i) {
    const CharacterCandidate& c = instance.candidates[i];
    const Micron size = c.width() - c.slack();
    const bool alone = rule == CapacityRule::kFixedBlank
                           ? size <= width - max_slack
                           : size + c.slack() <= width;
    if (profits[i] > 0.0 && alone) items.push_back({i, size, c.slack(), profits[i]});
  }
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) {
    return a.profit * static_cast<double>(b.size) > b.profit * static_cast<double>(a.size);
  });

  OracleResult<double, RowChoice> result;
  result.witness.assign(n, -1);
  std::vector<Micron> load(rows, 0);
  std::vector<Micron> blank(rows, 0);
  std::vector<int> choice(items.size(), -1);

  auto room = [&](int j) {
    return rule == CapacityRule::kFixedBlank ? width - max_slack - load[j]
                                             : width - load[j] - blank[j];
  };
  auto fits = [&](const Item& item, int j) {
    if (rule == CapacityRule::kFixedBlank) return load[j] + item.size <= width - max_slack;
    return load[j] + item.size + std::max(blank[j], item.slack) <= width;
  };
  auto bound = [&](size_t k, double profit) {
    double capacity = 0.0;
    for (int j = 0; j < rows; ++j) capacity += static_cast<double>(std::max<Micron>(0, room(j)));
    for (size_t q = k; q < items.size() && capacity > 0.0; ++q) {
      const double size = static_cast<double>(items[q].size);
      if (size <= capacity) {
        profit += items[q].profit;
        capacity -= size;
      } else {
        profit += items[q].profit * capacity / size;
        capacity = 0.0;
      }
    }
    return profit;
  };

  std::function<void(size_t, double)> search = [&](size_t k, double profit) {
    ++result.explored;
    if (profit > result.optimum) {
      result.optimum = profit;
      result.witness.assign(n, -1);
      for (size_t q = 0; q < k; ++q) {
        if (choice[q] >= 0) result.witness[items[q].index] = choice[q];
      }
    }
    if (k == items.size()) return;
    if (bound(k, profit) <= result.optimum + 1e-9) return;
    const Item& item = items[k];
    for (int j = 0; j < rows; ++j) {
      bool duplicate = false;
      for (int e = 0; e < j; ++e) {
        if (load[e] == load[j] && blank[e] == blank[j]) duplicate = true;
      }
      if (duplicate || !fits(item, j)) continue;
      const Micron saved = blank[j];
      load[j] += item.size;
      blank[j] = std::max(blank[j], item.slack);
      choice[k] = j;
      search(k + 1, profit + item.profit);
      choice[k] = -1;
      load[j] -= item.size;
      blank[j] = saved;
    }
    search(k + 1, profit);
  };
  search(0, 0.0);
  return result;
}

}  // namespace

OracleResult<double, RowChoice> ExactKnapsack3Prime(const Instance& instance,
                                                    std::span<const double> profits) {
  return KnapsackSearch(instance, profits, CapacityRule::kFixedBlank);
}

OracleResult<double, RowChoice> ExactSimplified(const Instance& instance,
                                                std::span<const double> profits) {
  return KnapsackSearch(instance, profits, CapacityRule::kRowBlank);
}

OracleResult<Micron, OrderingWitness> ExactOrderings(
    std::span<const CharacterCandidate> row) {
  const int k = static_cast<int>(row.size());
  if (k < 1 || k > 20) throw std::invalid_argument("ExactOrderings needs 1 <= k <= 20");
  std::vector<int> canonical(k);
  std::iota(canonical.begin(), canonical.end(), 0);
  std::sort(canonical.begin(), canonical.end(), [&](int a, int b) {
    const Micron sa = (row[a].blank_left + row[a].blank_right + 1) / 2;
    const Micron sb = (row[b].blank_left + row[b].blank_right + 1) / 2;
    return sa != sb ? sa > sb : row[a].id < row[b].id;
  });
  OracleResult<Micron, OrderingWitness> result;
  result.optimum = kUnreached;
  uint32_t best_trace = 0;
  const uint32_t traces = 1u << (k - 1);
  for (uint32_t trace = 0; trace < traces; ++trace) {
    ++result.explored;
    const CharacterCandidate& first = row[canonical[0]];
    Micron width = first.width();
    Micron left = first.blank_left;
    Micron right = first.blank_right;
    for (int q = 1; q < k; ++q) {
      const CharacterCandidate& c = row[canonical[q]];
      if (trace >> (q - 1) & 1) {
        width += c.width() - std::min(c.blank_right, left);
        left = c.blank_left;
      } else {
        width += c.width() - std::min(c.blank_left, right);
        right = c.blank_right;
      }
    }
    const bool better =
        width < result.optimum ||
        (width == result.optimum &&
         left + right > result.witness.left + result.witness.right);
    if (better) {
      result.optimum = width;
      result.witness.left = left;
      result.witness.right = right;
      best_trace = trace;
    }
  }
  std::vector<int> packed = {canonical[0]};
  result.witness.insert_left.assign(k, false);
  for (int q = 1; q < k; ++q) {
    if (best_trace >> (q - 1) & 1) {
      result.witness.insert_left[q] = true;
      packed.insert(packed.begin(), canonical[q]);
    } else {
      packed.push_back(canonical[q]);
    }
  }
  result.witness.order = std::move(packed);
  return result;
}

Micron ExactPermutationWidth(std::span<const CharacterCandidate> row) {
  const int k = static_cast<int>(row.size());
  if (k > 9) throw std::invalid_argument("ExactPermutationWidth needs k <= 9");
  if (k == 0) return 0;
  std::vector<int> order(k);
  std::iota(order.begin(), order.end(), 0);
  Micron best = kUnreached;
  do {
    Micron width = row[order.back()].width();
    for (int q = 0; q + 1 < k; ++q) {
      width += row[order[q]].width() -
               std::min(row[order[q]].blank_right, row[order[q + 1]].blank_left);
    }
    best = std::min(best, width);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

namespace {

// Relative position of the pair (a, b): a left of b, b left of a, a below b,
// b below a.
enum Relation : int { kALeft = 0, kBLeft = 1, kABelow = 2, kBBelow = 3 };

struct RelationSearch {
  const Instance& instance;
  std::vector<int> members;
  std::vector<std::pair<int, int>> pairs;
  std::vector<int> relation;
  std::vector<Micron> x;
  std::vector<Micron> y;
  int64_t explored = 0;

  // Longest-path coordinates for the relations fixed so far (the first
  // `assigned` pairs). False when the outline is exceeded, which includes
  // every cyclic assignment since all pitches are positive.
  bool Solve(size_t assigned) {
    const auto& cand = instance.candidates;
    const size_t k = members.size();
    for (size_t q = 0; q < k; ++q) {
      x[q] = -cand[members[q]].blank_left;
      y[q] = -cand[members[q]].blank_bottom;
    }
    for (size_t pass = 0; pass <= k; ++pass) {
      bool changed = false;
      for (size_t p = 0; p < assigned; ++p) {
        auto [a, b] = pairs[p];
        const CharacterCandidate& ca = cand[members[a]];
        const CharacterCandidate& cb = cand[members[b]];
        auto relax = [&](std::vector<Micron>& pos, int from, int to, Micron pitch) {
          if (pos[from] + pitch > pos[to]) {
            pos[to] = pos[from] + pitch;
            changed = true;
          }
        };
        switch (relation[p]) {
          case kALeft: relax(x, a, b, HorizontalPitch(ca, cb)); break;
          case kBLeft: relax(x, b, a, HorizontalPitch(cb, ca)); break;
          case kABelow: relax(y, a, b, VerticalPitch(ca, cb)); break;
          case kBBelow: relax(y, b, a, VerticalPitch(cb, ca)); break;
        }
      }
      bool inside = true;
      for (size_t q = 0; q < k; ++q) {
        const CharacterCandidate& c = cand[members[q]];
        if (x[q] + c.blank_left + c.pattern_width > instance.stencil_width ||
            y[q] + c.blank_bottom + c.pattern_height > instance.stencil_height) {
          inside = false;
        }
      }
      if (!inside) return false;
      if (!changed) return true;
    }
    return false;
  }

  bool Search(size_t p) {
    ++explored;
    if (!Solve(p)) return false;
    if (p == pairs.size()) return true;
    for (int r = 0; r < 4; ++r) {
      relation[p] = r;
      if (Search(p + 1)) return true;
    }
    return false;
  }
};

}  // namespace

OracleResult<ShotCount, Selection2DWitness> Exact2D(const Instance& instance) {
  const int n = static_cast<int>(instance.candidates.size());
  if (instance.mode != Mode::k2D || n > 6) {
    throw std::invalid_argument("Exact2D needs a 2d instance with n <= 6");
  }
  OracleResult<ShotCount, Selection2DWitness> result;
  const std::vector<ShotCount> totals = SubsetTotals(instance);
  for (uint32_t mask : MasksByTotal(totals)) {
    RelationSearch search{instance, {}, {}, {}, {}, {}, 0};
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) search.members.push_back(i);
    }
    const int k = static_cast<int>(search.members.size());
    for (int a = 0; a < k; ++a) {
      for (int b = a + 1; b < k; ++b) search.pairs.emplace_back(a, b);
    }
    search.relation.assign(search.pairs.size(), kALeft);
    search.x.assign(k, 0);
    search.y.assign(k, 0);
    const bool placeable = search.Search(0);
    result.explored += search.explored;
    if (!placeable) continue;
    result.optimum = totals[mask];
    for (int q = 0; q < k; ++q) {
      result.witness.placement.placed.push_back(
          {instance.candidates[search.members[q]].id, search.x[q], search.y[q]});
    }
    result.witness.report = Evaluate(instance, IdsOf(instance, mask));
    return result;
  }
  throw std::logic_error("empty selection is always placeable");
}

OracleResult<ShotCount, Selection2DWitness> Exact2DGrid(const Instance& instance,
                                                        Micron grid_step) {
  const int n = static_cast<int>(instance.candidates.size());
  if (instance.mode != Mode::k2D || n > 3 || grid_step <= 0) {
    throw std::invalid_argument("Exact2DGrid needs a 2d instance with n <= 3");
  }
  const auto& cand = instance.candidates;
  OracleResult<ShotCount, Selection2DWitness> result;
  const std::vector<ShotCount> totals = SubsetTotals(instance);

  // Lattice of box origins whose pattern lies inside the outline.
  auto lattice = [grid_step](Micron blank, Micron pattern, Micron limit) {
    std::vector<Micron> values;
    const Micron start = -blank;
    const Micron first = start >= 0 ? (start + grid_step - 1) / grid_step * grid_step
                                    : -((-start) / grid_step * grid_step);
    for (Micron v = first; v + blank + pattern <= limit; v += grid_step) {
      if (v + blank >= 0) values.push_back(v);
    }
    return values;
  };
  auto separated = [&](int a, Micron xa, Micron ya, int b, Micron xb, Micron yb) {
    return xb - xa >= HorizontalPitch(cand[a], cand[b]) ||
           xa - xb >= HorizontalPitch(cand[b], cand[a]) ||
           yb - ya >= VerticalPitch(cand[a], cand[b]) ||
           ya - yb >= VerticalPitch(cand[b], cand[a]);
  };

  for (uint32_t mask : MasksByTotal(totals)) {
    std::vector<int> members;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1) members.push_back(i);
    }
    const size_t k = members.size();
    std::vector<std::vector<Micron>> xs(k), ys(k);
    for (size_t q = 0; q < k; ++q) {
      const CharacterCandidate& c = cand[members[q]];
      xs[q] = lattice(c.blank_left, c.pattern_width, instance.stencil_width);
      ys[q] = lattice(c.blank_bottom, c.pattern_height, instance.stencil_height);
    }
    std::vector<Micron> x(k), y(k);
    std::function<bool(size_t)> place = [&](size_t q) {
      if (q == k) return true;
      for (Micron px : xs[q]) {
        for (Micron py : ys[q]) {
          ++result.explored;
          bool ok = true;
          for (size_t e = 0; e < q && ok; ++e) {
            ok = separated(members[e], x[e], y[e], members[q], px, py);
          }
          if (!ok) continue;
          x[q] = px;
          y[q] = py;
          if (place(q + 1)) return true;
        }
      }
      return false;
    };
    if (!place(0)) continue;
    result.optimum = totals[mask];
    for (size_t q = 0; q < k; ++q) {
      result.witness.placement.placed.push_back({cand[members[q]].id, x[q], y[q]});
    }
    result.witness.report = Evaluate(instance, IdsOf(instance, mask));
    return result;
  }
  throw std::logic_error("empty selection is always placeable");
}

BaselineResult1D GreedyBaseline1D(const Instance& instance) {
  if (instance.mode != Mode::k1D) {
    throw ValidationError("1D baseline requires a 1d instance");
  }
  const int n = static_cast<int>(instance.candidates.size());
  const std::vector<double> profits = BaselineProfits(instance);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  auto ratio = [&](int i) {
    const CharacterCandidate& c = instance.candidates[i];
    return profits[i] / static_cast<double>(c.width() - c.slack());
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (ratio(a) != ratio(b)) return ratio(a) > ratio(b);
    return instance.candidates[a].id < instance.candidates[b].id;
  });
  RowAssignment assignment = RowAssignment::Empty(instance);
  for (int i : order) {
    if (profits[i] <= 0.0) continue;
    for (int j = 0; j < instance.row_count; ++j) {
      if (assignment.Fits(instance, i, j)) {
        assignment.Assign(instance, i, j);
        break;
      }
    }
  }
  std::vector<std::vector<int>> rows = assignment.rows;
  for (auto& row : rows) LegalizeRow(instance, profits, row);
  BaselineResult1D result;
  result.placement = MakePlacement1D(instance, rows);
  result.report = Evaluate(instance, result.placement.SelectedIds());
  return result;
}

BaselineResult2D GreedyBaseline2D(const Instance& instance) {
  if (instance.mode != Mode::k2D) {
    throw ValidationError("2D baseline requires a 2d instance");
  }
  const int n = static_cast<int>(instance.candidates.size());
  const auto& cand = instance.candidates;
  const std::vector<double> profits = BaselineProfits(instance);
  std::vector<int> order;
  for (int i = 0; i < n; ++i) {
    if (profits[i] > 0.0) order.push_back(i);
  }
  auto density = [&](int i) {
    return profits[i] / static_cast<double>(cand[i].width() * cand[i].height());
  };
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (density(a) != density(b)) return density(a) > density(b);
    return cand[a].id < cand[b].id;
  });

  struct Shelf {
    std::vector<int> members;
    Micron width = 0;
  };
  std::vector<Shelf> shelves;
  for (int i : order) {
    if (cand[i].width() - cand[i].blank_right > instance.stencil_width) continue;
    bool placed = false;
    for (Shelf& shelf : shelves) {
      const int last = shelf.members.back();
      const Micron width = shelf.width + cand[i].width() -
                           std::min(cand[last].blank_right, cand[i].blank_left);
      if (width - cand[i].blank_right <= instance.stencil_width) {
        shelf.members.push_back(i);
        shelf.width = width;
        placed = true;
        break;
      }
    }
    if (!placed) shelves.push_back({{i}, cand[i].width()});
  }

  // Shelves bottom-up: positive lists the top shelf first, negative the bottom
  // shelf first, each shelf left to right.
  std::vector<CandidateId> positive, negative;
  for (auto it = shelves.rbegin(); it != shelves.rend(); ++it) {
    for (int i : it->members) positive.push_back(cand[i].id);
  }
  for (const Shelf& shelf : shelves) {
    for (int i : shelf.members) negative.push_back(cand[i].id);
  }
  const Placement2D packed = SpPack(instance, positive, negative);
  const CandidateIndex index(instance);
  std::vector<char> keep(n, 0);
  BaselineResult2D result;
  for (const PlacedCharacter& p : packed.placed) {
    const CharacterCandidate& c = cand[index.at(p.id)];
    if (p.x + c.blank_left + c.pattern_width <= instance.stencil_width &&
        p.y + c.blank_bottom + c.pattern_height <= instance.stencil_height) {
      keep[index.at(p.id)] = 1;
      result.placement.placed.push_back(p);
    }
  }
  for (CandidateId id : packed.seq_positive) {
    if (keep[index.at(id)]) result.placement.seq_positive.push_back(id);
  }
  for (CandidateId id : packed.seq_negative) {
    if (keep[index.at(id)]) result.placement.seq_negative.push_back(id);
  }
  result.report = Evaluate(instance, result.placement.SelectedIds());
  return result;
}

}  // namespace osp
