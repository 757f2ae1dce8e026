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


#include "osp/cluster.h"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "osp/kdtree.h"

namespace osp {
namespace {

struct Rect {
  Micron left, bottom, right, top;
};

// Pattern rectangle of a shape whose box corner sits at (x, y).
Rect PatternAt(const BlockShape& s, Micron x, Micron y) {
  return {x + s.blank_left, y + s.blank_bottom, x + s.width - s.blank_right,
          y + s.height - s.blank_top};
}

ClusterNode Arrange(const ClusterNode& a, int a_index, const ClusterNode& b,
                    int b_index, MergeOrientation orientation) {
  const BlockShape& sa = a.shape;
  const BlockShape& sb = b.shape;
  Micron bx = 0, by = 0;
  if (orientation == MergeOrientation::kHorizontal) {
    bx = HorizontalPitch(sa, sb);
  } else {
    by = VerticalPitch(sa, sb);
  }
  const Rect pa = PatternAt(sa, 0, 0);
  const Rect pb = PatternAt(sb, bx, by);
  const Rect u = {std::min(pa.left, pb.left), std::min(pa.bottom, pb.bottom),
                  std::max(pa.right, pb.right), std::max(pa.top, pb.top)};
  auto need = [](Micron blank, Micron inset) { return std::max<Micron>(0, blank - inset); };
  ClusterNode m;
  m.first = a_index;
  m.second = b_index;
  m.orientation = orientation;
  m.shape.blank_left = std::max(need(sa.blank_left, pa.left - u.left),
                                need(sb.blank_left, pb.left - u.left));
  m.shape.blank_right = std::max(need(sa.blank_right, u.right - pa.right),
                                 need(sb.blank_right, u.right - pb.right));
  m.shape.blank_bottom = std::max(need(sa.blank_bottom, pa.bottom - u.bottom),
                                  need(sb.blank_bottom, pb.bottom - u.bottom));
  m.shape.blank_top = std::max(need(sa.blank_top, u.top - pa.top),
                               need(sb.blank_top, u.top - pb.top));
  m.shape.width = m.shape.blank_left + (u.right - u.left) + m.shape.blank_right;
  m.shape.height = m.shape.blank_bottom + (u.top - u.bottom) + m.shape.blank_top;
  const Micron ox = u.left - m.shape.blank_left;
  const Micron oy = u.bottom - m.shape.blank_bottom;
  m.first_x = -ox;
  m.first_y = -oy;
  m.second_x = bx - ox;
  m.second_y = by - oy;
  m.members = a.members;
  m.members.insert(m.members.end(), b.members.begin(), b.members.end());
  std::sort(m.members.begin(), m.members.end());
  m.reduction = a.reduction;
  for (size_t r = 0; r < m.reduction.size(); ++r) m.reduction[r] += b.reduction[r];
  m.profit = a.profit + b.profit;
  return m;
}

Micron Area(const BlockShape& s) { return s.width * s.height; }

double HorizontalSlack(const BlockShape& s) {
  return static_cast<double>(SymmetricSlack(s.blank_left, s.blank_right));
}
double VerticalSlack(const BlockShape& s) {
  return static_cast<double>(SymmetricSlack(s.blank_bottom, s.blank_top));
}

}  // namespace

ClusterNode MergeBlocks(const ClusterNode& a, int a_index, const ClusterNode& b,
                        int b_index) {
  const ClusterNode options[] = {
      Arrange(a, a_index, b, b_index, MergeOrientation::kHorizontal),
      Arrange(b, b_index, a, a_index, MergeOrientation::kHorizontal),
      Arrange(a, a_index, b, b_index, MergeOrientation::kVertical),
      Arrange(b, b_index, a, a_index, MergeOrientation::kVertical),
  };
  const ClusterNode* best = &options[0];
  for (const ClusterNode& o : options) {
    if (Area(o.shape) < Area(best->shape)) best = &o;
  }
  return *best;
}

Clustering ClusterCandidates(const Instance& instance, std::span<const int> candidates,
                             std::span<const double> profits, size_t threshold,
                             const ClusterTolerances& tolerances) {
  if (threshold > candidates.size()) {
    throw std::invalid_argument("cluster threshold exceeds candidate count");
  }
  Clustering out;
  for (int i : candidates) {
    const CharacterCandidate& c = instance.candidates[i];
    ClusterNode leaf;
    leaf.candidate = i;
    leaf.shape = ShapeOf(c);
    leaf.members = {i};
    leaf.reduction.resize(instance.region_count);
    for (int r = 0; r < instance.region_count; ++r) leaf.reduction[r] = c.reduction(r);
    leaf.profit = profits[i];
    out.roots.push_back(static_cast<int>(out.nodes.size()));
    out.nodes.push_back(std::move(leaf));
  }

  using Tree = KdTree<3>;
  auto signature = [&](int node) {
    const ClusterNode& n = out.nodes[node];
    return Tree::Point{HorizontalSlack(n.shape), VerticalSlack(n.shape), n.profit};
  };
  auto box_around = [&](const Tree::Point& p) {
    const double tol[3] = {tolerances.slack, tolerances.slack, tolerances.profit};
    Tree::Box box;
    for (int a = 0; a < 3; ++a) {
      const double half = std::abs(p[a]) * tol[a];
      box.lo[a] = p[a] - half;
      box.hi[a] = p[a] + half;
    }
    return box;
  };

  size_t live = out.roots.size();
  while (live > threshold) {
    std::vector<int> order = out.roots;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return out.nodes[a].profit > out.nodes[b].profit;
    });
    std::vector<Tree::Item> items;
    for (int node : order) items.push_back({signature(node), node, out.nodes[node].profit});
    Tree tree = Tree::Build(std::move(items));
    std::vector<char> taken(out.nodes.size(), 0);
    std::vector<int> next;
    int merged = 0;
    ++out.stats.rounds;
    for (int node : order) {
      if (taken[node]) continue;
      if (live <= threshold) break;
      const Tree::Point p = signature(node);
      tree.Erase(p, node);
      const std::optional<int64_t> partner = tree.MaxWeightInBox(box_around(p));
      if (!partner) {
        // Stays available as a partner for later blocks.
        tree.Insert(p, node, out.nodes[node].profit);
        continue;
      }
      const int other = static_cast<int>(*partner);
      tree.Erase(signature(other), other);
      taken[node] = taken[other] = 1;
      out.nodes.push_back(MergeBlocks(out.nodes[node], node, out.nodes[other], other));
      next.push_back(static_cast<int>(out.nodes.size()) - 1);
      ++merged;
      --live;
    }
    out.stats.probes += tree.probes();
    out.stats.merges += merged;
    for (int node : out.roots) {
      if (!taken[node]) next.push_back(node);
    }
    std::sort(next.begin(), next.end());
    out.roots = std::move(next);
    if (merged == 0) break;
  }
  return out;
}

std::vector<MemberOffset> MemberOffsets(const Clustering& clustering, int node) {
  std::vector<MemberOffset> out;
  struct Frame {
    int node;
    Micron x, y;
  };
  std::vector<Frame> stack = {{node, 0, 0}};
  while (!stack.empty()) {
    const Frame f = stack.back();
    stack.pop_back();
    const ClusterNode& n = clustering.nodes[f.node];
    if (n.orientation == MergeOrientation::kLeaf) {
      out.push_back({n.candidate, f.x, f.y});
      continue;
    }
    stack.push_back({n.second, f.x + n.second_x, f.y + n.second_y});
    stack.push_back({n.first, f.x + n.first_x, f.y + n.first_y});
  }
  return out;
}

void ExpandSequences(const Clustering& clustering, int node, std::vector<int>& positive,
                     std::vector<int>& negative) {
  const ClusterNode& n = clustering.nodes[node];
  if (n.orientation == MergeOrientation::kLeaf) {
    positive.push_back(n.candidate);
    negative.push_back(n.candidate);
    return;
  }
  std::vector<int> p1, n1, p2, n2;
  ExpandSequences(clustering, n.first, p1, n1);
  ExpandSequences(clustering, n.second, p2, n2);
  if (n.orientation == MergeOrientation::kHorizontal) {
    positive.insert(positive.end(), p1.begin(), p1.end());
    positive.insert(positive.end(), p2.begin(), p2.end());
  } else {
    positive.insert(positive.end(), p2.begin(), p2.end());
    positive.insert(positive.end(), p1.begin(), p1.end());
  }
  negative.insert(negative.end(), n1.begin(), n1.end());
  negative.insert(negative.end(), n2.begin(), n2.end());
}

}  // namespace osp
