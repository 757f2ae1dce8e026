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


// Alternating-axis k-d tree over points with an id and a weight. Deletion is
// lazy: erased nodes stay in the tree as routing nodes, so the split invariant
// never has to be repaired. Each node also tracks the heaviest live point of
// its subtree, which lets MaxWeightInBox prune whole subtrees.

#ifndef OSP_KDTREE_H_
#define OSP_KDTREE_H_

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <utility>
#include <vector>

namespace osp {

template <int K>
class KdTree {
 public:
  using Point = std::array<double, K>;

  // Closed axis-aligned box.
  struct Box {
    Point lo;
    Point hi;
    bool Contains(const Point& p) const {
      for (int a = 0; a < K; ++a) {
        if (p[a] < lo[a] || p[a] > hi[a]) return false;
      }
      return true;
    }
  };

  struct Item {
    Point point;
    int64_t id = 0;
    double weight = 0.0;
  };

  KdTree() = default;

  // Balanced tree from median splits.
  static KdTree Build(std::vector<Item> items) {
    KdTree tree;
    tree.nodes_.reserve(items.size());
    tree.root_ = tree.BuildRange(items, 0, items.size(), 0, -1);
    tree.size_ = items.size();
    return tree;
  }

  void Insert(const Point& p, int64_t id, double weight = 0.0) {
    const int node = NewNode({p, id, weight}, 0, -1);
    ++size_;
    if (root_ < 0) {
      root_ = node;
      return;
    }
    int at = root_;
    while (true) {
      ++probes_;
      Node& n = nodes_[at];
      int& next = p[n.axis] < n.item.point[n.axis] ? n.left : n.right;
      if (next < 0) {
        nodes_[node].axis = (n.axis + 1) % K;
        nodes_[node].parent = at;
        next = node;
        break;
      }
      at = next;
    }
    Refresh(at);
  }

  // Removes one live point equal to (p, id). False when there is none.
  bool Erase(const Point& p, int64_t id) {
    int at = root_;
    while (at >= 0) {
      ++probes_;
      Node& n = nodes_[at];
      if (n.live && n.item.id == id && n.item.point == p) {
        n.live = false;
        --size_;
        Refresh(at);
        return true;
      }
      at = p[n.axis] < n.item.point[n.axis] ? n.left : n.right;
    }
    return false;
  }

  // Ids of live points inside `box`, ascending.
  std::vector<int64_t> Range(const Box& box) const {
    std::vector<int64_t> out;
    RangeFrom(root_, box, out);
    std::sort(out.begin(), out.end());
    return out;
  }

  // Euclidean-nearest live point; ties go to the lowest id. Empty when the
  // tree holds no live point.
  std::optional<int64_t> Nearest(const Point& p) const {
    Best best;
    NearestFrom(root_, p, best);
    if (!best.found) return std::nullopt;
    return best.id;
  }

  // Heaviest live point inside `box`; ties go to the lowest id.
  std::optional<int64_t> MaxWeightInBox(const Box& box) const {
    Best best;
    best.value = -std::numeric_limits<double>::infinity();
    MaxFrom(root_, box, best);
    if (!best.found) return std::nullopt;
    return best.id;
  }

  size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  // Nodes touched by all operations since construction or the last reset.
  int64_t probes() const { return probes_; }
  void ResetProbes() { probes_ = 0; }

  // Split invariant: left subtree strictly below the node on its axis, right
  // subtree at or above it. Also checks the cached subtree maxima and size.
  bool CheckInvariants() const {
    size_t live = 0;
    for (int i = 0; i < static_cast<int>(nodes_.size()); ++i) {
      const Node& n = nodes_[i];
      live += n.live;
      if (!Bounded(n.left, n.axis, n.item.point[n.axis], true) ||
          !Bounded(n.right, n.axis, n.item.point[n.axis], false)) {
        return false;
      }
      Node copy = n;
      Summarize(copy);
      if (copy.has_live != n.has_live ||
          (n.has_live && (copy.best_weight != n.best_weight || copy.best_id != n.best_id))) {
        return false;
      }
    }
    return live == size_;
  }

 private:
  struct Node {
    Item item;
    int axis = 0;
    int left = -1;
    int right = -1;
    int parent = -1;
    bool live = true;
    bool has_live = true;
    double best_weight = 0.0;
    int64_t best_id = 0;
  };

  struct Best {
    bool found = false;
    double value = std::numeric_limits<double>::infinity();
    int64_t id = 0;
  };

  int NewNode(const Item& item, int axis, int parent) {
    Node n;
    n.item = item;
    n.axis = axis;
    n.parent = parent;
    n.best_weight = item.weight;
    n.best_id = item.id;
    nodes_.push_back(n);
    return static_cast<int>(nodes_.size()) - 1;
  }

  int BuildRange(std::vector<Item>& items, size_t lo, size_t hi, int axis, int parent) {
    if (lo >= hi) return -1;
    std::sort(items.begin() + lo, items.begin() + hi, [axis](const Item& a, const Item& b) {
      return a.point[axis] < b.point[axis];
    });
    size_t mid = lo + (hi - lo) / 2;
    while (mid > lo && items[mid - 1].point[axis] == items[mid].point[axis]) --mid;
    const int node = NewNode(items[mid], axis, parent);
    const int left = BuildRange(items, lo, mid, (axis + 1) % K, node);
    const int right = BuildRange(items, mid + 1, hi, (axis + 1) % K, node);
    nodes_[node].left = left;
    nodes_[node].right = right;
    Summarize(nodes_[node]);
    return node;
  }

  static bool Better(double weight, int64_t id, double best_weight, int64_t best_id) {
    return weight > best_weight || (weight == best_weight && id < best_id);
  }

  void Summarize(Node& n) const {
    n.has_live = n.live;
    n.best_weight = n.item.weight;
    n.best_id = n.item.id;
    for (int child : {n.left, n.right}) {
      if (child < 0 || !nodes_[child].has_live) continue;
      const Node& c = nodes_[child];
      if (!n.has_live || Better(c.best_weight, c.best_id, n.best_weight, n.best_id)) {
        n.best_weight = c.best_weight;
        n.best_id = c.best_id;
      }
      n.has_live = true;
    }
  }

  void Refresh(int at) {
    for (; at >= 0; at = nodes_[at].parent) Summarize(nodes_[at]);
  }

  bool Bounded(int at, int axis, double split, bool below) const {
    if (at < 0) return true;
    const Node& n = nodes_[at];
    const double v = n.item.point[axis];
    if (below ? !(v < split) : v < split) return false;
    return Bounded(n.left, axis, split, below) && Bounded(n.right, axis, split, below);
  }

  void RangeFrom(int at, const Box& box, std::vector<int64_t>& out) const {
    if (at < 0 || !nodes_[at].has_live) return;
    ++probes_;
    const Node& n = nodes_[at];
    if (n.live && box.Contains(n.item.point)) out.push_back(n.item.id);
    const double split = n.item.point[n.axis];
    if (box.lo[n.axis] < split) RangeFrom(n.left, box, out);
    if (box.hi[n.axis] >= split) RangeFrom(n.right, box, out);
  }

  void NearestFrom(int at, const Point& p, Best& best) const {
    if (at < 0 || !nodes_[at].has_live) return;
    ++probes_;
    const Node& n = nodes_[at];
    if (n.live) {
      double d = 0.0;
      for (int a = 0; a < K; ++a) d += (p[a] - n.item.point[a]) * (p[a] - n.item.point[a]);
      if (!best.found || d < best.value || (d == best.value && n.item.id < best.id)) {
        best = {true, d, n.item.id};
      }
    }
    const double diff = p[n.axis] - n.item.point[n.axis];
    const int near = diff < 0 ? n.left : n.right;
    const int far = diff < 0 ? n.right : n.left;
    NearestFrom(near, p, best);
    if (!best.found || diff * diff <= best.value) NearestFrom(far, p, best);
  }

  void MaxFrom(int at, const Box& box, Best& best) const {
    if (at < 0 || !nodes_[at].has_live) return;
    const Node& n = nodes_[at];
    if (best.found && !Better(n.best_weight, n.best_id, best.value, best.id)) return;
    ++probes_;
    if (n.live && box.Contains(n.item.point) &&
        (!best.found || Better(n.item.weight, n.item.id, best.value, best.id))) {
      best = {true, n.item.weight, n.item.id};
    }
    const double split = n.item.point[n.axis];
    // Visit the side holding the heavier subtree first to tighten the bound.
    const bool go_left = box.lo[n.axis] < split;
    const bool go_right = box.hi[n.axis] >= split;
    const bool left_first =
        n.left >= 0 && nodes_[n.left].has_live &&
        (n.right < 0 || !nodes_[n.right].has_live ||
         Better(nodes_[n.left].best_weight, nodes_[n.left].best_id,
                nodes_[n.right].best_weight, nodes_[n.right].best_id));
    if (left_first) {
      if (go_left) MaxFrom(n.left, box, best);
      if (go_right) MaxFrom(n.right, box, best);
    } else {
      if (go_right) MaxFrom(n.right, box, best);
      if (go_left) MaxFrom(n.left, box, best);
    }
  }

  std::vector<Node> nodes_;
  int root_ = -1;
  size_t size_ = 0;
  mutable int64_t probes_ = 0;
};

}  // namespace osp

#endif  // OSP_KDTREE_H_
