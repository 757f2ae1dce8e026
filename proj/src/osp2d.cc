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


#include "osp/osp2d.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

#include "osp/evaluate.h"
#include "osp/generator.h"

namespace osp {

std::vector<int> PreFilter(const Instance& instance, double keep_fraction) {
  if (!(keep_fraction > 0.0 && keep_fraction <= 1.0)) {
    throw std::invalid_argument("keep_fraction must lie in (0, 1]");
  }
  const int n = static_cast<int>(instance.candidates.size());
  const std::vector<double> profits = BaselineProfits(instance);
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    if (profits[a] != profits[b]) return profits[a] > profits[b];
    return instance.candidates[a].id < instance.candidates[b].id;
  });
  const size_t keep = static_cast<size_t>(std::ceil(keep_fraction * n - 1e-9));
  order.resize(std::min<size_t>(keep, order.size()));
  std::sort(order.begin(), order.end());
  return order;
}

namespace {

class Annealer {
 public:
  struct State {
    std::vector<int> positive;
    std::vector<int> negative;
    std::vector<char> on;
  };

  struct Score {
    double cost = 0.0;
    ShotCount total = 0;
  };

  Annealer(const Instance& instance, const Clustering& clustering)
      : instance_(instance), clustering_(clustering),
        n_(static_cast<int>(clustering.roots.size())) {
    hpitch_.resize(static_cast<size_t>(n_) * n_);
    vpitch_.resize(static_cast<size_t>(n_) * n_);
    for (int a = 0; a < n_; ++a) {
      for (int b = 0; b < n_; ++b) {
        hpitch_[a * n_ + b] = HorizontalPitch(Shape(a), Shape(b));
        vpitch_[a * n_ + b] = VerticalPitch(Shape(a), Shape(b));
      }
    }
    vsb_.assign(instance.region_count, 0);
    for (const CharacterCandidate& c : instance.candidates) {
      for (int r = 0; r < instance.region_count; ++r) vsb_[r] += c.usage[r] * c.vsb_shots;
      for (int r = 0; r < instance.region_count; ++r) {
        penalty_ = std::max(penalty_, static_cast<double>(c.reduction(r)));
      }
    }
    x_.resize(n_);
    y_.resize(n_);
    inside_.resize(n_);
    pos_rank_.resize(n_);
    neg_rank_.resize(n_);
  }

  int size() const { return n_; }
  const BlockShape& Shape(int block) const {
    return clustering_.nodes[clustering_.roots[block]].shape;
  }

  // Blocks are switched on by decreasing profit density as long as the
  // switched-on set still fits when packed in shelves of decreasing height.
  State Initial() {
    std::vector<int> order(n_);
    std::iota(order.begin(), order.end(), 0);
    auto density = [&](int b) {
      const BlockShape& s = Shape(b);
      return Node(b).profit / static_cast<double>(s.width * s.height);
    };
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return density(a) > density(b); });
    State state;
    state.on.assign(n_, 0);
    for (int b : order) {
      if (Node(b).profit <= 0.0) continue;
      state.on[b] = 1;
      Shelve(state);
      Evaluate(state);
      for (int a = 0; a < n_; ++a) {
        if (state.on[a] && !inside_[a]) {
          state.on[b] = 0;
          break;
        }
      }
    }
    Shelve(state);
    return state;
  }

  // Shelf sequence pair over the switched-on blocks, tallest first, each
  // shelf filled left to right while the patterns fit the width. Switched-off
  // blocks follow in index order.
  void Shelve(State& state) const {
    std::vector<int> on;
    for (int b = 0; b < n_; ++b) {
      if (state.on[b]) on.push_back(b);
    }
    std::stable_sort(on.begin(), on.end(),
                     [&](int a, int b) { return Shape(a).height > Shape(b).height; });
    std::vector<std::vector<int>> shelves;
    std::vector<Micron> shelf_width;
    for (int b : on) {
      const BlockShape& s = Shape(b);
      bool placed = false;
      for (size_t k = 0; k < shelves.size() && !placed; ++k) {
        const Micron w = shelf_width[k] + s.width -
                         std::min(Shape(shelves[k].back()).blank_right, s.blank_left);
        if (w - s.blank_right <= instance_.stencil_width) {
          shelves[k].push_back(b);
          shelf_width[k] = w;
          placed = true;
        }
      }
      if (!placed) {
        shelves.push_back({b});
        shelf_width.push_back(s.width);
      }
    }
    state.positive.clear();
    state.negative.clear();
    for (auto it = shelves.rbegin(); it != shelves.rend(); ++it) {
      state.positive.insert(state.positive.end(), it->begin(), it->end());
    }
    for (const auto& shelf : shelves) {
      state.negative.insert(state.negative.end(), shelf.begin(), shelf.end());
    }
    for (int b = 0; b < n_; ++b) {
      if (!state.on[b]) {
        state.positive.push_back(b);
        state.negative.push_back(b);
      }
    }
  }

  // Packs the switched-on blocks; fills x_, y_ and inside_.
  Score Evaluate(const State& state) {
    for (int q = 0; q < n_; ++q) {
      pos_rank_[state.positive[q]] = q;
      neg_rank_[state.negative[q]] = q;
    }
    list_.clear();
    for (int b : state.positive) {
      if (state.on[b]) list_.push_back(b);
    }
    for (size_t q = 0; q < list_.size(); ++q) {
      const int b = list_[q];
      Micron x = 0;
      for (size_t p = 0; p < q; ++p) {
        const int a = list_[p];
        if (neg_rank_[a] < neg_rank_[b]) x = std::max(x, x_[a] + hpitch_[a * n_ + b]);
      }
      x_[b] = x;
    }
    list_.clear();
    for (int b : state.negative) {
      if (state.on[b]) list_.push_back(b);
    }
    for (size_t q = 0; q < list_.size(); ++q) {
      const int b = list_[q];
      Micron y = 0;
      for (size_t p = 0; p < q; ++p) {
        const int a = list_[p];
        if (pos_rank_[a] > pos_rank_[b]) y = std::max(y, y_[a] + vpitch_[a * n_ + b]);
      }
      y_[b] = y;
    }
    t_ = vsb_;
    Micron overflow = 0;
    std::fill(inside_.begin(), inside_.end(), 0);
    for (int b : list_) {
      const BlockShape& s = Shape(b);
      const Micron over_x =
          std::max<Micron>(0, x_[b] + s.width - s.blank_right - instance_.stencil_width);
      const Micron over_y =
          std::max<Micron>(0, y_[b] + s.height - s.blank_top - instance_.stencil_height);
      overflow += over_x + over_y;
      if (over_x == 0 && over_y == 0) {
        inside_[b] = 1;
        const std::vector<ShotCount>& red = Node(b).reduction;
        for (size_t r = 0; r < t_.size(); ++r) t_[r] -= red[r];
      }
    }
    Score score;
    score.total = t_.empty() ? 0 : *std::max_element(t_.begin(), t_.end());
    score.cost = static_cast<double>(score.total) + penalty_ * static_cast<double>(overflow);
    return score;
  }

  // Swaps always involve a switched-on block, since swapping two switched-off
  // blocks cannot change the cost.
  void RandomMove(State& state, std::mt19937_64& rng) {
    const double r = UniformReal(rng);
    on_list_.clear();
    for (int b = 0; b < n_; ++b) {
      if (state.on[b]) on_list_.push_back(b);
    }
    if (r < 0.8 && n_ >= 2 && !on_list_.empty()) {
      const int a = on_list_[UniformInt(rng, 0, static_cast<int64_t>(on_list_.size()) - 1)];
      int b = static_cast<int>(UniformInt(rng, 0, n_ - 2));
      if (b >= a) ++b;
      std::iter_swap(std::find(state.positive.begin(), state.positive.end(), a),
                     std::find(state.positive.begin(), state.positive.end(), b));
      if (r >= 0.4) {
        std::iter_swap(std::find(state.negative.begin(), state.negative.end(), a),
                       std::find(state.negative.begin(), state.negative.end(), b));
      }
    } else {
      const int b = static_cast<int>(UniformInt(rng, 0, n_ - 1));
      state.on[b] = !state.on[b];
    }
  }

  const std::vector<Micron>& x() const { return x_; }
  const std::vector<Micron>& y() const { return y_; }
  const std::vector<char>& inside() const { return inside_; }

 private:
  const ClusterNode& Node(int block) const {
    return clustering_.nodes[clustering_.roots[block]];
  }

  const Instance& instance_;
  const Clustering& clustering_;
  int n_;
  std::vector<Micron> hpitch_;
  std::vector<Micron> vpitch_;
  std::vector<ShotCount> vsb_;
  double penalty_ = 0.0;
  std::vector<Micron> x_, y_;
  std::vector<char> inside_;
  std::vector<int> pos_rank_, neg_rank_, list_, on_list_;
  std::vector<ShotCount> t_;
};

}  // namespace

SaResult SaOptimize(const Instance& instance, const Clustering& clustering,
                    const SaParams& params) {
  Annealer annealer(instance, clustering);
  const int n = annealer.size();
  SaResult result;
  if (n == 0) {
    result.total = Evaluate(instance, std::vector<CandidateId>{}).total;
    result.trace.initial_total = result.total;
    result.trace.best_history = {result.total};
    return result;
  }
  std::mt19937_64 rng(params.seed);
  Annealer::State current = annealer.Initial();
  Annealer::Score score = annealer.Evaluate(current);
  Annealer::State best = current;
  ShotCount best_total = score.total;
  result.trace.initial_total = score.total;
  result.trace.best_history = {score.total};

  double uphill = 0.0;
  int uphill_count = 0;
  for (int k = 0; k < params.probe_moves; ++k) {
    Annealer::State trial = current;
    annealer.RandomMove(trial, rng);
    const double delta = annealer.Evaluate(trial).cost - score.cost;
    if (delta > 0) {
      uphill += delta;
      ++uphill_count;
    }
  }
  const double t0 = uphill_count > 0
                        ? -(uphill / uphill_count) / std::log(params.probe_acceptance)
                        : 1.0;
  result.trace.initial_temperature = t0;
  const int64_t step = std::max<int64_t>(
      1, static_cast<int64_t>(params.moves_per_step * static_cast<double>(n)));
  double temperature = t0;
  Annealer::State trial;
  while (result.trace.moves < params.moves && temperature >= params.stop_ratio * t0) {
    trial = current;
    annealer.RandomMove(trial, rng);
    const Annealer::Score next = annealer.Evaluate(trial);
    ++result.trace.moves;
    const double delta = next.cost - score.cost;
    if (delta <= 0 || UniformReal(rng) < std::exp(-delta / temperature)) {
      std::swap(current, trial);
      score = next;
      ++result.trace.accepted;
      if (score.total < best_total) {
        best_total = score.total;
        best = current;
        result.trace.best_history.push_back(best_total);
      }
    }
    if (result.trace.moves % step == 0) temperature *= params.cooling;
  }

  annealer.Evaluate(best);
  result.pair = {best.positive, best.negative};
  result.selected.assign(n, 0);
  for (int b = 0; b < n; ++b) result.selected[b] = best.on[b] && annealer.inside()[b];
  result.x = annealer.x();
  result.y = annealer.y();
  result.total = best_total;
  return result;
}

Solve2DResult Solve2D(const Instance& instance, const Solve2DParams& params) {
  if (instance.mode != Mode::k2D) {
    throw ValidationError("solve_2d requires a 2d instance");
  }
  Solve2DResult out;
  const std::vector<int> kept = PreFilter(instance, params.keep_fraction);
  out.kept = static_cast<int>(kept.size());
  const std::vector<double> profits = BaselineProfits(instance);
  const size_t threshold =
      params.cluster_threshold < 0
          ? kept.size() / 2
          : std::min<size_t>(static_cast<size_t>(params.cluster_threshold), kept.size());
  const Clustering clustering =
      ClusterCandidates(instance, kept, profits, threshold, params.tolerances);
  out.clustering = clustering.stats;
  out.blocks = static_cast<int>(clustering.roots.size());
  const SaResult sa = SaOptimize(instance, clustering, params.sa);
  out.sa = sa.trace;

  // Character-level sequence pair from the selected blocks.
  const int blocks = static_cast<int>(clustering.roots.size());
  std::vector<std::vector<int>> pos(blocks), neg(blocks);
  for (int b = 0; b < blocks; ++b) {
    if (sa.selected[b]) ExpandSequences(clustering, clustering.roots[b], pos[b], neg[b]);
  }
  std::vector<CandidateId> positive, negative;
  for (int b : sa.pair.positive) {
    for (int i : pos[b]) positive.push_back(instance.candidates[i].id);
  }
  for (int b : sa.pair.negative) {
    for (int i : neg[b]) negative.push_back(instance.candidates[i].id);
  }
  const Placement2D packed = SpPack(instance, positive, negative);
  const CandidateIndex index(instance);
  std::vector<char> keep(instance.candidates.size(), 0);
  for (const PlacedCharacter& p : packed.placed) {
    const CharacterCandidate& c = instance.candidates[index.at(p.id)];
    if (p.x + c.blank_left + c.pattern_width <= instance.stencil_width &&
        p.y + c.blank_bottom + c.pattern_height <= instance.stencil_height) {
      keep[index.at(p.id)] = 1;
      out.placement.placed.push_back(p);
    }
  }
  for (CandidateId id : packed.seq_positive) {
    if (keep[index.at(id)]) out.placement.seq_positive.push_back(id);
  }
  for (CandidateId id : packed.seq_negative) {
    if (keep[index.at(id)]) out.placement.seq_negative.push_back(id);
  }
  out.report = Evaluate(instance, out.placement.SelectedIds());
  return out;
}

}  // namespace osp
