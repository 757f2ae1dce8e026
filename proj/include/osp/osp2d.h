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


// Free two-dimensional stencil planning: profit pre-filter, clustering of
// similar characters, and fixed-outline simulated annealing over sequence
// pairs of the resulting blocks.

#ifndef OSP_OSP2D_H_
#define OSP_OSP2D_H_

#include <cstdint>
#include <vector>

#include "osp/cluster.h"
#include "osp/model.h"
#include "osp/sequence_pair.h"

namespace osp {

// Indices of the ceil(keep_fraction * n) candidates with the highest profit at
// the all-VSB state, ties by id, returned in instance order. Throws
// std::invalid_argument unless 0 < keep_fraction <= 1.
std::vector<int> PreFilter(const Instance& instance, double keep_fraction);

struct SaParams {
  uint64_t seed = 1;
  // Upper bound on annealing moves after the temperature probe.
  int64_t moves = 200000;
  double cooling = 0.97;
  // Moves per temperature step, as a multiple of the block count.
  double moves_per_step = 100.0;
  // Stop once the temperature falls below this fraction of the start.
  double stop_ratio = 1e-3;
  // Random moves used to pick the start temperature, and the share of uphill
  // moves it should accept.
  int probe_moves = 100;
  double probe_acceptance = 0.5;
};

struct SaTrace {
  int64_t moves = 0;
  int64_t accepted = 0;
  double initial_temperature = 0.0;
  ShotCount initial_total = 0;
  // Best writing time after each improvement, starting with the initial one.
  std::vector<ShotCount> best_history;
};

// Block-level annealing result. `selected` marks blocks that are switched on
// and lie inside the outline at `x`, `y`.
struct SaResult {
  SequencePair pair;
  std::vector<char> selected;
  std::vector<Micron> x;
  std::vector<Micron> y;
  ShotCount total = 0;
  SaTrace trace;
};

// Anneals the top-level blocks of `clustering`. Cost is the writing time
// counting only switched-on blocks inside the outline, plus a penalty per
// micrometer of outline overflow equal to the largest single-region
// reduction of any member. Moves swap two blocks in the positive sequence,
// swap them in both, or switch one block on or off. Starts from a shelf
// packing and returns the best state seen. Deterministic per seed.
SaResult SaOptimize(const Instance& instance, const Clustering& clustering,
                    const SaParams& params);

struct Solve2DParams {
  double keep_fraction = 0.9;
  // Stop clustering at this many blocks; negative means half the kept count.
  int cluster_threshold = -1;
  ClusterTolerances tolerances;
  SaParams sa;
};

struct Solve2DResult {
  Placement2D placement;
  WritingTimeReport report;
  int kept = 0;
  int blocks = 0;
  ClusterStats clustering;
  SaTrace sa;
};

// Pre-filter, clustering, annealing, then expansion of the blocks into a
// character-level sequence pair that is packed again and cropped to the
// outline. Throws ValidationError for a 1D instance.
Solve2DResult Solve2D(const Instance& instance, const Solve2DParams& params = {});

}  // namespace osp

#endif  // OSP_OSP2D_H_
