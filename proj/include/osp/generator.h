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


#ifndef OSP_GENERATOR_H_
#define OSP_GENERATOR_H_

#include <cstdint>
#include <random>
#include <string>

#include "osp/model.h"

namespace osp {

class GenerationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Parameters of the synthetic benchmark generator. Candidate widths, blanks,
// VSB shot counts and per-region repeat counts are drawn uniformly from the
// closed ranges below; each region's repeat count is zero with probability
// zero_usage_percent / 100.
struct GeneratorSpec {
  int candidate_count = 1000;
  Micron stencil_width = 1000;
  Micron stencil_height = 1000;
  Mode mode = Mode::k1D;
  int regions = 10;
  // 1D only. Every candidate is exactly this tall; rows = H / row_height.
  Micron row_height = 40;
  Micron width_min = 30;
  Micron width_max = 50;
  // 2D only.
  Micron height_min = 30;
  Micron height_max = 50;
  Micron blank_min = 2;
  Micron blank_max = 10;
  ShotCount shots_min = 5;
  ShotCount shots_max = 30;
  ShotCount usage_max = 400;
  int zero_usage_percent = 20;
};

// "small": 1000 candidates on 1000 x 1000; "large": 4000 on 2000 x 2000.
// Throws GenerationError on an unknown name.
GeneratorSpec Preset(const std::string& name, Mode mode, int regions);

// Deterministic in (spec, seed). Throws GenerationError when the spec cannot
// produce a valid instance.
Instance GenerateInstance(const GeneratorSpec& spec, uint64_t seed);

// Uniform integer in [lo, hi] from a 64-bit engine; unlike
// std::uniform_int_distribution the sequence is identical on every standard
// library.
int64_t UniformInt(std::mt19937_64& rng, int64_t lo, int64_t hi);

// Uniform double in [0, 1).
double UniformReal(std::mt19937_64& rng);

}  // namespace osp

#endif  // OSP_GENERATOR_H_
