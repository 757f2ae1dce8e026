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


#include "osp/generator.h"

#include <limits>

namespace osp {

int64_t UniformInt(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  if (span == 0) return lo + static_cast<int64_t>(rng());
  const uint64_t limit = std::numeric_limits<uint64_t>::max() -
                         std::numeric_limits<uint64_t>::max() % span;
  uint64_t draw;
  do {
    draw = rng();
  } while (draw >= limit);
  return lo + static_cast<int64_t>(draw % span);
}

double UniformReal(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

GeneratorSpec Preset(const std::string& name, Mode mode, int regions) {
  GeneratorSpec spec;
  spec.mode = mode;
  spec.regions = regions;
  if (name == "small") {
    spec.candidate_count = 1000;
    spec.stencil_width = spec.stencil_height = 1000;
  } else if (name == "large") {
    spec.candidate_count = 4000;
    spec.stencil_width = spec.stencil_height = 2000;
  } else {
    throw GenerationError("unknown preset '" + name + "'");
  }
  return spec;
}

Instance GenerateInstance(const GeneratorSpec& spec, uint64_t seed) {
  if (spec.candidate_count < 0 || spec.regions < 1 || spec.stencil_width <= 0 ||
      spec.stencil_height <= 0) {
    throw GenerationError("generator sizes must be positive");
  }
  if (spec.blank_min < 0 || spec.blank_min > spec.blank_max ||
      spec.width_min > spec.width_max || spec.shots_min < 1 ||
      spec.shots_min > spec.shots_max || spec.usage_max < 0) {
    throw GenerationError("generator ranges must be ordered and non-negative");
  }
  if (spec.width_min <= 2 * spec.blank_max) {
    throw GenerationError("width_min must exceed twice blank_max");
  }
  Instance instance;
  instance.mode = spec.mode;
  instance.stencil_width = spec.stencil_width;
  instance.stencil_height = spec.stencil_height;
  instance.region_count = spec.regions;
  instance.seed = seed;
  if (spec.mode == Mode::k1D) {
    if (spec.row_height <= 2 * spec.blank_max) {
      throw GenerationError(
          "row_height cannot fit one candidate (must exceed twice blank_max)");
    }
    if (spec.row_height > spec.stencil_height) {
      throw GenerationError("row_height exceeds stencil height");
    }
    instance.row_height = spec.row_height;
    instance.row_count = static_cast<int>(spec.stencil_height / spec.row_height);
  } else if (spec.height_min <= 2 * spec.blank_max ||
             spec.height_min > spec.height_max) {
    throw GenerationError("height range must exceed twice blank_max");
  }

  std::mt19937_64 rng(seed);
  instance.candidates.reserve(spec.candidate_count);
  for (int k = 0; k < spec.candidate_count; ++k) {
    CharacterCandidate c;
    c.id = k;
    const Micron width = UniformInt(rng, spec.width_min, spec.width_max);
    c.blank_left = UniformInt(rng, spec.blank_min, spec.blank_max);
    c.blank_right = UniformInt(rng, spec.blank_min, spec.blank_max);
    c.pattern_width = width - c.blank_left - c.blank_right;
    const Micron height =
        spec.mode == Mode::k1D
            ? spec.row_height
            : UniformInt(rng, spec.height_min, spec.height_max);
    c.blank_bottom = UniformInt(rng, spec.blank_min, spec.blank_max);
    c.blank_top = UniformInt(rng, spec.blank_min, spec.blank_max);
    c.pattern_height = height - c.blank_bottom - c.blank_top;
    c.vsb_shots = UniformInt(rng, spec.shots_min, spec.shots_max);
    c.usage.resize(spec.regions);
    for (ShotCount& t : c.usage) {
      const bool zero = UniformInt(rng, 0, 99) < spec.zero_usage_percent;
      t = zero ? 0 : UniformInt(rng, 0, spec.usage_max);
    }
    instance.candidates.push_back(std::move(c));
  }
  ValidateInstance(instance);
  return instance;
}

}  // namespace osp
