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


#include "osp/model.h"

#include <unordered_set>

namespace osp {

const char* ModeName(Mode mode) { return mode == Mode::k1D ? "1d" : "2d"; }

namespace {

void Require(bool condition, const std::string& invariant) {
  if (!condition) throw ValidationError(invariant);
}

std::string Tag(const CharacterCandidate& c) {
  return "candidate " + std::to_string(c.id) + ": ";
}

}  // namespace

void ValidateInstance(const Instance& instance) {
  Require(instance.stencil_width > 0, "stencil width > 0");
  Require(instance.stencil_height > 0, "stencil height > 0");
  Require(instance.region_count >= 1, "regions >= 1");
  if (instance.mode == Mode::k1D) {
    Require(instance.row_count >= 1, "rows >= 1");
    Require(instance.row_height > 0, "row_height > 0");
    Require(instance.row_count * instance.row_height <= instance.stencil_height,
            "rows * row_height <= stencil height");
  }
  std::unordered_set<CandidateId> seen;
  for (const CharacterCandidate& c : instance.candidates) {
    Require(seen.insert(c.id).second, Tag(c) + "candidate ids unique");
    Require(c.pattern_width > 0, Tag(c) + "pattern width > 0");
    Require(c.pattern_height > 0, Tag(c) + "pattern height > 0");
    Require(c.blank_left >= 0 && c.blank_right >= 0 && c.blank_top >= 0 &&
                c.blank_bottom >= 0,
            Tag(c) + "blanks >= 0");
    Require(c.vsb_shots >= 1, Tag(c) + "vsb_shots >= 1");
    Require(static_cast<int>(c.usage.size()) == instance.region_count,
            Tag(c) + "usage length == regions");
    for (ShotCount t : c.usage) Require(t >= 0, Tag(c) + "usage >= 0");
    if (instance.mode == Mode::k1D) {
      Require(c.height() <= instance.row_height,
              Tag(c) + "height <= row_height");
    }
  }
}

CandidateIndex::CandidateIndex(const Instance& instance) {
  index_.reserve(instance.candidates.size());
  for (size_t i = 0; i < instance.candidates.size(); ++i) {
    index_.emplace(instance.candidates[i].id, static_cast<int>(i));
  }
}

int CandidateIndex::at(CandidateId id) const {
  auto it = index_.find(id);
  if (it == index_.end()) throw UnknownIdError(id);
  return it->second;
}

std::vector<CandidateId> Placement1D::SelectedIds() const {
  std::vector<CandidateId> ids;
  for (const auto& row : rows) {
    for (const RowSlot& slot : row) ids.push_back(slot.id);
  }
  return ids;
}

std::vector<CandidateId> Placement2D::SelectedIds() const {
  std::vector<CandidateId> ids;
  ids.reserve(placed.size());
  for (const PlacedCharacter& p : placed) ids.push_back(p.id);
  return ids;
}

}  // namespace osp
