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

// Domain types for overlapping-aware stencil planning on a multi-column-cell
// e-beam writer. All lengths are integer micrometers.

#ifndef OSP_MODEL_H_
#define OSP_MODEL_H_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace osp {

using CandidateId = int64_t;
using Micron = int64_t;
using ShotCount = int64_t;

// Thrown when an instance or placement violates a structural invariant. The
// message names the invariant.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Thrown when an instance file cannot be parsed. Carries the offending field.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Thrown when a selection or placement references an id the instance does not
// contain.
class UnknownIdError : public std::invalid_argument {
 public:
  explicit UnknownIdError(CandidateId id)
      : std::invalid_argument("unknown candidate id " + std::to_string(id)),
        id_(id) {}
  CandidateId id() const { return id_; }

 private:
  CandidateId id_;
};

// Ceiling of the average of the two horizontal blanks.
inline Micron SymmetricSlack(Micron left, Micron right) {
  return (left + right + 1) / 2;
}

struct CharacterCandidate {
  CandidateId id = 0;
  Micron pattern_width = 0;
  Micron pattern_height = 0;
  Micron blank_left = 0;
  Micron blank_right = 0;
  Micron blank_top = 0;
  Micron blank_bottom = 0;
  // Shots needed to write one repeat in variable-shaped-beam mode.
  ShotCount vsb_shots = 1;
  // Repeat count of this pattern in each region of the wafer.
  std::vector<ShotCount> usage;

  Micron width() const { return blank_left + pattern_width + blank_right; }
  Micron height() const { return blank_bottom + pattern_height + blank_top; }
  Micron slack() const { return SymmetricSlack(blank_left, blank_right); }
  // Shots saved in `region` when the candidate is on the stencil.
  ShotCount reduction(int region) const {
    return usage[region] * (vsb_shots - 1);
  }

  friend bool operator==(const CharacterCandidate&,
                         const CharacterCandidate&) = default;
};

enum class Mode { k1D, k2D };

const char* ModeName(Mode mode);

struct Instance {
  std::vector<CharacterCandidate> candidates;
  Micron stencil_width = 0;
  Micron stencil_height = 0;
  Mode mode = Mode::k1D;
  // Row structure; meaningful only in 1D mode.
  int row_count = 0;
  Micron row_height = 0;
  int region_count = 1;
  uint64_t seed = 0;

  friend bool operator==(const Instance&, const Instance&) = default;
};

// Throws ValidationError naming the first violated invariant.
void ValidateInstance(const Instance& instance);

// Maps candidate id to its index in `instance.candidates`.
class CandidateIndex {
 public:
  explicit CandidateIndex(const Instance& instance);
  // Throws UnknownIdError.
  int at(CandidateId id) const;
  bool contains(CandidateId id) const { return index_.count(id) > 0; }

 private:
  std::unordered_map<CandidateId, int> index_;
};

struct RowSlot {
  CandidateId id = 0;
  // Left edge of the candidate's blank-inclusive box.
  Micron x = 0;

  friend bool operator==(const RowSlot&, const RowSlot&) = default;
};

struct Placement1D {
  std::vector<std::vector<RowSlot>> rows;

  std::vector<CandidateId> SelectedIds() const;
  friend bool operator==(const Placement1D&, const Placement1D&) = default;
};

struct PlacedCharacter {
  CandidateId id = 0;
  // Lower-left corner of the blank-inclusive box.
  Micron x = 0;
  Micron y = 0;

  friend bool operator==(const PlacedCharacter&,
                         const PlacedCharacter&) = default;
};

struct Placement2D {
  std::vector<PlacedCharacter> placed;
  std::vector<CandidateId> seq_positive;
  std::vector<CandidateId> seq_negative;

  std::vector<CandidateId> SelectedIds() const;
  friend bool operator==(const Placement2D&, const Placement2D&) = default;
};

struct WritingTimeReport {
  std::vector<ShotCount> per_region;
  ShotCount total = 0;
  std::vector<ShotCount> vsb;
  // Sorted ascending.
  std::vector<CandidateId> selected;
  ShotCount sum_shots = 0;

  friend bool operator==(const WritingTimeReport&,
                         const WritingTimeReport&) = default;
};

}  // namespace osp

#endif  // OSP_MODEL_H_
