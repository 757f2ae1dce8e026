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


// JSON serialization for instances, placements and writing-time reports.
//
// Instance document:
//   {"format_version": 1, "mode": "1d"|"2d",
//    "stencil": {"w": W, "h": H, "rows": M, "row_height": RH},
//    "regions": P, "seed": S,
//    "candidates": [{"id", "pw", "ph", "sl", "sr", "st", "sb", "n",
//                    "t": [...]}, ...]}

#ifndef OSP_INSTANCE_IO_H_
#define OSP_INSTANCE_IO_H_

#include <filesystem>
#include <string>

#include "json.hpp"
#include "osp/model.h"

namespace osp {

using Json = nlohmann::ordered_json;

inline constexpr int kFormatVersion = 1;

Json InstanceToJson(const Instance& instance);
// Throws ParseError for type/shape problems and ValidationError for violated
// instance invariants.
Instance InstanceFromJson(const Json& doc);

std::string SerializeInstance(const Instance& instance);
Instance ParseInstance(const std::string& text);

void SaveInstance(const Instance& instance, const std::filesystem::path& path);
Instance LoadInstance(const std::filesystem::path& path);

Json ReportToJson(const WritingTimeReport& report, double runtime_ms);
WritingTimeReport ReportFromJson(const Json& doc);

Json PlacementToJson(const Placement1D& placement);
Json PlacementToJson(const Placement2D& placement);
Placement1D Placement1DFromJson(const Json& doc);
Placement2D Placement2DFromJson(const Json& doc);

Json ReadJsonFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, const std::string& text);

}  // namespace osp

#endif  // OSP_INSTANCE_IO_H_
