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


#include "osp/instance_io.h"

#include <fstream>
#include <sstream>

namespace osp {
namespace {

const Json& Field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) throw ParseError(where + ": expected object");
  auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + "." + key + ": missing");
  return *it;
}

int64_t IntField(const Json& obj, const char* key, const std::string& where) {
  const Json& v = Field(obj, key, where);
  if (!v.is_number_integer()) {
    throw ParseError(where + "." + key + ": expected integer");
  }
  return v.get<int64_t>();
}

std::string Locate(const std::string& text, size_t byte) {
  size_t line = 1;
  size_t column = 1;
  for (size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      column = 1;
    } else {
      ++column;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

Json ParseJsonText(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(Locate(text, e.byte) + ": malformed JSON");
  }
}

}  // namespace

Json InstanceToJson(const Instance& instance) {
  Json candidates = Json::array();
  for (const CharacterCandidate& c : instance.candidates) {
    candidates.push_back({{"id", c.id},
                          {"pw", c.pattern_width},
                          {"ph", c.pattern_height},
                          {"sl", c.blank_left},
                          {"sr", c.blank_right},
                          {"st", c.blank_top},
                          {"sb", c.blank_bottom},
                          {"n", c.vsb_shots},
                          {"t", c.usage}});
  }
  return Json{{"format_version", kFormatVersion},
              {"mode", ModeName(instance.mode)},
              {"stencil",
               {{"w", instance.stencil_width},
                {"h", instance.stencil_height},
                {"rows", instance.row_count},
                {"row_height", instance.row_height}}},
              {"regions", instance.region_count},
              {"candidates", std::move(candidates)},
              {"seed", instance.seed}};
}

Instance InstanceFromJson(const Json& doc) {
  const std::string root = "$";
  if (IntField(doc, "format_version", root) != kFormatVersion) {
    throw ParseError("$.format_version: unsupported version");
  }
  Instance instance;
  const Json& mode = Field(doc, "mode", root);
  if (mode == "1d") {
    instance.mode = Mode::k1D;
  } else if (mode == "2d") {
    instance.mode = Mode::k2D;
  } else {
    throw ParseError("$.mode: expected \"1d\" or \"2d\"");
  }
  const Json& stencil = Field(doc, "stencil", root);
  instance.stencil_width = IntField(stencil, "w", "$.stencil");
  instance.stencil_height = IntField(stencil, "h", "$.stencil");
  instance.row_count = static_cast<int>(IntField(stencil, "rows", "$.stencil"));
  instance.row_height = IntField(stencil, "row_height", "$.stencil");
  instance.region_count = static_cast<int>(IntField(doc, "regions", root));
  const Json& seed = Field(doc, "seed", root);
  if (!seed.is_number_unsigned() && !seed.is_number_integer()) {
    throw ParseError("$.seed: expected integer");
  }
  instance.seed = seed.get<uint64_t>();

  const Json& list = Field(doc, "candidates", root);
  if (!list.is_array()) throw ParseError("$.candidates: expected array");
  for (size_t k = 0; k < list.size(); ++k) {
    const std::string where = "$.candidates[" + std::to_string(k) + "]";
    const Json& item = list[k];
    CharacterCandidate c;
    c.id = IntField(item, "id", where);
    c.pattern_width = IntField(item, "pw", where);
    c.pattern_height = IntField(item, "ph", where);
    c.blank_left = IntField(item, "sl", where);
    c.blank_right = IntField(item, "sr", where);
    c.blank_top = IntField(item, "st", where);
    c.blank_bottom = IntField(item, "sb", where);
    c.vsb_shots = IntField(item, "n", where);
    const Json& usage = Field(item, "t", where);
    if (!usage.is_array()) throw ParseError(where + ".t: expected array");
    for (size_t r = 0; r < usage.size(); ++r) {
      if (!usage[r].is_number_integer()) {
        throw ParseError(where + ".t[" + std::to_string(r) +
                         "]: expected integer");
      }
      c.usage.push_back(usage[r].get<int64_t>());
    }
    instance.candidates.push_back(std::move(c));
  }
  ValidateInstance(instance);
  return instance;
}

std::string SerializeInstance(const Instance& instance) {
  return InstanceToJson(instance).dump(1) + "\n";
}

Instance ParseInstance(const std::string& text) {
  return InstanceFromJson(ParseJsonText(text));
}

void SaveInstance(const Instance& instance, const std::filesystem::path& path) {
  WriteTextFile(path, SerializeInstance(instance));
}

Instance LoadInstance(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseInstance(buffer.str());
}

Json ReportToJson(const WritingTimeReport& report, double runtime_ms) {
  return Json{{"t_total", report.total},
              {"t_per_region", report.per_region},
              {"t_vsb", report.vsb},
              {"sum_shots", report.sum_shots},
              {"selected", report.selected},
              {"runtime_ms", runtime_ms}};
}

WritingTimeReport ReportFromJson(const Json& doc) {
  WritingTimeReport report;
  report.total = IntField(doc, "t_total", "$");
  report.per_region =
      Field(doc, "t_per_region", "$").get<std::vector<ShotCount>>();
  report.vsb = Field(doc, "t_vsb", "$").get<std::vector<ShotCount>>();
  report.sum_shots = IntField(doc, "sum_shots", "$");
  report.selected = Field(doc, "selected", "$").get<std::vector<CandidateId>>();
  return report;
}

Json PlacementToJson(const Placement1D& placement) {
  Json rows = Json::array();
  for (const auto& row : placement.rows) {
    Json slots = Json::array();
    for (const RowSlot& slot : row) slots.push_back({{"id", slot.id}, {"x", slot.x}});
    rows.push_back(std::move(slots));
  }
  return Json{{"mode", "1d"}, {"rows", std::move(rows)}};
}

Json PlacementToJson(const Placement2D& placement) {
  Json placed = Json::array();
  for (const PlacedCharacter& p : placement.placed) {
    placed.push_back({{"id", p.id}, {"x", p.x}, {"y", p.y}});
  }
  return Json{{"mode", "2d"},
              {"placed", std::move(placed)},
              {"seq_positive", placement.seq_positive},
              {"seq_negative", placement.seq_negative}};
}

Placement1D Placement1DFromJson(const Json& doc) {
  if (Field(doc, "mode", "$") != "1d") throw ParseError("$.mode: expected \"1d\"");
  const Json& rows = Field(doc, "rows", "$");
  if (!rows.is_array()) throw ParseError("$.rows: expected array");
  Placement1D placement;
  for (size_t r = 0; r < rows.size(); ++r) {
    const std::string where = "$.rows[" + std::to_string(r) + "]";
    if (!rows[r].is_array()) throw ParseError(where + ": expected array");
    std::vector<RowSlot>& row = placement.rows.emplace_back();
    for (size_t k = 0; k < rows[r].size(); ++k) {
      const std::string slot = where + "[" + std::to_string(k) + "]";
      row.push_back({IntField(rows[r][k], "id", slot),
                     IntField(rows[r][k], "x", slot)});
    }
  }
  return placement;
}

Placement2D Placement2DFromJson(const Json& doc) {
  if (Field(doc, "mode", "$") != "2d") throw ParseError("$.mode: expected \"2d\"");
  const Json& placed = Field(doc, "placed", "$");
  if (!placed.is_array()) throw ParseError("$.placed: expected array");
  Placement2D placement;
  for (size_t k = 0; k < placed.size(); ++k) {
    const std::string where = "$.placed[" + std::to_string(k) + "]";
    placement.placed.push_back({IntField(placed[k], "id", where),
                                IntField(placed[k], "x", where),
                                IntField(placed[k], "y", where)});
  }
  auto ids = [&](const char* key) {
    auto it = doc.find(key);
    if (it == doc.end()) return std::vector<CandidateId>{};
    if (!it->is_array()) throw ParseError(std::string("$.") + key + ": expected array");
    return it->get<std::vector<CandidateId>>();
  };
  placement.seq_positive = ids("seq_positive");
  placement.seq_negative = ids("seq_negative");
  return placement;
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string() + ": cannot open");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseJsonText(buffer.str());
}

void WriteTextFile(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error(path.string() + ": cannot write");
  out << text;
}

}  // namespace osp
