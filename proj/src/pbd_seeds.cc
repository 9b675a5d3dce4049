// Copyright 2026 The cfgperf Authors
//
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

#include "cfgperf/pbd_seeds.h"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "cfgperf/error.h"
#include "json.hpp"

namespace cfgperf {

std::string PbdSeed::id() const {
  return std::to_string(configs) + "x" + std::to_string(levels);
}

namespace {

void Validate(const PbdSeed& s) {
  if (s.levels < 2 || s.configs == 0 || s.vector.size() != s.configs) {
    throw Error(ErrorCode::kInvalidData, "PBD seed " + s.id() + " has a bad shape");
  }
  std::vector<std::size_t> counts(s.levels, 0);
  for (int v : s.vector) {
    if (v < 0 || static_cast<std::size_t>(v) >= s.levels) {
      throw Error(ErrorCode::kInvalidData, "PBD seed " + s.id() + " level out of range");
    }
    ++counts[static_cast<std::size_t>(v)];
  }
  if (s.configs % s.levels == 0) {
    for (std::size_t c : counts) {
      if (c != s.configs / s.levels) {
        throw Error(ErrorCode::kInvalidData, "PBD seed " + s.id() + " is unbalanced");
      }
    }
  }
}

}  // namespace

// m-sequences over GF(levels) with a zero appended.
const std::vector<PbdSeed>& BuiltinPbdSeeds() {
  static const std::vector<PbdSeed> seeds = {
      {9, 3,
       {
           0, 1, 2, 2, 0, 2, 1, 1, 0}},
      {25, 5,
       {
           0, 1, 4, 4, 3, 4, 0, 2, 3, 3, 1, 3, 0, 4, 1, 1, 2, 1, 0, 3, 2, 2, 4, 2, 0}},
      {49, 7,
       {
           0, 1, 6, 5, 5, 1, 5, 6, 0, 3, 4, 1, 1, 3, 1, 4, 0, 2, 5, 3, 3, 2, 3, 5, 0,
           6, 1, 2, 2, 6, 2, 1, 0, 4, 3, 6, 6, 4, 6, 3, 0, 5, 2, 4, 4, 5, 4, 2, 0}},
      {125, 5,
       {
           0, 0, 1, 4, 1, 2, 0, 3, 3, 2, 2, 2, 4, 2, 4, 3, 3, 4, 0, 4, 3, 2, 0, 4, 2,
           3, 4, 2, 2, 0, 1, 0, 0, 3, 2, 3, 1, 0, 4, 4, 1, 1, 1, 2, 1, 2, 4, 4, 2, 0,
           2, 4, 1, 0, 2, 1, 4, 2, 1, 1, 0, 3, 0, 0, 4, 1, 4, 3, 0, 2, 2, 3, 3, 3, 1,
           3, 1, 2, 2, 1, 0, 1, 2, 3, 0, 1, 3, 2, 1, 3, 3, 0, 4, 0, 0, 2, 3, 2, 4, 0,
           1, 1, 4, 4, 4, 3, 4, 3, 1, 1, 3, 0, 3, 1, 4, 0, 3, 4, 1, 3, 4, 4, 0, 2, 0}},
  };
  return seeds;
}

std::vector<PbdSeed> ParsePbdSeeds(const std::string& json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidData, std::string("PBD seed file: ") + e.what());
  }
  if (!doc.is_array()) throw Error(ErrorCode::kInvalidData, "PBD seed file must be a list");
  std::vector<PbdSeed> out;
  for (const auto& e : doc) {
    PbdSeed s;
    try {
      const std::string id = e.at("id").get<std::string>();
      const auto x = id.find('x');
      if (x == std::string::npos) throw std::invalid_argument(id);
      s.configs = std::stoul(id.substr(0, x));
      s.levels = e.at("levels").get<std::size_t>();
      if (std::stoul(id.substr(x + 1)) != s.levels) {
        throw Error(ErrorCode::kInvalidData, "PBD id " + id + " disagrees with levels");
      }
      s.vector = e.at("vector").get<std::vector<int>>();
    } catch (const nlohmann::json::exception& ex) {
      throw Error(ErrorCode::kInvalidData, std::string("PBD seed entry: ") + ex.what());
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::kInvalidData, "PBD seed entry has a malformed id");
    }
    Validate(s);
    out.push_back(std::move(s));
  }
  return out;
}

std::vector<PbdSeed> LoadPbdSeeds(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ParsePbdSeeds(ss.str());
}

const PbdSeed& FindPbdSeed(const std::vector<PbdSeed>& seeds, const std::string& id) {
  for (const auto& s : seeds) {
    if (s.id() == id) return s;
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown PBD seed '" + id + "'");
}

}  // namespace cfgperf
