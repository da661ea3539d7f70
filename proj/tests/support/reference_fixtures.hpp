// Copyright 2026 The ctxforge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <filesystem>
#include <string>

#include "ctxforge/errors.hpp"
#include "ctxforge/json_io.hpp"
#include "ctxforge/model.hpp"

namespace ctxforge::testing {

inline std::filesystem::path data_dir() { return CTXFORGE_DATA_DIR; }
inline std::filesystem::path golden_dir() { return CTXFORGE_GOLDEN_DIR; }

inline const ProblemSet& ref_set() {
  static const ProblemSet set = load_problem_set(data_dir() / "reference" / "problems.json");
  return set;
}

inline const ProblemTemplate& ref_problem(const std::string& id) {
  for (const auto& p : ref_set().problems) {
    if (p.id == id) return p;
  }
  throw NotFound(id);
}

inline const Interest& ref_interest(const std::string& label) {
  for (const auto& i : ref_set().interests) {
    if (i.label == label) return i;
  }
  throw NotFound(label);
}

// Reference rewrite text, straight from the fixture file.
inline std::string ref_variant(const std::string& problem_id, const std::string& interest) {
  static const Json entries =
      parse_json(read_file(data_dir() / "reference" / "variants.json")).at("entries");
  for (const auto& e : entries) {
    if (e.at("problem_id") == problem_id && e.at("interest") == interest) {
      return e.at("text").get<std::string>();
    }
  }
  throw NotFound(problem_id + "/" + interest);
}

}  // namespace ctxforge::testing
