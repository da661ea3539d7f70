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
#include <string_view>
#include <vector>

#include "ctxforge/model.hpp"

namespace ctxforge {

// nlohmann ADL hooks. Readers throw SchemaError on shape or type mismatches
// and the model's own errors (EmptyField, FormulaParseError) on invariant
// violations.
void to_json(Json& j, const ProblemTemplate& p);
void from_json(const Json& j, ProblemTemplate& p);
void to_json(Json& j, const Interest& i);
void from_json(const Json& j, Interest& i);
void to_json(Json& j, const CheckResult& c);
void from_json(const Json& j, CheckResult& c);
void to_json(Json& j, const ValidationReport& r);
void from_json(const Json& j, ValidationReport& r);
void to_json(Json& j, const ContextVariant& v);
void from_json(const Json& j, ContextVariant& v);

/// {"problems": [...], "interests": [...]}
struct ProblemSet {
  std::vector<ProblemTemplate> problems;
  std::vector<Interest> interests;
};

/// Also enforces unique problem ids and case-insensitively unique labels.
ProblemSet problem_set_from_json(const Json& j);
ProblemSet load_problem_set(const std::filesystem::path& path);

/// Reads a whole file; throws IoError.
std::string read_file(const std::filesystem::path& path);
/// Writes through a temporary sibling, fsyncs, then renames over `path`.
/// Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);
/// Parses JSON text; throws SchemaError with the parser's message.
Json parse_json(const std::string& text);

}  // namespace ctxforge
