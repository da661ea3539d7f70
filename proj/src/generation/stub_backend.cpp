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

#include "ctxforge/generation/stub_backend.hpp"

#include "ctxforge/json_io.hpp"

namespace ctxforge::generation {

StubBackend::StubBackend(std::map<Key, std::string> entries, bool fallback)
    : entries_(std::move(entries)), fallback_(fallback) {}

StubBackend StubBackend::from_json(const Json& j, bool fallback) {
  if (!j.is_object() || !j.contains("entries") || !j["entries"].is_array()) {
    throw FixtureParseError("fixture file must be an object with an 'entries' array");
  }
  std::map<Key, std::string> entries;
  std::size_t index = 0;
  for (const auto& e : j["entries"]) {
    const auto where = "entries[" + std::to_string(index++) + "]";
    if (!e.is_object()) throw FixtureParseError(where + " is not an object");
    for (const char* field : {"problem_id", "interest", "text"}) {
      if (!e.contains(field) || !e[field].is_string()) {
        throw FixtureParseError(where + ": '" + field + "' must be a string");
      }
    }
    Key key{e["problem_id"].get<std::string>(), e["interest"].get<std::string>()};
    const auto text = e["text"].get<std::string>();
    if (text.empty()) throw FixtureParseError(where + ": empty text");
    if (!entries.emplace(key, text).second) {
      throw FixtureParseError(where + ": duplicate key (" + key.first + ", " + key.second + ")");
    }
  }
  return StubBackend(std::move(entries), fallback);
}

bool StubBackend::contains(const std::string& problem_id, const std::string& interest) const {
  return entries_.count({problem_id, interest}) > 0;
}

std::string StubBackend::fallback_text(const std::string& interest, const std::string& original) {
  return "Here is a problem for someone interested in " + interest + ".\n\n" + original;
}

GenerationResult StubBackend::generate(const GenerationRequest& request) {
  check_request(request);
  if (!request.context) {
    throw GenerationError(ErrorKind::kStubMiss, "request has no (problem_id, interest) context");
  }
  const auto& ctx = *request.context;
  GenerationResult result;
  result.backend_id = id();
  if (auto it = entries_.find({ctx.problem_id, ctx.interest}); it != entries_.end()) {
    result.text = it->second;
    return result;
  }
  if (!fallback_ || ctx.original_text.empty()) {
    throw GenerationError(ErrorKind::kStubMiss,
                          "no fixture for (" + ctx.problem_id + ", " + ctx.interest + ")");
  }
  result.text = fallback_text(ctx.interest, ctx.original_text);
  result.fallback = true;
  return result;
}

std::unique_ptr<StubBackend> stub_from_fixtures(const std::filesystem::path& path, bool fallback) {
  Json j;
  try {
    j = parse_json(read_file(path));
  } catch (const Error& e) {
    throw FixtureParseError(path.string() + ": " + e.what());
  }
  return std::make_unique<StubBackend>(StubBackend::from_json(j, fallback));
}

}  // namespace ctxforge::generation
