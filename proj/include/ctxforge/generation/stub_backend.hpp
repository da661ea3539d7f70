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
#include <map>
#include <memory>
#include <string>
#include <utility>

#include "ctxforge/generation/backend.hpp"
#include "ctxforge/model.hpp"

namespace ctxforge::generation {

class FixtureParseError : public Error {
 public:
  using Error::Error;
};

/// Offline backend answering from a (problem_id, interest) -> text table.
/// Never touches the network.
///
/// With fallback enabled, an unknown key yields the original text behind a
/// templated lead-in naming the interest; such results carry fallback=true.
class StubBackend : public Backend {
 public:
  using Key = std::pair<std::string, std::string>;

  explicit StubBackend(std::map<Key, std::string> entries, bool fallback = false);

  /// {"entries": [{"problem_id", "interest", "text"}]}; duplicate keys are
  /// rejected. Throws FixtureParseError.
  static StubBackend from_json(const Json& j, bool fallback = false);

  GenerationResult generate(const GenerationRequest& request) override;
  std::string id() const override { return "stub"; }

  std::size_t size() const { return entries_.size(); }
  bool contains(const std::string& problem_id, const std::string& interest) const;

  static std::string fallback_text(const std::string& interest, const std::string& original);

 private:
  std::map<Key, std::string> entries_;
  bool fallback_;
};

/// Loads a fixture file. Throws FixtureParseError (including unreadable files).
std::unique_ptr<StubBackend> stub_from_fixtures(const std::filesystem::path& path,
                                                bool fallback = false);

}  // namespace ctxforge::generation
