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
#include <vector>

#include "ctxforge/model.hpp"

namespace ctxforge::prompting {

struct ExemplarOutput {
  std::string interest;
  std::string output_problem;

  bool operator==(const ExemplarOutput&) const = default;
};

/// A worked input problem with one or more contextualized outputs.
struct Exemplar {
  std::string input_problem;
  std::vector<ExemplarOutput> outputs;

  bool operator==(const Exemplar&) const = default;
};

struct PromptTemplate {
  std::string preamble;
  std::vector<Exemplar> exemplars;
  std::vector<std::string> rules;

  bool operator==(const PromptTemplate&) const = default;
};

/// The published few-shot prompt: three exemplars and three rules.
const PromptTemplate& default_template();

/// Renders the prompt. The layout is
///
///   <preamble>
///   Input Problem N: / Output Problem N based on interest "<label>": blocks
///   Now give output for / input problem: <text> / Interest: <label>
///   Some rules to follow: 1. ... 2. ... 3. ...
///
/// with blank lines between blocks and a trailing newline. Pure function.
std::string build_prompt(const PromptTemplate& tmpl, const ProblemTemplate& problem,
                         const Interest& interest);

/// Checks invariants: non-empty rules, at least one output per exemplar, and
/// the default rules (when all present) kept in their original order.
/// Throws SchemaError.
void check_template(const PromptTemplate& tmpl);

/// {preamble, exemplars: [{input_problem, outputs: [{interest, output_problem}]}], rules}
PromptTemplate template_from_json(const Json& j);
Json template_to_json(const PromptTemplate& tmpl);
PromptTemplate load_template(const std::filesystem::path& path);

}  // namespace ctxforge::prompting
