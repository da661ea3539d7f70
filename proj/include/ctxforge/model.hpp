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

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "ctxforge/decimal.hpp"
#include "ctxforge/timestamp.hpp"

namespace ctxforge {

using Json = nlohmann::ordered_json;

/// An original, authored problem.
struct ProblemTemplate {
  std::string id;
  std::optional<std::string> title;
  std::string body;
  std::optional<std::string> formula;
  std::vector<std::string> sub_questions;
  std::optional<std::string> variable_note;

  bool operator==(const ProblemTemplate&) const = default;
};

/// Builds a ProblemTemplate and checks its invariants.
/// Throws EmptyField or FormulaParseError.
ProblemTemplate new_problem(std::string id, std::string body,
                            std::optional<std::string> formula,
                            std::vector<std::string> sub_questions,
                            std::optional<std::string> variable_note = std::nullopt,
                            std::optional<std::string> title = std::nullopt);

/// Re-checks the invariants of an already built template (used by loaders).
void check_problem(const ProblemTemplate& problem);

/// Body, variable note, formula and numbered sub-questions, one block per
/// part, separated by single blank lines.
std::string full_text(const ProblemTemplate& problem);

struct Interest {
  std::string label;
  std::vector<std::string> keywords;

  bool operator==(const Interest&) const = default;
};

/// Trims the label; throws EmptyField when nothing is left.
Interest make_interest(std::string_view label, std::vector<std::string> keywords = {});

/// Case-insensitive label comparison (labels are unique under it).
bool same_label(std::string_view a, std::string_view b);

struct NumericLiteral {
  Decimal value;
  std::string raw;
  std::size_t offset = 0;
  std::size_t length = 0;

  bool operator==(const NumericLiteral&) const = default;
};

struct QuestionStructure {
  int enumerated_items = 0;
  int question_marks = 0;
  int imperative_tasks = 0;

  int total() const { return enumerated_items + question_marks + imperative_tasks; }
  bool operator==(const QuestionStructure&) const = default;
};

enum class Outcome { kPass, kFail, kWarn, kSkipped };

enum class CheckId {
  kValuePreservation,
  kExpressionPreservation,
  kStructurePreservation,
  kInterestPresence,
  kNontrivialRewrite,
};

enum class Severity { kError, kWarning };

Severity severity_of(CheckId id);

struct CheckResult {
  CheckId check_id = CheckId::kValuePreservation;
  Outcome outcome = Outcome::kSkipped;
  std::string details;
  Json evidence = Json::object();

  bool operator==(const CheckResult&) const = default;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  Outcome overall = Outcome::kPass;

  const CheckResult& check(CheckId id) const;
  bool operator==(const ValidationReport&) const = default;
};

enum class VariantState {
  kGenerated,
  kValidated,
  kNeedsReview,
  kEdited,
  kAccepted,
  kRejected,
  kFailed,
};

struct EditRecord {
  Timestamp at;
  std::string prior_text;

  bool operator==(const EditRecord&) const = default;
};

/// One interest-specific rewrite of a problem.
struct ContextVariant {
  std::string id;
  std::string problem_id;
  std::string interest_label;
  std::string text;
  VariantState state = VariantState::kGenerated;
  int attempt = 1;
  std::optional<ValidationReport> report;
  std::vector<EditRecord> edit_history;

  bool operator==(const ContextVariant&) const = default;
};

std::string to_string(Outcome o);
std::string to_string(CheckId id);
std::string to_string(VariantState s);
std::optional<Outcome> parse_outcome(std::string_view s);
std::optional<CheckId> parse_check_id(std::string_view s);
std::optional<VariantState> parse_state(std::string_view s);

}  // namespace ctxforge
