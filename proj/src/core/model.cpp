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

#include "ctxforge/model.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "ctxforge/errors.hpp"
#include "ctxforge/mathtext/parser.hpp"

namespace ctxforge {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::array<std::pair<E, std::string_view>, N>& table,
                        std::string_view s) {
  for (const auto& [value, name] : table) {
    if (name == s) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string name_of(const std::array<std::pair<E, std::string_view>, N>& table, E e) {
  for (const auto& [value, name] : table) {
    if (value == e) return std::string(name);
  }
  return "unknown";
}

constexpr std::array<std::pair<Outcome, std::string_view>, 4> kOutcomes = {{
    {Outcome::kPass, "pass"},
    {Outcome::kFail, "fail"},
    {Outcome::kWarn, "warn"},
    {Outcome::kSkipped, "skipped"},
}};

constexpr std::array<std::pair<CheckId, std::string_view>, 5> kCheckIds = {{
    {CheckId::kValuePreservation, "value_preservation"},
    {CheckId::kExpressionPreservation, "expression_preservation"},
    {CheckId::kStructurePreservation, "structure_preservation"},
    {CheckId::kInterestPresence, "interest_presence"},
    {CheckId::kNontrivialRewrite, "nontrivial_rewrite"},
}};

constexpr std::array<std::pair<VariantState, std::string_view>, 7> kStates = {{
    {VariantState::kGenerated, "generated"},
    {VariantState::kValidated, "validated"},
    {VariantState::kNeedsReview, "needs_review"},
    {VariantState::kEdited, "edited"},
    {VariantState::kAccepted, "accepted"},
    {VariantState::kRejected, "rejected"},
    {VariantState::kFailed, "failed"},
}};

}  // namespace

void check_problem(const ProblemTemplate& problem) {
  if (trim(problem.id).empty()) throw EmptyField("id");
  if (trim(problem.body).empty()) throw EmptyField("body");
  if (problem.formula) {
    try {
      mathtext::parse_formula(*problem.formula);
    } catch (const ParseError& e) {
      throw FormulaParseError(e.offset(), e.what());
    }
  }
}

ProblemTemplate new_problem(std::string id, std::string body, std::optional<std::string> formula,
                            std::vector<std::string> sub_questions,
                            std::optional<std::string> variable_note,
                            std::optional<std::string> title) {
  ProblemTemplate p{std::move(id),      std::move(title),         std::move(body),
                    std::move(formula), std::move(sub_questions), std::move(variable_note)};
  check_problem(p);
  return p;
}

std::string full_text(const ProblemTemplate& problem) {
  std::vector<std::string> blocks{problem.body};
  if (problem.variable_note) blocks.push_back(*problem.variable_note);
  if (problem.formula) blocks.push_back(*problem.formula);
  for (std::size_t i = 0; i < problem.sub_questions.size(); ++i) {
    blocks.push_back(std::to_string(i + 1) + ". " + problem.sub_questions[i]);
  }
  std::string out;
  for (const auto& b : blocks) {
    if (!out.empty()) out += "\n\n";
    out += b;
  }
  return out;
}

Interest make_interest(std::string_view label, std::vector<std::string> keywords) {
  const std::string_view trimmed = trim(label);
  if (trimmed.empty()) throw EmptyField("label");
  std::vector<std::string> kept;
  for (auto& k : keywords) {
    if (!trim(k).empty()) kept.emplace_back(trim(k));
  }
  return Interest{std::string(trimmed), std::move(kept)};
}

bool same_label(std::string_view a, std::string_view b) {
  a = trim(a);
  b = trim(b);
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

Severity severity_of(CheckId id) {
  switch (id) {
    case CheckId::kInterestPresence:
    case CheckId::kNontrivialRewrite:
      return Severity::kWarning;
    default:
      return Severity::kError;
  }
}

const CheckResult& ValidationReport::check(CheckId id) const {
  for (const auto& c : checks) {
    if (c.check_id == id) return c;
  }
  throw NotFound("report has no check " + to_string(id));
}

std::string to_string(Outcome o) { return name_of(kOutcomes, o); }
std::string to_string(CheckId id) { return name_of(kCheckIds, id); }
std::string to_string(VariantState s) { return name_of(kStates, s); }
std::optional<Outcome> parse_outcome(std::string_view s) { return lookup(kOutcomes, s); }
std::optional<CheckId> parse_check_id(std::string_view s) { return lookup(kCheckIds, s); }
std::optional<VariantState> parse_state(std::string_view s) { return lookup(kStates, s); }

}  // namespace ctxforge
