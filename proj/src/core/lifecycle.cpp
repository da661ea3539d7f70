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

#include "ctxforge/lifecycle.hpp"

#include <array>

#include "ctxforge/errors.hpp"

namespace ctxforge {
namespace {

constexpr std::array<std::pair<LifecycleEvent, std::string_view>, 6> kEvents = {{
    {LifecycleEvent::kValidationPassed, "validation_passed"},
    {LifecycleEvent::kValidationWarned, "validation_warned"},
    {LifecycleEvent::kValidationFailed, "validation_failed"},
    {LifecycleEvent::kEdit, "edit"},
    {LifecycleEvent::kAccept, "accept"},
    {LifecycleEvent::kReject, "reject"},
}};

constexpr std::array<LifecycleEvent, 6> kAllEvents = {
    LifecycleEvent::kValidationPassed, LifecycleEvent::kValidationWarned,
    LifecycleEvent::kValidationFailed, LifecycleEvent::kEdit,
    LifecycleEvent::kAccept,           LifecycleEvent::kReject,
};

}  // namespace

std::string to_string(LifecycleEvent e) {
  for (const auto& [value, name] : kEvents) {
    if (value == e) return std::string(name);
  }
  return "unknown";
}

std::optional<LifecycleEvent> parse_event(std::string_view s) {
  for (const auto& [value, name] : kEvents) {
    if (name == s) return value;
  }
  return std::nullopt;
}

std::optional<VariantState> next_state(VariantState from, LifecycleEvent event) {
  using S = VariantState;
  using E = LifecycleEvent;
  switch (from) {
    case S::kGenerated:
      switch (event) {
        case E::kValidationPassed: return S::kValidated;
        case E::kValidationWarned: return S::kNeedsReview;
        case E::kValidationFailed: return S::kFailed;
        default: return std::nullopt;
      }
    case S::kValidated:
    case S::kNeedsReview:
      switch (event) {
        case E::kAccept: return S::kAccepted;
        case E::kEdit: return S::kEdited;
        case E::kReject: return S::kRejected;
        default: return std::nullopt;
      }
    case S::kEdited:
      switch (event) {
        case E::kValidationPassed: return S::kValidated;
        case E::kValidationWarned:
        case E::kValidationFailed: return S::kNeedsReview;
        default: return std::nullopt;
      }
    case S::kAccepted:
    case S::kRejected:
    case S::kFailed:
      return std::nullopt;
  }
  return std::nullopt;
}

ContextVariant transition(const ContextVariant& variant, LifecycleEvent event) {
  const auto target = next_state(variant.state, event);
  if (!target) throw IllegalTransition(to_string(variant.state), to_string(event));
  if (*target == VariantState::kAccepted &&
      (!variant.report || variant.report->overall == Outcome::kFail)) {
    throw IllegalTransition(to_string(variant.state) + " without a passing report",
                            to_string(event));
  }
  ContextVariant next = variant;
  next.state = *target;
  return next;
}

ContextVariant apply_edit(const ContextVariant& variant, std::string new_text, Timestamp at) {
  ContextVariant next = variant.state == VariantState::kEdited
                            ? variant
                            : transition(variant, LifecycleEvent::kEdit);
  next.edit_history.push_back({at, std::move(next.text)});
  next.text = std::move(new_text);
  return next;
}

ContextVariant apply_report(const ContextVariant& variant, ValidationReport report) {
  LifecycleEvent event = LifecycleEvent::kValidationPassed;
  if (report.overall == Outcome::kWarn) event = LifecycleEvent::kValidationWarned;
  if (report.overall == Outcome::kFail) event = LifecycleEvent::kValidationFailed;
  ContextVariant next = transition(variant, event);
  next.report = std::move(report);
  return next;
}

std::vector<LifecycleEvent> allowed_events(const ContextVariant& variant) {
  std::vector<LifecycleEvent> out;
  for (LifecycleEvent e : kAllEvents) {
    if (!next_state(variant.state, e)) continue;
    if (e == LifecycleEvent::kAccept &&
        (!variant.report || variant.report->overall == Outcome::kFail)) {
      continue;
    }
    out.push_back(e);
  }
  if (variant.state == VariantState::kEdited) out.push_back(LifecycleEvent::kEdit);
  return out;
}

}  // namespace ctxforge
