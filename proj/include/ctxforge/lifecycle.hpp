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

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ctxforge/model.hpp"

namespace ctxforge {

enum class LifecycleEvent {
  kValidationPassed,
  kValidationWarned,
  kValidationFailed,
  kEdit,
  kAccept,
  kReject,
};

std::string to_string(LifecycleEvent e);
std::optional<LifecycleEvent> parse_event(std::string_view s);

/// Target state for `event` from `from`, or nullopt when illegal.
///
///   generated    -> validated | needs_review | failed
///   validated    -> accepted | edited | rejected
///   needs_review -> edited | accepted | rejected
///   edited       -> validated | needs_review   (revalidation only)
///
/// A failed revalidation of an edited variant lands in needs_review.
std::optional<VariantState> next_state(VariantState from, LifecycleEvent event);

/// Returns `variant` moved by `event`. Accepting additionally requires a
/// report whose overall outcome is pass or warn. Throws IllegalTransition.
ContextVariant transition(const ContextVariant& variant, LifecycleEvent event);

/// Replaces the text, pushing the prior text onto edit_history, and moves
/// to edited. An already edited variant may be edited again.
ContextVariant apply_edit(const ContextVariant& variant, std::string new_text, Timestamp at);

/// Applies the revalidation event matching `report.overall` and stores it.
ContextVariant apply_report(const ContextVariant& variant, ValidationReport report);

/// Events accepted from the variant's current state.
std::vector<LifecycleEvent> allowed_events(const ContextVariant& variant);

}  // namespace ctxforge
