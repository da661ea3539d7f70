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

#include <string>
#include <string_view>
#include <vector>

#include "ctxforge/model.hpp"

namespace ctxforge::validation {

/// Default minimum token-level rewrite ratio for nontrivial_rewrite.
inline constexpr double kDefaultRewriteThreshold = 0.30;

struct Options {
  double rewrite_threshold = kDefaultRewriteThreshold;
};

/// Distinct numeric values of the original's full text must equal those of
/// the variant. Evidence lists missing and extraneous values.
CheckResult check_values(const ProblemTemplate& original, std::string_view variant_text);

/// Some formula found in the variant (an expression, or either side of an
/// equation) must be alpha-equivalent to the original formula. Skipped when
/// the original has no formula, or when the variant states no formula but
/// asks the student to write one.
CheckResult check_expression(const ProblemTemplate& original, std::string_view variant_text);

/// Enumerated items must match, and so must questions + directive tasks.
/// A bare-equation original (nothing to count) only requires the variant to
/// pose at least one task.
CheckResult check_structure(const ProblemTemplate& original, std::string_view variant_text);

/// Warning level: label or a keyword appears as a whole word, any case.
CheckResult check_interest_presence(std::string_view variant_text, const Interest& interest);

/// Warning level: 1 - LCS(tokens) / max(len) must reach `threshold`.
CheckResult check_nontrivial_rewrite(const ProblemTemplate& original,
                                     std::string_view variant_text,
                                     double threshold = kDefaultRewriteThreshold);

/// Lowercased alphanumeric word tokens.
std::vector<std::string> tokenize(std::string_view text);

/// 1 - |LCS(a, b)| / max(|a|, |b|) over tokenize(); 0 for two empty texts.
double rewrite_ratio(std::string_view a, std::string_view b);

/// fail if any error-severity check failed, else warn if any check warned,
/// else pass.
Outcome aggregate(const std::vector<CheckResult>& checks);

/// All five checks in fixed order, aggregated. Pure.
ValidationReport validate(const ProblemTemplate& original, std::string_view variant_text,
                          const Interest& interest, const Options& options = {});

/// Process exit status for a report: 0 pass, 1 warn, 2 fail.
int exit_code(const ValidationReport& report);

}  // namespace ctxforge::validation
