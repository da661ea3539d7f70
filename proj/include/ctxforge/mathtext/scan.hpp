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
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "ctxforge/mathtext/expression.hpp"
#include "ctxforge/model.hpp"

namespace ctxforge::mathtext {

/// Every digit-form numeral in source order. A '$' prefix and thousands
/// separators are kept in `raw` and stripped from `value`. Numerals glued to
/// letters ("2x", "2-point") count; word numbers do not. List markers at the
/// start of a line ("1.", "2)") are layout, not values, and are skipped.
std::vector<NumericLiteral> extract_numeric_literals(std::string_view text);

/// Distinct values of extract_numeric_literals (2.5 and 2.50 collapse).
std::set<Decimal> distinct_values(std::string_view text);

struct FoundExpression {
  std::size_t offset = 0;
  std::size_t length = 0;
  Formula formula;
};

/// Locates formulas inside prose, line by line.
///
/// Each line is cut into runs of math tokens (numbers, single-letter
/// variables, operators, parentheses, '='). Runs holding an operator or '='
/// are parsed; failures are dropped. A run that starts with '=' after prose
/// ("The amount of money they will have left = 1000-2.50(I+15)") becomes an
/// equation whose left side is a variable named after that prose phrase.
std::vector<FoundExpression> find_expressions(std::string_view text);

/// Sentences split on '.', '?', '!' (and line ends), with list markers
/// removed and the abbreviations Mr. Ms. Dr. e.g. i.e. kept intact.
std::vector<std::string> split_sentences(std::string_view text);

/// Counts enumerated items, sentence-ending '?', and sentences opening with
/// one of: Write, Create, Define, Use, Find, Calculate, Determine, Explain,
/// Solve (case-insensitive).
QuestionStructure count_questions(std::string_view text);

}  // namespace ctxforge::mathtext
