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

#include <string_view>

#include "ctxforge/mathtext/expression.hpp"

namespace ctxforge::mathtext {

/// Parses arithmetic with the usual precedence (unary minus, then * / and
/// implicit products, then + -), all binary operators left-associative.
///
/// Implicit multiplication is recognized for a number followed by '(' or a
/// variable ("2.50(C+15)", "6x") and for ")(". It has the same precedence as
/// an explicit '*'. Whitespace and '$' are ignored; the Unicode operators
/// − × ÷ · are accepted. Throws ParseError (byte offset into `src`).
Expression parse_expression(std::string_view src);

/// Exactly one '='; chained equalities are rejected.
Equation parse_equation(std::string_view src);

/// An equation when `src` contains '=', otherwise an expression.
Formula parse_formula(std::string_view src);

}  // namespace ctxforge::mathtext
