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

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ctxforge/decimal.hpp"

namespace ctxforge::mathtext {

enum class BinaryOp { kAdd, kSub, kMul, kDiv };

/// Immutable arithmetic tree. Copies share structure.
///
/// Equality is structural, with numbers compared by decimal value.
class Expression {
 public:
  enum class Kind { kNumber, kVariable, kNegate, kBinary };

  static Expression number(Decimal value);
  static Expression variable(std::string name);
  static Expression negate(Expression child);
  static Expression binary(BinaryOp op, Expression left, Expression right);

  Kind kind() const;

  // Accessors are only meaningful for the matching kind.
  const Decimal& value() const;
  const std::string& name() const;
  BinaryOp op() const;
  const Expression& child() const;
  const Expression& left() const;
  const Expression& right() const;

  friend bool operator==(const Expression& a, const Expression& b);

 private:
  struct Node;
  explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

/// lhs = rhs, from a single '=' split.
struct Equation {
  Expression lhs;
  Expression rhs;

  friend bool operator==(const Equation&, const Equation&) = default;
};

using Formula = std::variant<Expression, Equation>;

/// Fully explicit rendering: '*' for every product, minimal parentheses.
/// parse_expression(to_string(e)) == e.
std::string to_string(const Expression& e);
std::string to_string(const Equation& eq);
std::string to_string(const Formula& f);

/// Variable names in order of first occurrence, depth-first left-to-right.
std::vector<std::string> variables(const Expression& e);
std::vector<std::string> variables(const Equation& eq);

using Renaming = std::map<std::string, std::string>;

/// Applies `renaming`; names not in the map are kept.
Expression rename(const Expression& e, const Renaming& renaming);

/// Variables renamed v0, v1, ... by first occurrence. Idempotent.
Expression canonicalize(const Expression& e);
/// Both sides renamed with one shared numbering (lhs first).
Equation canonicalize(const Equation& eq);

/// Equal up to a consistent renaming of variables; no algebraic
/// normalization of any kind.
bool alpha_equivalent(const Expression& a, const Expression& b);
bool alpha_equivalent(const Equation& a, const Equation& b);

/// The renaming taking a's variables to b's, when a and b are alpha-equivalent.
std::optional<Renaming> alpha_mapping(const Expression& a, const Expression& b);

using Bindings = std::map<std::string, Decimal>;

/// Exact for + - *; division keeps Decimal::kDivisionScale fractional digits
/// (half-even). Throws UnboundVariable, DivisionByZero.
Decimal evaluate(const Expression& e, const Bindings& bindings);

/// Number of nodes on the longest root-to-leaf path (a leaf has depth 1).
int depth(const Expression& e);

}  // namespace ctxforge::mathtext
