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

#include "ctxforge/mathtext/parser.hpp"

#include <gtest/gtest.h>

#include "ctxforge/errors.hpp"

namespace ctxforge::mathtext {
namespace {

Expression N(const char* s) { return Expression::number(*Decimal::parse(s)); }
Expression V(const char* s) { return Expression::variable(s); }
Expression Add(Expression a, Expression b) { return Expression::binary(BinaryOp::kAdd, a, b); }
Expression Sub(Expression a, Expression b) { return Expression::binary(BinaryOp::kSub, a, b); }
Expression Mul(Expression a, Expression b) { return Expression::binary(BinaryOp::kMul, a, b); }
Expression Div(Expression a, Expression b) { return Expression::binary(BinaryOp::kDiv, a, b); }

std::size_t error_offset(std::string_view src) {
  try {
    parse_expression(src);
  } catch (const ParseError& e) {
    return e.offset();
  }
  ADD_FAILURE() << "no ParseError for '" << src << "'";
  return 0;
}

TEST(ParserTest, CdAlbumFormula) {
  EXPECT_EQ(parse_expression("1000 - 2.50(C+15)"),
            Sub(N("1000"), Mul(N("2.50"), Add(V("C"), N("15")))));
}

TEST(ParserTest, CoefficientTimesVariable) {
  EXPECT_EQ(parse_expression("80 - 6x"), Sub(N("80"), Mul(N("6"), V("x"))));
}

TEST(ParserTest, SingleVariable) { EXPECT_EQ(parse_expression("x"), V("x")); }

TEST(ParserTest, DanglingOperatorReportsEndOffset) {
  EXPECT_EQ(error_offset("2+"), 2u);
  EXPECT_EQ(error_offset("(1+2"), 4u);
  EXPECT_EQ(error_offset("1 + * 2"), 4u);
  EXPECT_EQ(error_offset("3 # 4"), 2u);
}

TEST(ParserTest, PrecedenceAndAssociativity) {
  EXPECT_EQ(parse_expression("1 - 2 - 3"), Sub(Sub(N("1"), N("2")), N("3")));
  EXPECT_EQ(parse_expression("8 / 4 / 2"), Div(Div(N("8"), N("4")), N("2")));
  EXPECT_EQ(parse_expression("1 + 2 * 3"), Add(N("1"), Mul(N("2"), N("3"))));
  EXPECT_EQ(parse_expression("-x * y"), Mul(Expression::negate(V("x")), V("y")));
  EXPECT_EQ(parse_expression("2 * -3"), Mul(N("2"), Expression::negate(N("3"))));
}

TEST(ParserTest, ImplicitProductHasOrdinaryPrecedence) {
  // 1/2x reads as (1/2)*x.
  EXPECT_EQ(parse_expression("1/2x"), Mul(Div(N("1"), N("2")), V("x")));
  EXPECT_EQ(parse_expression("(a+1)(b-1)"), Mul(Add(V("a"), N("1")), Sub(V("b"), N("1"))));
  EXPECT_EQ(parse_expression("-6x"), Mul(Expression::negate(N("6")), V("x")));
}

TEST(ParserTest, OnlyListedImplicitProducts) {
  EXPECT_THROW(parse_expression("x y"), ParseError);
  EXPECT_THROW(parse_expression("(x)2"), ParseError);
  EXPECT_THROW(parse_expression("2 3"), ParseError);
}

TEST(ParserTest, DollarDelimitersAndUnicodeOperators) {
  EXPECT_EQ(parse_expression("1000-2.50$(I+15)$"), parse_expression("1000 - 2.50(I+15)"));
  EXPECT_EQ(parse_expression("6 \xC3\x97 x \xE2\x88\x92 1"), Sub(Mul(N("6"), V("x")), N("1")));
  EXPECT_EQ(parse_expression("6 \xC3\xB7 2"), Div(N("6"), N("2")));
}

TEST(ParserTest, Equations) {
  const Equation eq = parse_equation("2x + 3 = 15");
  EXPECT_EQ(eq.lhs, Add(Mul(N("2"), V("x")), N("3")));
  EXPECT_EQ(eq.rhs, N("15"));
  EXPECT_THROW(parse_equation("a = b = c"), ParseError);
  EXPECT_THROW(parse_equation("a + b"), ParseError);
  EXPECT_THROW(parse_expression("a = b"), ParseError);
  EXPECT_TRUE(std::holds_alternative<Equation>(parse_formula("y = 80 - 6x")));
  EXPECT_TRUE(std::holds_alternative<Expression>(parse_formula("80 - 6x")));
}

TEST(ParserTest, PathologicalNestingIsAnErrorNotACrash) {
  EXPECT_THROW(parse_expression(std::string(10000, '(') + "1"), ParseError);
  EXPECT_THROW(parse_expression(std::string(10000, '-') + "1"), ParseError);
}

TEST(PrinterTest, RendersMinimalParentheses) {
  EXPECT_EQ(to_string(parse_expression("1000 - 2.50(C+15)")), "1000 - 2.50 * (C + 15)");
  EXPECT_EQ(to_string(parse_expression("1 - (2 - 3)")), "1 - (2 - 3)");
  EXPECT_EQ(to_string(parse_expression("(1 - 2) - 3")), "1 - 2 - 3");
  EXPECT_EQ(to_string(parse_expression("-(x + 1)")), "-(x + 1)");
  EXPECT_EQ(to_string(parse_equation("y = 80 - 6x")), "y = 80 - 6 * x");
}

TEST(EvaluateTest, CdAlbumAnswers) {
  const Expression f = parse_expression("1000 - 2.50(C+15)");
  // 1000 - 2.5 * (85 + 15) = 750; 1000 - 2.5 * (385 + 15) = 0.
  EXPECT_EQ(evaluate(f, {{"C", *Decimal::parse("85")}}).to_string(), "750.00");
  EXPECT_EQ(evaluate(f, {{"C", *Decimal::parse("385")}}).to_string(), "0.00");
}

TEST(EvaluateTest, IdentityAndErrors) {
  EXPECT_EQ(evaluate(V("x"), {{"x", Decimal::from_int(0)}}), Decimal::from_int(0));
  EXPECT_THROW(evaluate(V("x"), {}), UnboundVariable);
  EXPECT_THROW(evaluate(parse_expression("1/(x-x)"), {{"x", Decimal::from_int(3)}}),
               DivisionByZero);
  EXPECT_EQ(evaluate(parse_expression("1/3"), {}).to_string(), "0.333333333333");
}

TEST(AlphaTest, ReferenceRenamings) {
  const auto original = parse_expression("1000 - 2.50(C+15)");
  EXPECT_TRUE(alpha_equivalent(original, parse_expression("1000-2.50(B+15)")));
  EXPECT_TRUE(alpha_equivalent(original, parse_expression("1000-2.50(I+15)")));
  EXPECT_EQ(alpha_mapping(original, parse_expression("1000-2.50(I+15)")),
            (Renaming{{"C", "I"}}));
  EXPECT_TRUE(alpha_equivalent(original, original));
}

TEST(AlphaTest, ChangedConstantIsNotEquivalent) {
  const auto a = parse_expression("1000 - 2.50(C+15)");
  const auto b = parse_expression("1000 - 3.00(C+15)");
  EXPECT_FALSE(alpha_equivalent(a, b));
  // Evaluation oracle: at C = 85 the two differ (750 vs 700).
  const Bindings at85{{"C", Decimal::from_int(85)}};
  EXPECT_EQ(evaluate(a, at85), Decimal::from_int(750));
  EXPECT_EQ(evaluate(b, at85), Decimal::from_int(700));
}

TEST(AlphaTest, NumbersCompareByValue) {
  EXPECT_TRUE(alpha_equivalent(parse_expression("2.5x"), parse_expression("2.50y")));
}

TEST(AlphaTest, NoAlgebraicNormalization) {
  EXPECT_FALSE(alpha_equivalent(parse_expression("x + 1"), parse_expression("1 + x")));
  EXPECT_FALSE(alpha_equivalent(parse_expression("2(x+1)"), parse_expression("2x + 2")));
  // Consistency matters: x - y maps to a - b but not to a - a.
  EXPECT_TRUE(alpha_equivalent(parse_expression("x - y"), parse_expression("a - b")));
  EXPECT_FALSE(alpha_equivalent(parse_expression("x - y"), parse_expression("a - a")));
}

TEST(CanonicalizeTest, FirstOccurrenceNumbering) {
  const auto c = canonicalize(parse_expression("1000 - 2.50(I+15)"));
  EXPECT_EQ(c, parse_expression("1000 - 2.50(v0+15)"));
  EXPECT_EQ(canonicalize(parse_expression("x + y")), canonicalize(parse_expression("a + b")));
  EXPECT_EQ(canonicalize(parse_expression("y * x + x")), parse_expression("v0 * v1 + v1"));
}

TEST(CanonicalizeTest, EquationsShareNumbering) {
  EXPECT_TRUE(alpha_equivalent(parse_equation("y = 80 - 6x"), parse_equation("e = 80 - 6m")));
  EXPECT_FALSE(alpha_equivalent(parse_equation("y = 80 - 6x"), parse_equation("y = 80 - 6y")));
}

}  // namespace
}  // namespace ctxforge::mathtext
