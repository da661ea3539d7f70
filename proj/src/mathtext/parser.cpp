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

#include <cctype>
#include <vector>

#include "ctxforge/errors.hpp"

namespace ctxforge::mathtext {
namespace {

enum class Tok { kNumber, kIdent, kPlus, kMinus, kStar, kSlash, kLParen, kRParen, kEquals, kEnd };

struct Token {
  Tok kind;
  std::size_t offset;
  std::string_view text;
};

bool starts_with(std::string_view s, std::size_t i, std::string_view prefix) {
  return s.substr(i, prefix.size()) == prefix;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < src.size()) {
    const auto c = static_cast<unsigned char>(src[i]);
    if (std::isspace(c) || c == '$') {
      ++i;
      continue;
    }
    if (std::isdigit(c)) {
      std::size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j + 1 < src.size() && src[j] == '.' &&
          std::isdigit(static_cast<unsigned char>(src[j + 1]))) {
        ++j;
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      out.push_back({Tok::kNumber, i, src.substr(i, j - i)});
      i = j;
      continue;
    }
    if (std::isalpha(c)) {
      std::size_t j = i + 1;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) {
        ++j;
      }
      out.push_back({Tok::kIdent, i, src.substr(i, j - i)});
      i = j;
      continue;
    }
    Tok kind = Tok::kEnd;
    std::size_t width = 1;
    switch (c) {
      case '+': kind = Tok::kPlus; break;
      case '-': kind = Tok::kMinus; break;
      case '*': kind = Tok::kStar; break;
      case '/': kind = Tok::kSlash; break;
      case '(': kind = Tok::kLParen; break;
      case ')': kind = Tok::kRParen; break;
      case '=': kind = Tok::kEquals; break;
      default:
        if (starts_with(src, i, "\xE2\x88\x92")) {  // U+2212 minus
          kind = Tok::kMinus;
          width = 3;
        } else if (starts_with(src, i, "\xC3\x97") || starts_with(src, i, "\xC2\xB7")) {
          kind = Tok::kStar;  // U+00D7, U+00B7
          width = 2;
        } else if (starts_with(src, i, "\xC3\xB7")) {  // U+00F7
          kind = Tok::kSlash;
          width = 2;
        } else {
          throw ParseError(i, "number, variable, operator or parenthesis");
        }
    }
    out.push_back({kind, i, src.substr(i, width)});
    i += width;
  }
  out.push_back({Tok::kEnd, src.size(), {}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : tokens_(lex(src)) {}

  Expression expression() {
    Expression e = sum();
    expect_end();
    return e;
  }

  Equation equation() {
    Expression lhs = sum();
    if (peek().kind != Tok::kEquals) throw ParseError(peek().offset, "'='");
    ++pos_;
    Expression rhs = sum();
    if (peek().kind == Tok::kEquals) {
      throw ParseError(peek().offset, "end of input (chained equalities are not supported)");
    }
    expect_end();
    return {std::move(lhs), std::move(rhs)};
  }

 private:
  enum class Atom { kNumber, kVariable, kParen };
  static constexpr int kMaxNesting = 256;

  const Token& peek() const { return tokens_[pos_]; }

  void expect_end() const {
    if (peek().kind != Tok::kEnd) throw ParseError(peek().offset, "operator or end of input");
  }

  Expression sum() {
    Expression lhs = product();
    while (peek().kind == Tok::kPlus || peek().kind == Tok::kMinus) {
      const BinaryOp op = peek().kind == Tok::kPlus ? BinaryOp::kAdd : BinaryOp::kSub;
      ++pos_;
      lhs = Expression::binary(op, std::move(lhs), product());
    }
    return lhs;
  }

  bool implicit_product_follows() const {
    const Tok next = peek().kind;
    if (last_atom_ == Atom::kNumber) return next == Tok::kLParen || next == Tok::kIdent;
    if (last_atom_ == Atom::kParen) return next == Tok::kLParen;
    return false;
  }

  Expression product() {
    Expression lhs = unary();
    for (;;) {
      if (peek().kind == Tok::kStar || peek().kind == Tok::kSlash) {
        const BinaryOp op = peek().kind == Tok::kStar ? BinaryOp::kMul : BinaryOp::kDiv;
        ++pos_;
        lhs = Expression::binary(op, std::move(lhs), unary());
      } else if (implicit_product_follows()) {
        lhs = Expression::binary(BinaryOp::kMul, std::move(lhs), unary());
      } else {
        return lhs;
      }
    }
  }

  Expression unary() {
    if (peek().kind == Tok::kMinus) {
      const Token& t = peek();
      ++pos_;
      if (++nesting_ > kMaxNesting) throw ParseError(t.offset, "shallower nesting");
      Expression child = unary();
      --nesting_;
      return Expression::negate(std::move(child));
    }
    return primary();
  }

  Expression primary() {
    const Token t = peek();
    switch (t.kind) {
      case Tok::kNumber:
        ++pos_;
        last_atom_ = Atom::kNumber;
        return Expression::number(*Decimal::parse(t.text));
      case Tok::kIdent:
        ++pos_;
        last_atom_ = Atom::kVariable;
        return Expression::variable(std::string(t.text));
      case Tok::kLParen: {
        ++pos_;
        if (++nesting_ > kMaxNesting) throw ParseError(t.offset, "shallower nesting");
        Expression inner = sum();
        --nesting_;
        if (peek().kind != Tok::kRParen) throw ParseError(peek().offset, "')'");
        ++pos_;
        last_atom_ = Atom::kParen;
        return inner;
      }
      default:
        throw ParseError(t.offset, "number, variable or '('");
    }
  }

  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  int nesting_ = 0;
  Atom last_atom_ = Atom::kNumber;
};

}  // namespace

Expression parse_expression(std::string_view src) { return Parser(src).expression(); }

Equation parse_equation(std::string_view src) { return Parser(src).equation(); }

Formula parse_formula(std::string_view src) {
  if (src.find('=') != std::string_view::npos) return parse_equation(src);
  return parse_expression(src);
}

}  // namespace ctxforge::mathtext
