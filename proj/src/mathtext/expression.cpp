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

#include "ctxforge/mathtext/expression.hpp"

#include <algorithm>
#include <set>

#include "ctxforge/errors.hpp"

namespace ctxforge::mathtext {

struct Expression::Node {
  Kind kind;
  Decimal value;
  std::string name;
  BinaryOp op = BinaryOp::kAdd;
  std::vector<Expression> children;
};

Expression Expression::number(Decimal value) {
  return Expression(std::make_shared<const Node>(Node{Kind::kNumber, std::move(value), {}, {}, {}}));
}

Expression Expression::variable(std::string name) {
  return Expression(std::make_shared<const Node>(Node{Kind::kVariable, {}, std::move(name), {}, {}}));
}

Expression Expression::negate(Expression child) {
  return Expression(
      std::make_shared<const Node>(Node{Kind::kNegate, {}, {}, {}, {std::move(child)}}));
}

Expression Expression::binary(BinaryOp op, Expression left, Expression right) {
  return Expression(std::make_shared<const Node>(
      Node{Kind::kBinary, {}, {}, op, {std::move(left), std::move(right)}}));
}

Expression::Kind Expression::kind() const { return node_->kind; }
const Decimal& Expression::value() const { return node_->value; }
const std::string& Expression::name() const { return node_->name; }
BinaryOp Expression::op() const { return node_->op; }
const Expression& Expression::child() const { return node_->children.at(0); }
const Expression& Expression::left() const { return node_->children.at(0); }
const Expression& Expression::right() const { return node_->children.at(1); }

bool operator==(const Expression& a, const Expression& b) {
  if (a.node_ == b.node_) return true;
  if (a.kind() != b.kind()) return false;
  switch (a.kind()) {
    case Expression::Kind::kNumber:
      return a.value() == b.value();
    case Expression::Kind::kVariable:
      return a.name() == b.name();
    case Expression::Kind::kNegate:
      return a.child() == b.child();
    case Expression::Kind::kBinary:
      return a.op() == b.op() && a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

namespace {

int precedence(const Expression& e) {
  switch (e.kind()) {
    case Expression::Kind::kBinary:
      return (e.op() == BinaryOp::kAdd || e.op() == BinaryOp::kSub) ? 1 : 2;
    case Expression::Kind::kNegate:
      return 3;
    default:
      return 4;
  }
}

char symbol(BinaryOp op) {
  switch (op) {
    case BinaryOp::kAdd: return '+';
    case BinaryOp::kSub: return '-';
    case BinaryOp::kMul: return '*';
    case BinaryOp::kDiv: return '/';
  }
  return '?';
}

void render(const Expression& e, std::string& out) {
  auto wrapped = [&out](const Expression& sub, bool parens) {
    if (parens) out += '(';
    render(sub, out);
    if (parens) out += ')';
  };
  switch (e.kind()) {
    case Expression::Kind::kNumber:
      out += e.value().to_string();
      break;
    case Expression::Kind::kVariable:
      out += e.name();
      break;
    case Expression::Kind::kNegate:
      out += '-';
      wrapped(e.child(), precedence(e.child()) < 3);
      break;
    case Expression::Kind::kBinary: {
      const int p = precedence(e);
      wrapped(e.left(), precedence(e.left()) < p);
      out += ' ';
      out += symbol(e.op());
      out += ' ';
      wrapped(e.right(), precedence(e.right()) <= p);
      break;
    }
  }
}

void collect_variables(const Expression& e, std::vector<std::string>& out,
                       std::set<std::string>& seen) {
  switch (e.kind()) {
    case Expression::Kind::kNumber:
      return;
    case Expression::Kind::kVariable:
      if (seen.insert(e.name()).second) out.push_back(e.name());
      return;
    case Expression::Kind::kNegate:
      collect_variables(e.child(), out, seen);
      return;
    case Expression::Kind::kBinary:
      collect_variables(e.left(), out, seen);
      collect_variables(e.right(), out, seen);
      return;
  }
}

Renaming canonical_renaming(const std::vector<std::string>& names) {
  Renaming r;
  for (std::size_t i = 0; i < names.size(); ++i) r[names[i]] = "v" + std::to_string(i);
  return r;
}

}  // namespace

std::string to_string(const Expression& e) {
  std::string out;
  render(e, out);
  return out;
}

std::string to_string(const Equation& eq) { return to_string(eq.lhs) + " = " + to_string(eq.rhs); }

std::string to_string(const Formula& f) {
  return std::visit([](const auto& v) { return to_string(v); }, f);
}

std::vector<std::string> variables(const Expression& e) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_variables(e, out, seen);
  return out;
}

std::vector<std::string> variables(const Equation& eq) {
  std::vector<std::string> out;
  std::set<std::string> seen;
  collect_variables(eq.lhs, out, seen);
  collect_variables(eq.rhs, out, seen);
  return out;
}

Expression rename(const Expression& e, const Renaming& renaming) {
  switch (e.kind()) {
    case Expression::Kind::kNumber:
      return e;
    case Expression::Kind::kVariable: {
      auto it = renaming.find(e.name());
      return it == renaming.end() ? e : Expression::variable(it->second);
    }
    case Expression::Kind::kNegate:
      return Expression::negate(rename(e.child(), renaming));
    case Expression::Kind::kBinary:
      return Expression::binary(e.op(), rename(e.left(), renaming), rename(e.right(), renaming));
  }
  return e;
}

Expression canonicalize(const Expression& e) { return rename(e, canonical_renaming(variables(e))); }

Equation canonicalize(const Equation& eq) {
  const Renaming r = canonical_renaming(variables(eq));
  return Equation{rename(eq.lhs, r), rename(eq.rhs, r)};
}

bool alpha_equivalent(const Expression& a, const Expression& b) {
  return canonicalize(a) == canonicalize(b);
}

bool alpha_equivalent(const Equation& a, const Equation& b) {
  return canonicalize(a) == canonicalize(b);
}

std::optional<Renaming> alpha_mapping(const Expression& a, const Expression& b) {
  if (!alpha_equivalent(a, b)) return std::nullopt;
  const auto va = variables(a);
  const auto vb = variables(b);
  Renaming r;
  for (std::size_t i = 0; i < va.size(); ++i) r[va[i]] = vb[i];
  return r;
}

Decimal evaluate(const Expression& e, const Bindings& bindings) {
  switch (e.kind()) {
    case Expression::Kind::kNumber:
      return e.value();
    case Expression::Kind::kVariable: {
      auto it = bindings.find(e.name());
      if (it == bindings.end()) throw UnboundVariable(e.name());
      return it->second;
    }
    case Expression::Kind::kNegate:
      return -evaluate(e.child(), bindings);
    case Expression::Kind::kBinary: {
      const Decimal l = evaluate(e.left(), bindings);
      const Decimal r = evaluate(e.right(), bindings);
      switch (e.op()) {
        case BinaryOp::kAdd: return l + r;
        case BinaryOp::kSub: return l - r;
        case BinaryOp::kMul: return l * r;
        case BinaryOp::kDiv: return Decimal::divide(l, r);
      }
    }
  }
  return {};
}

int depth(const Expression& e) {
  switch (e.kind()) {
    case Expression::Kind::kNegate:
      return 1 + depth(e.child());
    case Expression::Kind::kBinary:
      return 1 + std::max(depth(e.left()), depth(e.right()));
    default:
      return 1;
  }
}

}  // namespace ctxforge::mathtext
