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

#include <random>
#include <string>
#include <vector>

#include "ctxforge/mathtext/expression.hpp"

namespace ctxforge::testing {

// Random trees of depth <= max_depth over at most `var_count` variables
// drawn from `names`. Numbers are non-negative with 0-2 fractional digits.
class RandomAst {
 public:
  explicit RandomAst(std::uint64_t seed, std::vector<std::string> names = {"x", "y", "z"})
      : rng_(seed), names_(std::move(names)) {}

  mathtext::Expression tree(int max_depth) {
    using mathtext::Expression;
    if (max_depth <= 1 || pick(0, 3) == 0) return leaf();
    switch (pick(0, 4)) {
      case 0:
        return Expression::negate(tree(max_depth - 1));
      default: {
        static constexpr mathtext::BinaryOp kOps[] = {
            mathtext::BinaryOp::kAdd, mathtext::BinaryOp::kSub, mathtext::BinaryOp::kMul,
            mathtext::BinaryOp::kDiv};
        const auto op = kOps[pick(0, 3)];
        auto l = tree(max_depth - 1);
        auto r = tree(max_depth - 1);
        return Expression::binary(op, std::move(l), std::move(r));
      }
    }
  }

  mathtext::Expression leaf() {
    using mathtext::Expression;
    if (pick(0, 1) == 0) return Expression::variable(names_[pick(0, names_.size() - 1)]);
    const int scale = pick(0, 2);
    return Expression::number(Decimal(Decimal::BigInt(pick(0, 999)), scale));
  }

  int pick(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  int pick(int lo, std::size_t hi) { return pick(lo, static_cast<int>(hi)); }
  std::mt19937_64& rng() { return rng_; }

 private:
  std::mt19937_64 rng_;
  std::vector<std::string> names_;
};

}  // namespace ctxforge::testing
