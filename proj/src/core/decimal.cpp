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

#include "ctxforge/decimal.hpp"

#include <algorithm>
#include <cctype>

#include "ctxforge/errors.hpp"

namespace ctxforge {
namespace {

using BigInt = Decimal::BigInt;

BigInt pow10(int n) {
  BigInt r = 1;
  for (int i = 0; i < n; ++i) r *= 10;
  return r;
}

// Both operands brought to the larger scale.
std::pair<BigInt, BigInt> aligned(const Decimal& a, const Decimal& b, int& scale) {
  scale = std::max(a.scale(), b.scale());
  return {a.unscaled() * pow10(scale - a.scale()), b.unscaled() * pow10(scale - b.scale())};
}

}  // namespace

Decimal::Decimal(BigInt unscaled, int scale) : unscaled_(std::move(unscaled)), scale_(scale) {
  if (scale_ < 0) {
    unscaled_ *= pow10(-scale_);
    scale_ = 0;
  }
}

Decimal Decimal::from_int(std::int64_t v) { return Decimal(BigInt(v), 0); }

std::optional<Decimal> Decimal::parse(std::string_view text) {
  bool negative = false;
  if (!text.empty() && text.front() == '-') {
    negative = true;
    text.remove_prefix(1);
  }
  if (text.empty()) return std::nullopt;
  BigInt value = 0;
  int scale = 0;
  bool seen_point = false;
  bool seen_digit = false;
  for (char c : text) {
    if (c == '.') {
      if (seen_point || !seen_digit) return std::nullopt;
      seen_point = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(c))) return std::nullopt;
    value = value * 10 + (c - '0');
    seen_digit = true;
    if (seen_point) ++scale;
  }
  if (!seen_digit || (seen_point && scale == 0)) return std::nullopt;
  return Decimal(negative ? BigInt(-value) : value, scale);
}

bool Decimal::is_integer() const { return normalized().scale_ == 0; }

Decimal Decimal::normalized() const {
  BigInt u = unscaled_;
  int s = scale_;
  while (s > 0 && u % 10 == 0) {
    u /= 10;
    --s;
  }
  return Decimal(std::move(u), s);
}

Decimal Decimal::rescaled(int scale) const {
  if (scale <= scale_) return *this;
  return Decimal(unscaled_ * pow10(scale - scale_), scale);
}

std::string Decimal::to_string() const {
  std::string digits = (unscaled_ < 0 ? BigInt(-unscaled_) : unscaled_).str();
  if (scale_ > 0) {
    if (static_cast<int>(digits.size()) <= scale_) {
      digits.insert(0, static_cast<std::size_t>(scale_ + 1) - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(scale_), 1, '.');
  }
  if (unscaled_ < 0) digits.insert(0, 1, '-');
  return digits;
}

Decimal operator+(const Decimal& a, const Decimal& b) {
  int scale = 0;
  auto [x, y] = aligned(a, b, scale);
  return Decimal(x + y, scale);
}

Decimal operator-(const Decimal& a, const Decimal& b) {
  int scale = 0;
  auto [x, y] = aligned(a, b, scale);
  return Decimal(x - y, scale);
}

Decimal operator*(const Decimal& a, const Decimal& b) {
  return Decimal(a.unscaled_ * b.unscaled_, a.scale_ + b.scale_);
}

Decimal Decimal::divide(const Decimal& num, const Decimal& den, int max_scale) {
  if (den.is_zero()) throw DivisionByZero();
  // num/den = (un / 10^sn) / (ud / 10^sd) = un * 10^sd / (ud * 10^sn)
  BigInt n = num.unscaled_ * pow10(den.scale_ + max_scale);
  BigInt d = den.unscaled_ * pow10(num.scale_);
  const bool negative = (n < 0) != (d < 0);
  if (n < 0) n = -n;
  if (d < 0) d = -d;
  BigInt q = n / d;
  const BigInt r = n % d;
  const BigInt twice = r * 2;
  if (twice > d || (twice == d && q % 2 == 1)) q += 1;
  return Decimal(negative ? BigInt(-q) : q, max_scale).normalized();
}

bool operator==(const Decimal& a, const Decimal& b) {
  int scale = 0;
  auto [x, y] = aligned(a, b, scale);
  return x == y;
}

std::strong_ordering operator<=>(const Decimal& a, const Decimal& b) {
  int scale = 0;
  auto [x, y] = aligned(a, b, scale);
  if (x < y) return std::strong_ordering::less;
  if (x > y) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

}  // namespace ctxforge
