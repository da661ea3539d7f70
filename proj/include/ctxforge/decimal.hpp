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

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

namespace ctxforge {

/// Exact base-10 number: unscaled * 10^-scale.
///
/// Equality and ordering are by value, so 2.50 == 2.5, but the authored
/// scale is kept and to_string() reproduces it ("2.50").
class Decimal {
 public:
  using BigInt = boost::multiprecision::cpp_int;

  /// Fractional digits kept by divide() unless asked otherwise.
  static constexpr int kDivisionScale = 12;

  Decimal() = default;
  Decimal(BigInt unscaled, int scale);
  static Decimal from_int(std::int64_t v);

  /// Accepts an optional leading '-', digits, and an optional '.digits'.
  static std::optional<Decimal> parse(std::string_view text);

  const BigInt& unscaled() const { return unscaled_; }
  int scale() const { return scale_; }

  bool is_zero() const { return unscaled_ == 0; }
  bool is_negative() const { return unscaled_ < 0; }
  bool is_integer() const;

  /// Same value with trailing fractional zeros removed.
  Decimal normalized() const;
  /// Same value with at least `scale` fractional digits.
  Decimal rescaled(int scale) const;

  std::string to_string() const;

  Decimal operator-() const { return Decimal(-unscaled_, scale_); }
  friend Decimal operator+(const Decimal& a, const Decimal& b);
  friend Decimal operator-(const Decimal& a, const Decimal& b);
  friend Decimal operator*(const Decimal& a, const Decimal& b);

  /// Quotient rounded half-even to `max_scale` fractional digits, trailing
  /// zeros trimmed. Throws DivisionByZero.
  static Decimal divide(const Decimal& num, const Decimal& den,
                        int max_scale = kDivisionScale);

  friend bool operator==(const Decimal& a, const Decimal& b);
  friend std::strong_ordering operator<=>(const Decimal& a, const Decimal& b);

 private:
  BigInt unscaled_ = 0;
  int scale_ = 0;
};

}  // namespace ctxforge
