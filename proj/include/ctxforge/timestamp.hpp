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

namespace ctxforge {

/// Wall-clock instant at millisecond resolution, rendered as UTC ISO-8601
/// ("2026-10-16T02:19:00.123Z"). Millisecond truncation keeps values equal
/// across a save/load cycle.
struct Timestamp {
  std::int64_t unix_ms = 0;

  static Timestamp now();
  static std::optional<Timestamp> parse(std::string_view iso);
  std::string to_iso8601() const;

  friend auto operator<=>(const Timestamp&, const Timestamp&) = default;
};

}  // namespace ctxforge
