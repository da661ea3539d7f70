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

#include "ctxforge/timestamp.hpp"

#include <chrono>
#include <cstdio>

namespace ctxforge {
namespace {

// Howard Hinnant's days_from_civil / civil_from_days.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const auto yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const auto doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  return a / b - ((a % b != 0) && ((a < 0) != (b < 0)));
}

}  // namespace

Timestamp Timestamp::now() {
  using namespace std::chrono;
  return {duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count()};
}

std::string Timestamp::to_iso8601() const {
  const std::int64_t days = floor_div(unix_ms, 86'400'000);
  std::int64_t rem = unix_ms - days * 86'400'000;
  std::int64_t y = 0;
  unsigned m = 0, d = 0;
  civil_from_days(days, y, m, d);
  const auto hh = static_cast<int>(rem / 3'600'000);
  rem %= 3'600'000;
  const auto mm = static_cast<int>(rem / 60'000);
  rem %= 60'000;
  const auto ss = static_cast<int>(rem / 1000);
  const auto ms = static_cast<int>(rem % 1000);
  char buf[40];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02d:%02d:%02d.%03dZ",
                static_cast<long long>(y), m, d, hh, mm, ss, ms);
  return buf;
}

std::optional<Timestamp> Timestamp::parse(std::string_view iso) {
  long long y = 0;
  unsigned mo = 0, d = 0, hh = 0, mi = 0, ss = 0, ms = 0;
  int consumed = 0;
  const std::string s(iso);
  if (std::sscanf(s.c_str(), "%lld-%u-%uT%u:%u:%u.%3uZ%n", &y, &mo, &d, &hh, &mi, &ss,
                  &ms, &consumed) != 7 ||
      static_cast<std::size_t>(consumed) != s.size()) {
    return std::nullopt;
  }
  if (mo < 1 || mo > 12 || d < 1 || d > 31 || hh > 23 || mi > 59 || ss > 60) {
    return std::nullopt;
  }
  const std::int64_t days = days_from_civil(y, mo, d);
  return Timestamp{days * 86'400'000 + hh * 3'600'000LL + mi * 60'000LL + ss * 1000LL + ms};
}

}  // namespace ctxforge
