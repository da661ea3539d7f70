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

#include <iosfwd>

namespace ctxforge::cli {

/// Exit statuses besides the report codes 0/1/2.
inline constexpr int kExitUsage = 64;    // bad flags or configuration
inline constexpr int kExitData = 65;     // input parsed but invalid
inline constexpr int kExitNoInput = 66;  // unreadable input file
inline constexpr int kExitSoftware = 70;

/// Entry point shared by main() and the tests. Machine output goes to `out`,
/// diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace ctxforge::cli
