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

#include "ctxforge/generation/backend.hpp"

namespace ctxforge::generation {

std::string to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kAuth: return "auth_error";
    case ErrorKind::kRateLimited: return "rate_limited";
    case ErrorKind::kTimeout: return "timeout";
    case ErrorKind::kMalformedResponse: return "malformed_response";
    case ErrorKind::kStubMiss: return "stub_miss";
  }
  return "unknown";
}

void check_request(const GenerationRequest& request) {
  if (request.prompt.empty()) throw PreconditionError("prompt must not be empty");
  if (!(request.temperature >= 0.0 && request.temperature <= 2.0)) {
    throw PreconditionError("temperature must be in [0, 2]");
  }
  if (request.max_output_tokens <= 0) throw PreconditionError("max_output_tokens must be positive");
  if (request.timeout.count() <= 0) throw PreconditionError("timeout must be positive");
}

}  // namespace ctxforge::generation
