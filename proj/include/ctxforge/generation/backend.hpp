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

#include <chrono>
#include <optional>
#include <string>

#include "ctxforge/errors.hpp"

namespace ctxforge::generation {

enum class ErrorKind {
  kAuth,               // 401/403, never retried
  kRateLimited,        // retryable status (429, 5xx) still failing after the last attempt
  kTimeout,            // transport failure or timeout on the last attempt
  kMalformedResponse,  // reply does not match the wire schema
  kStubMiss,           // stub has no fixture and no fallback
};

std::string to_string(ErrorKind kind);

class GenerationError : public Error {
 public:
  GenerationError(ErrorKind kind, const std::string& message, int attempts = 1)
      : Error(to_string(kind) + ": " + message), kind_(kind), attempts_(attempts) {}
  ErrorKind kind() const { return kind_; }
  int attempts() const { return attempts_; }
  /// True for failures that say the backend as a whole is unusable.
  bool backend_unavailable() const {
    return kind_ == ErrorKind::kAuth || kind_ == ErrorKind::kRateLimited ||
           kind_ == ErrorKind::kTimeout;
  }

 private:
  ErrorKind kind_;
  int attempts_;
};

/// Routing data for backends that answer by key rather than by prompt.
struct RequestContext {
  std::string problem_id;
  std::string interest;
  std::string original_text;
};

struct GenerationRequest {
  std::string prompt;
  std::string model_name = "gpt-4";
  double temperature = 0.7;
  int max_output_tokens = 1024;
  std::chrono::milliseconds timeout{60'000};
  std::optional<RequestContext> context;
};

/// Throws PreconditionError unless the prompt is non-empty, temperature is in
/// [0, 2], max_output_tokens > 0 and timeout > 0.
void check_request(const GenerationRequest& request);

struct TokenUsage {
  int prompt_tokens = 0;
  int output_tokens = 0;
};

struct GenerationResult {
  std::string text;  // non-empty on success
  std::chrono::milliseconds latency{0};
  std::optional<TokenUsage> token_usage;
  std::string backend_id;
  bool fallback = false;  // synthesized, not real generated text
};

/// Text in, text out. Implementations must tolerate concurrent calls.
class Backend {
 public:
  virtual ~Backend() = default;
  virtual GenerationResult generate(const GenerationRequest& request) = 0;
  virtual std::string id() const = 0;
};

}  // namespace ctxforge::generation
