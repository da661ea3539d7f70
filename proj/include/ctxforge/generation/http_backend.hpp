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
#include <cstdint>
#include <functional>
#include <mutex>
#include <random>
#include <string>

#include "ctxforge/generation/backend.hpp"

namespace ctxforge::generation {

struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds base{1000};
  double factor = 2.0;
  double jitter = 0.2;  // +/- fraction of the nominal delay
};

/// Delay before retry number `retry` (0 = wait after the first attempt):
/// base * factor^retry * (1 + jitter * unit), unit in [-1, 1].
std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int retry, double unit);

struct HttpBackendConfig {
  /// e.g. "https://api.openai.com/v1"; requests go to <base>/chat/completions.
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key;
  RetryPolicy retry;
  /// Replaceable for tests; defaults to std::this_thread::sleep_for.
  std::function<void(std::chrono::milliseconds)> sleep;
  std::uint64_t jitter_seed = std::random_device{}();
};

/// Reads CTXFORGE_BASE_URL and CTXFORGE_API_KEY (base URL has a default).
HttpBackendConfig config_from_env();

/// Chat-completions client. The prompt goes out as a single user message and
/// the first choice's content comes back.
///
/// Transport errors, timeouts, 429 and 5xx are retried with exponential
/// backoff up to RetryPolicy::max_attempts. 401/403 fail at once (kAuth).
/// Exhausted retries report kRateLimited for HTTP statuses and kTimeout for
/// transport failures. Other statuses and unparseable bodies are
/// kMalformedResponse.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);

  GenerationResult generate(const GenerationRequest& request) override;
  std::string id() const override { return "http"; }

  /// Wire body for a request (exposed for contract tests).
  static std::string request_body(const GenerationRequest& request);

 private:
  double next_jitter_unit();

  HttpBackendConfig config_;
  std::string scheme_host_port_;
  std::string path_;
  std::mutex rng_mutex_;
  std::mt19937_64 rng_;
};

}  // namespace ctxforge::generation
