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

#include "ctxforge/generation/http_backend.hpp"

#include <httplib.h>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <regex>
#include <thread>

#include "ctxforge/json_io.hpp"

namespace ctxforge::generation {

namespace {

using Clock = std::chrono::steady_clock;

struct Attempt {
  enum class Verdict { kOk, kRetry, kFatal } verdict;
  ErrorKind kind = ErrorKind::kMalformedResponse;
  std::string message;
  GenerationResult result;
};

Attempt parse_reply(const std::string& body) {
  Json j;
  try {
    j = Json::parse(body);
  } catch (const Json::parse_error& e) {
    return {Attempt::Verdict::kFatal, ErrorKind::kMalformedResponse,
            std::string("body is not JSON: ") + e.what(), {}};
  }
  const Json* content = nullptr;
  if (j.is_object() && j.contains("choices") && j["choices"].is_array() &&
      !j["choices"].empty()) {
    const auto& first = j["choices"][0];
    if (first.is_object() && first.contains("message") && first["message"].is_object() &&
        first["message"].contains("content")) {
      content = &first["message"]["content"];
    }
  }
  if (content == nullptr || !content->is_string()) {
    return {Attempt::Verdict::kFatal, ErrorKind::kMalformedResponse,
            "missing choices[0].message.content", {}};
  }
  if (content->get_ref<const std::string&>().empty()) {
    return {Attempt::Verdict::kFatal, ErrorKind::kMalformedResponse, "empty content", {}};
  }
  Attempt ok{Attempt::Verdict::kOk, {}, {}, {}};
  ok.result.text = content->get<std::string>();
  if (j.contains("usage") && j["usage"].is_object()) {
    const auto& u = j["usage"];
    if (u.contains("prompt_tokens") && u["prompt_tokens"].is_number_integer() &&
        u.contains("completion_tokens") && u["completion_tokens"].is_number_integer()) {
      ok.result.token_usage =
          TokenUsage{u["prompt_tokens"].get<int>(), u["completion_tokens"].get<int>()};
    }
  }
  return ok;
}

}  // namespace

std::chrono::milliseconds backoff_delay(const RetryPolicy& policy, int retry, double unit) {
  const double nominal = static_cast<double>(policy.base.count()) * std::pow(policy.factor, retry);
  const double scaled = nominal * (1.0 + policy.jitter * std::clamp(unit, -1.0, 1.0));
  return std::chrono::milliseconds(static_cast<long long>(std::llround(std::max(0.0, scaled))));
}

HttpBackendConfig config_from_env() {
  HttpBackendConfig config;
  if (const char* base = std::getenv("CTXFORGE_BASE_URL"); base != nullptr && *base != '\0') {
    config.base_url = base;
  }
  if (const char* key = std::getenv("CTXFORGE_API_KEY"); key != nullptr) config.api_key = key;
  return config;
}

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)), rng_(config_.jitter_seed) {
  static const std::regex url(R"(^(https?://[^/]+)(/.*)?$)");
  std::smatch m;
  if (!std::regex_match(config_.base_url, m, url)) {
    throw PreconditionError("base URL must look like http(s)://host[:port][/path]: " +
                            config_.base_url);
  }
  scheme_host_port_ = m[1];
  path_ = m[2].matched ? m[2].str() : "";
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
  path_ += "/chat/completions";
  if (config_.retry.max_attempts < 1) throw PreconditionError("max_attempts must be >= 1");
  if (!config_.sleep) {
    config_.sleep = [](std::chrono::milliseconds d) { std::this_thread::sleep_for(d); };
  }
}

std::string HttpBackend::request_body(const GenerationRequest& request) {
  Json body = {{"model", request.model_name},
               {"messages", Json::array({{{"role", "user"}, {"content", request.prompt}}})},
               {"temperature", request.temperature},
               {"max_tokens", request.max_output_tokens}};
  return body.dump();
}

double HttpBackend::next_jitter_unit() {
  std::lock_guard lock(rng_mutex_);
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng_);
}

GenerationResult HttpBackend::generate(const GenerationRequest& request) {
  check_request(request);
  const auto body = request_body(request);
  httplib::Headers headers;
  if (!config_.api_key.empty()) headers.emplace("Authorization", "Bearer " + config_.api_key);

  const auto start = Clock::now();
  const auto secs = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
  const auto usecs = std::chrono::duration_cast<std::chrono::microseconds>(request.timeout - secs);
  Attempt last{Attempt::Verdict::kRetry, ErrorKind::kTimeout, "no attempt made", {}};
  for (int attempt = 1; attempt <= config_.retry.max_attempts; ++attempt) {
    // A client per call: httplib clients are not meant to be shared across threads.
    httplib::Client client(scheme_host_port_);
    client.set_connection_timeout(secs.count(), usecs.count());
    client.set_read_timeout(secs.count(), usecs.count());
    client.set_write_timeout(secs.count(), usecs.count());
    auto res = client.Post(path_, headers, body, "application/json");
    if (!res) {
      last = {Attempt::Verdict::kRetry, ErrorKind::kTimeout,
              "transport error: " + httplib::to_string(res.error()), {}};
    } else if (res->status == 401 || res->status == 403) {
      throw GenerationError(ErrorKind::kAuth, "HTTP " + std::to_string(res->status), attempt);
    } else if (res->status == 429 || res->status >= 500) {
      last = {Attempt::Verdict::kRetry, ErrorKind::kRateLimited,
              "HTTP " + std::to_string(res->status), {}};
    } else if (res->status < 200 || res->status >= 300) {
      throw GenerationError(ErrorKind::kMalformedResponse,
                            "unexpected HTTP " + std::to_string(res->status), attempt);
    } else {
      last = parse_reply(res->body);
      if (last.verdict == Attempt::Verdict::kFatal) {
        throw GenerationError(last.kind, last.message, attempt);
      }
      last.result.backend_id = id();
      last.result.latency =
          std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() - start);
      return last.result;
    }
    if (attempt < config_.retry.max_attempts) {
      config_.sleep(backoff_delay(config_.retry, attempt - 1, next_jitter_unit()));
    }
  }
  throw GenerationError(last.kind, last.message + " after retries",
                        config_.retry.max_attempts);
}

}  // namespace ctxforge::generation
