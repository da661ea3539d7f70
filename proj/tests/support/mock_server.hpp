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

#include <httplib.h>

#include <atomic>
#include <functional>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

namespace ctxforge::testing {

/// Chat-completions mock on 127.0.0.1 with a scripted list of (status, body)
/// replies. The last entry repeats once the script runs out.
class MockChatServer {
 public:
  struct Reply {
    int status;
    std::string body;
  };

  explicit MockChatServer(std::vector<Reply> script) : script_(std::move(script)) {
    server_.Post(R"(.*/chat/completions)", [this](const httplib::Request& req,
                                                   httplib::Response& res) {
      std::lock_guard lock(mutex_);
      bodies_.push_back(req.body);
      auth_ = req.get_header_value("Authorization");
      const auto& reply = script_[std::min(hits_, script_.size() - 1)];
      ++hits_;
      res.status = reply.status;
      res.set_content(reply.body, "application/json");
    });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  ~MockChatServer() {
    server_.stop();
    thread_.join();
  }

  std::string base_url() const { return "http://127.0.0.1:" + std::to_string(port_) + "/v1"; }
  std::size_t hits() const {
    std::lock_guard lock(mutex_);
    return hits_;
  }
  std::vector<std::string> bodies() const {
    std::lock_guard lock(mutex_);
    return bodies_;
  }
  std::string auth() const {
    std::lock_guard lock(mutex_);
    return auth_;
  }

  static std::string completion(const std::string& content) {
    return R"({"choices":[{"message":{"role":"assistant","content":")" + content +
           R"("}}],"usage":{"prompt_tokens":12,"completion_tokens":7}})";
  }

 private:
  httplib::Server server_;
  std::vector<Reply> script_;
  mutable std::mutex mutex_;
  std::size_t hits_ = 0;
  std::vector<std::string> bodies_;
  std::string auth_;
  int port_ = 0;
  std::thread thread_;
};

}  // namespace ctxforge::testing
