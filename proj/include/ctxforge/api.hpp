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

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "ctxforge/generation/backend.hpp"
#include "ctxforge/massprod.hpp"
#include "ctxforge/store.hpp"

namespace ctxforge::api {

enum class JobPhase { kQueued, kRunning, kDone, kAborted };

std::string to_string(JobPhase p);

struct ServiceOptions {
  massprod::BatchPolicy default_policy;
  massprod::BatchOptions batch;
  /// Static files served under /ui when set.
  std::optional<std::filesystem::path> ui_dir;
};

/// HTTP front end over one workspace:
///
///   GET  /api/problems             POST /api/problems
///   GET  /api/interests            POST /api/interests
///   POST /api/contextualize        GET  /api/jobs/{id}
///   GET  /api/variants             PATCH /api/variants/{id}
///   POST /api/variants/{id}/decision
///   GET  /api/export?format=csv|json
///
/// Errors are {"error_code", "message"} with codes bad_request, not_found,
/// conflict, backend_unavailable, internal. One batch job runs at a time.
class Service {
 public:
  Service(store::Workspace& workspace, std::shared_ptr<generation::Backend> backend,
          ServiceOptions options = {});
  ~Service();
  Service(const Service&) = delete;
  Service& operator=(const Service&) = delete;

  /// Binds and serves on a background thread; port 0 picks a free port.
  /// Returns the bound port. Throws IoError when binding fails.
  int start(const std::string& host, int port);
  /// Serves on the calling thread until stop().
  void run(const std::string& host, int port);
  void stop();
  /// Blocks until no batch job is queued or running.
  void wait_for_jobs();

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace ctxforge::api
