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

#include "ctxforge/api.hpp"

#include <httplib.h>

#include <atomic>
#include <condition_variable>
#include <map>
#include <mutex>
#include <random>
#include <thread>

#include "ctxforge/json_io.hpp"
#include "ctxforge/lifecycle.hpp"
#include "ctxforge/validation.hpp"

namespace ctxforge::api {

namespace {

class Conflict : public Error {
 public:
  using Error::Error;
};

class BadRequest : public Error {
 public:
  using Error::Error;
};

struct Job {
  std::string id;
  JobPhase phase = JobPhase::kQueued;
  int total = 0;
  int done = 0;
  std::optional<massprod::BatchResult> result;
  std::optional<std::string> error;
};

void send_json(httplib::Response& res, int status, const Json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& code,
                const std::string& message) {
  send_json(res, status, Json{{"error_code", code}, {"message", message}});
}

Json body_of(const httplib::Request& req) {
  auto j = parse_json(req.body);
  if (!j.is_object()) throw BadRequest("request body must be a JSON object");
  return j;
}

Json row_to_json(const massprod::TableRow& r) {
  return Json{{"problem_id", r.problem_id},
              {"interest", r.interest},
              {"variant_id", r.variant_id},
              {"state", to_string(r.state)},
              {"attempt", r.attempt},
              {"overall", r.overall ? Json(to_string(*r.overall)) : Json(nullptr)},
              {"reason", r.reason}};
}

Json variant_summary(const ContextVariant& v) {
  return Json{{"id", v.id},
              {"problem_id", v.problem_id},
              {"interest", v.interest_label},
              {"state", to_string(v.state)},
              {"overall", v.report ? Json(to_string(v.report->overall)) : Json(nullptr)},
              {"attempt", v.attempt},
              {"text", v.text}};
}

massprod::BatchPolicy policy_from(const Json& j, massprod::BatchPolicy policy) {
  if (j.is_null()) return policy;
  if (!j.is_object()) throw BadRequest("policy must be an object");
  try {
    if (j.contains("max_attempts")) policy.max_attempts = j["max_attempts"].get<int>();
    if (j.contains("parallelism")) policy.parallelism = j["parallelism"].get<int>();
    if (j.contains("accept_on")) {
      auto a = massprod::parse_accept_on(j["accept_on"].get<std::string>());
      if (!a) throw BadRequest("accept_on must be pass_only or pass_or_warn");
      policy.accept_on = *a;
    }
  } catch (const Json::exception& e) {
    throw BadRequest(std::string("bad policy: ") + e.what());
  }
  massprod::check_policy(policy);
  return policy;
}

std::vector<std::string> string_list(const Json& body, const char* key) {
  if (!body.contains(key) || !body[key].is_array()) {
    throw BadRequest(std::string("'") + key + "' must be an array of strings");
  }
  std::vector<std::string> out;
  for (const auto& x : body[key]) {
    if (!x.is_string()) throw BadRequest(std::string("'") + key + "' must contain strings");
    out.push_back(x.get<std::string>());
  }
  if (out.empty()) throw BadRequest(std::string("'") + key + "' must not be empty");
  return out;
}

}  // namespace

std::string to_string(JobPhase p) {
  switch (p) {
    case JobPhase::kQueued: return "queued";
    case JobPhase::kRunning: return "running";
    case JobPhase::kDone: return "done";
    case JobPhase::kAborted: return "aborted";
  }
  return "unknown";
}

struct Service::Impl {
  store::Workspace& ws;
  std::shared_ptr<generation::Backend> backend;
  ServiceOptions options;
  httplib::Server server;
  std::thread server_thread;

  std::mutex writer;  // one mutating request or batch commit at a time

  std::mutex jobs_mutex;
  std::condition_variable jobs_cv;
  std::map<std::string, Job> jobs;
  std::vector<std::thread> job_threads;
  bool job_active = false;
  std::atomic<std::uint64_t> job_counter{0};
  std::uint64_t job_salt = std::random_device{}();

  Impl(store::Workspace& w, std::shared_ptr<generation::Backend> b, ServiceOptions o)
      : ws(w), backend(std::move(b)), options(std::move(o)) {
    routes();
  }

  ~Impl() {
    server.stop();
    if (server_thread.joinable()) server_thread.join();
    for (auto& t : job_threads) t.join();
  }

  using Handler = std::function<void(const httplib::Request&, httplib::Response&)>;

  Handler guarded(Handler h) {
    return [h = std::move(h)](const httplib::Request& req, httplib::Response& res) {
      try {
        h(req, res);
      } catch (const NotFound& e) {
        send_error(res, 404, "not_found", e.what());
      } catch (const UnresolvedVariant& e) {
        send_error(res, 404, "not_found", e.what());
      } catch (const Conflict& e) {
        send_error(res, 409, "conflict", e.what());
      } catch (const IllegalTransition& e) {
        send_error(res, 409, "conflict", e.what());
      } catch (const BadRequest& e) {
        send_error(res, 400, "bad_request", e.what());
      } catch (const SchemaError& e) {
        send_error(res, 400, "bad_request", e.what());
      } catch (const FormulaParseError& e) {
        send_error(res, 400, "bad_request", e.what());
      } catch (const EmptyField& e) {
        send_error(res, 400, "bad_request", e.what());
      } catch (const PreconditionError& e) {
        send_error(res, 400, "bad_request", e.what());
      } catch (const std::exception& e) {
        send_error(res, 500, "internal", e.what());
      }
    };
  }

  void routes() {
    server.new_task_queue = [] { return new httplib::ThreadPool(16); };
    server.Get("/api/problems", guarded([this](const auto&, auto& res) {
                 Json out = Json::array();
                 for (const auto& p : ws.problems()) out.push_back(p);
                 send_json(res, 200, out);
               }));
    server.Post("/api/problems", guarded([this](const auto& req, auto& res) {
                  const auto p = body_of(req).template get<ProblemTemplate>();
                  std::lock_guard lock(writer);
                  if (ws.problem(p.id)) throw Conflict("problem '" + p.id + "' already exists");
                  send_json(res, 201, Json{{"id", ws.put_problem(p, "api")}});
                }));
    server.Get("/api/interests", guarded([this](const auto&, auto& res) {
                 Json out = Json::array();
                 for (const auto& i : ws.interests()) out.push_back(i);
                 send_json(res, 200, out);
               }));
    server.Post("/api/interests", guarded([this](const auto& req, auto& res) {
                  const auto i = body_of(req).template get<Interest>();
                  std::lock_guard lock(writer);
                  if (ws.interest(i.label)) {
                    throw Conflict("interest '" + i.label + "' already exists");
                  }
                  send_json(res, 201, Json{{"label", ws.put_interest(i, "api")}});
                }));
    server.Post("/api/contextualize", guarded([this](const auto& req, auto& res) {
                  contextualize(body_of(req), res);
                }));
    server.Get(R"(/api/jobs/([^/]+))", guarded([this](const auto& req, auto& res) {
                 send_json(res, 200, job_json(req.matches[1]));
               }));
    server.Get("/api/variants", guarded([this](const auto& req, auto& res) {
                 Json out = Json::array();
                 for (const auto& v : ws.variants()) {
                   if (req.has_param("problem_id") &&
                       req.get_param_value("problem_id") != v.problem_id) {
                     continue;
                   }
                   if (req.has_param("interest") &&
                       !same_label(req.get_param_value("interest"), v.interest_label)) {
                     continue;
                   }
                   if (req.has_param("state") &&
                       req.get_param_value("state") != to_string(v.state)) {
                     continue;
                   }
                   out.push_back(variant_summary(v));
                 }
                 send_json(res, 200, out);
               }));
    server.Patch(R"(/api/variants/([^/]+))", guarded([this](const auto& req, auto& res) {
                   const auto body = body_of(req);
                   if (!body.contains("text") || !body["text"].is_string()) {
                     throw BadRequest("'text' must be a string");
                   }
                   edit(req.matches[1], body["text"].template get<std::string>(), res);
                 }));
    server.Post(R"(/api/variants/([^/]+)/decision)", guarded([this](const auto& req, auto& res) {
                  const auto j = parse_json(req.body);
                  std::string word;
                  if (j.is_string()) word = j.template get<std::string>();
                  if (j.is_object() && j.contains("decision") && j["decision"].is_string()) {
                    word = j["decision"].template get<std::string>();
                  }
                  const auto d = store::parse_decision(word);
                  if (!d) throw BadRequest("decision must be \"accept\" or \"reject\"");
                  std::lock_guard lock(writer);
                  send_json(res, 200, Json(ws.record_decision(req.matches[1], *d, "api")));
                }));
    server.Get("/api/export", guarded([this](const auto& req, auto& res) {
                 const auto name =
                     req.has_param("format") ? req.get_param_value("format") : std::string("csv");
                 const auto format = massprod::parse_export_format(name);
                 if (!format) throw BadRequest("format must be csv or json");
                 massprod::MassProductionTable table;
                 table.created_at = Timestamp::now();
                 for (const auto& v : ws.variants()) {
                   table.rows.push_back({v.problem_id, v.interest_label, v.id, v.state, v.attempt,
                                         v.report ? std::optional(v.report->overall)
                                                  : std::nullopt,
                                         ""});
                 }
                 const auto body = massprod::render_table(
                     table, [this](const std::string& id) { return ws.variant(id); }, *format);
                 res.status = 200;
                 res.set_content(body, *format == massprod::ExportFormat::kCsv
                                           ? "text/csv; charset=utf-8"
                                           : "application/json");
               }));
    server.set_error_handler([](const httplib::Request& req, httplib::Response& res) {
      if (!res.body.empty()) return;
      send_error(res, res.status, res.status == 404 ? "not_found" : "bad_request",
                 "no route for " + req.method + " " + req.path);
    });
    if (options.ui_dir) server.set_mount_point("/ui", options.ui_dir->string());
  }

  void contextualize(const Json& body, httplib::Response& res) {
    const auto ids = string_list(body, "problem_ids");
    const auto labels = string_list(body, "interests");
    const auto policy =
        policy_from(body.contains("policy") ? body["policy"] : Json(), options.default_policy);

    std::vector<ProblemTemplate> problems;
    std::vector<Interest> interests;
    {
      std::lock_guard lock(writer);
      for (const auto& id : ids) {
        auto p = ws.problem(id);
        if (!p) throw NotFound("problem '" + id + "'");
        problems.push_back(std::move(*p));
      }
      for (const auto& label : labels) {
        auto i = ws.interest(label);
        if (!i) {
          ws.put_interest(make_interest(label), "api");
          i = ws.interest(label);
        }
        interests.push_back(std::move(*i));
      }
    }

    std::string job_id;
    {
      std::lock_guard lock(jobs_mutex);
      if (job_active) throw Conflict("a contextualization job is already running");
      job_active = true;
      char salt[17];
      std::snprintf(salt, sizeof salt, "%016llx",
                    static_cast<unsigned long long>(job_salt));
      job_id = "job-" + std::to_string(++job_counter) + "-" + std::string(salt, 8);
      jobs[job_id] = Job{job_id, JobPhase::kQueued,
                         static_cast<int>(problems.size() * interests.size()), 0, {}, {}};
      job_threads.emplace_back(
          [this, job_id, problems = std::move(problems), interests = std::move(interests),
           policy] { run_job(job_id, problems, interests, policy); });
    }
    send_json(res, 202, Json{{"job_id", job_id}});
  }

  void run_job(const std::string& job_id, const std::vector<ProblemTemplate>& problems,
               const std::vector<Interest>& interests, const massprod::BatchPolicy& policy) {
    {
      std::lock_guard lock(jobs_mutex);
      jobs[job_id].phase = JobPhase::kRunning;
    }
    auto batch = options.batch;
    batch.on_cell_done = [this, &job_id](const massprod::TableRow&) {
      std::lock_guard lock(jobs_mutex);
      ++jobs[job_id].done;
    };
    std::optional<massprod::BatchResult> result;
    std::optional<std::string> error;
    try {
      result = massprod::run_batch(problems, interests, policy, *backend, batch);
      std::lock_guard lock(writer);
      for (const auto& v : result->variants) ws.put_variant(v, "batch");
      if (result->backend_unavailable) error = *result->backend_unavailable;
    } catch (const std::exception& e) {
      error = e.what();
    }
    std::lock_guard lock(jobs_mutex);
    auto& job = jobs[job_id];
    job.phase = error ? JobPhase::kAborted : JobPhase::kDone;
    job.result = std::move(result);
    job.error = std::move(error);
    job_active = false;
    jobs_cv.notify_all();
  }

  Json job_json(const std::string& id) {
    std::lock_guard lock(jobs_mutex);
    auto it = jobs.find(id);
    if (it == jobs.end()) throw NotFound("job '" + id + "'");
    const auto& job = it->second;
    Json out{{"job_id", job.id},
             {"phase", to_string(job.phase)},
             {"progress", {{"done", job.done}, {"total", job.total}}},
             {"table", nullptr},
             {"error", nullptr}};
    if (job.phase == JobPhase::kDone && job.result) {
      Json rows = Json::array();
      for (const auto& r : job.result->table.rows) rows.push_back(row_to_json(r));
      const auto& pol = job.result->table.policy;
      out["table"] = Json{{"created_at", job.result->table.created_at.to_iso8601()},
                          {"policy",
                           {{"max_attempts", pol.max_attempts},
                            {"parallelism", pol.parallelism},
                            {"accept_on", massprod::to_string(pol.accept_on)}}},
                          {"rows", rows},
                          {"summary", massprod::summary_to_json(job.result->summary)}};
    }
    if (job.error) {
      out["error"] = Json{{"error_code", "backend_unavailable"}, {"message", *job.error}};
    }
    return out;
  }

  void edit(const std::string& id, const std::string& text, httplib::Response& res) {
    std::lock_guard lock(writer);
    const auto current = ws.variant(id);
    if (!current) throw NotFound("variant '" + id + "'");
    const auto problem = ws.problem(current->problem_id);
    if (!problem) throw NotFound("problem '" + current->problem_id + "'");
    const auto interest =
        ws.interest(current->interest_label).value_or(make_interest(current->interest_label));
    ws.record_edit(id, text, "api");
    const auto report = validation::validate(*problem, text, interest, options.batch.validation);
    const auto updated = ws.record_revalidation(id, report, "api");
    send_json(res, 200, Json{{"variant", updated}, {"report", report}});
  }
};

Service::Service(store::Workspace& workspace, std::shared_ptr<generation::Backend> backend,
                 ServiceOptions options)
    : impl_(std::make_unique<Impl>(workspace, std::move(backend), std::move(options))) {}

Service::~Service() = default;

int Service::start(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host)
                              : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  impl_->server_thread = std::thread([this] { impl_->server.listen_after_bind(); });
  impl_->server.wait_until_ready();
  return bound;
}

void Service::run(const std::string& host, int port) {
  if (!impl_->server.listen(host, port)) {
    throw IoError("cannot listen on " + host + ":" + std::to_string(port));
  }
}

void Service::stop() { impl_->server.stop(); }

void Service::wait_for_jobs() {
  std::unique_lock lock(impl_->jobs_mutex);
  impl_->jobs_cv.wait(lock, [this] { return !impl_->job_active; });
}

}  // namespace ctxforge::api
