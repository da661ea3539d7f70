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

#include "ctxforge/massprod.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <map>
#include <mutex>
#include <thread>

#include "ctxforge/json_io.hpp"
#include "ctxforge/lifecycle.hpp"

namespace ctxforge::massprod {

namespace {

struct Cell {
  const ProblemTemplate* problem;
  const Interest* interest;
  std::string variant_id;
};

struct CellResult {
  TableRow row;
  ContextVariant variant;
};

class AbortFlag {
 public:
  bool set(const std::string& reason) {
    std::lock_guard lock(mutex_);
    if (reason_) return false;
    reason_ = reason;
    raised_.store(true);
    return true;
  }
  bool raised() const { return raised_.load(); }
  std::string reason() const {
    std::lock_guard lock(mutex_);
    return reason_.value_or("");
  }

 private:
  mutable std::mutex mutex_;
  std::optional<std::string> reason_;
  std::atomic<bool> raised_{false};
};

CellResult finish(const Cell& cell, ContextVariant v, std::string reason) {
  TableRow row{cell.problem->id, cell.interest->label, v.id, v.state, v.attempt,
               v.report ? std::optional<Outcome>(v.report->overall) : std::nullopt,
               std::move(reason)};
  return {std::move(row), std::move(v)};
}

CellResult abandoned(const Cell& cell, int attempt, const std::string& reason) {
  ContextVariant v{cell.variant_id, cell.problem->id, cell.interest->label, "",
                   VariantState::kGenerated, attempt, std::nullopt, {}};
  v = transition(v, LifecycleEvent::kValidationFailed);
  return finish(cell, std::move(v), reason);
}

CellResult run_cell(const Cell& cell, const BatchPolicy& policy, generation::Backend& backend,
                    const BatchOptions& options, AbortFlag& abort) {
  const auto& problem = *cell.problem;
  const auto& interest = *cell.interest;
  auto request = options.request_defaults;
  request.prompt = prompting::build_prompt(options.prompt_template, problem, interest);
  request.context = generation::RequestContext{problem.id, interest.label, full_text(problem)};

  std::optional<ContextVariant> last_candidate;
  std::string last_error;
  for (int attempt = 1; attempt <= policy.max_attempts; ++attempt) {
    if (abort.raised()) {
      return abandoned(cell, attempt - 1, "backend_unavailable: " + abort.reason());
    }
    generation::GenerationResult result;
    try {
      result = backend.generate(request);
    } catch (const generation::GenerationError& e) {
      if (e.backend_unavailable()) {
        abort.set(e.what());
        return abandoned(cell, attempt, std::string("backend_unavailable: ") + e.what());
      }
      last_error = e.what();
      continue;
    } catch (const std::exception& e) {
      last_error = e.what();
      continue;
    }
    auto report = validation::validate(problem, result.text, interest, options.validation);
    ContextVariant v{cell.variant_id, problem.id, interest.label, result.text,
                     VariantState::kGenerated, attempt, report, {}};
    const bool acceptable =
        report.overall == Outcome::kPass ||
        (report.overall == Outcome::kWarn && policy.accept_on == AcceptOn::kPassOrWarn);
    if (acceptable) {
      const auto event = report.overall == Outcome::kPass && !result.fallback
                             ? LifecycleEvent::kValidationPassed
                             : LifecycleEvent::kValidationWarned;
      return finish(cell, transition(v, event), "");
    }
    last_candidate = std::move(v);
  }
  if (!last_candidate) return abandoned(cell, policy.max_attempts, last_error);
  auto v = *last_candidate;
  if (v.report->overall == Outcome::kFail) {
    return finish(cell, transition(v, LifecycleEvent::kValidationFailed),
                  "validation failed on every attempt");
  }
  // pass_only with warnings on every attempt: a human decides.
  return finish(cell, transition(v, LifecycleEvent::kValidationWarned),
                "warnings on every attempt");
}

}  // namespace

std::string to_string(AcceptOn a) {
  return a == AcceptOn::kPassOnly ? "pass_only" : "pass_or_warn";
}

std::optional<AcceptOn> parse_accept_on(std::string_view s) {
  if (s == "pass_only") return AcceptOn::kPassOnly;
  if (s == "pass_or_warn") return AcceptOn::kPassOrWarn;
  return std::nullopt;
}

void check_policy(const BatchPolicy& policy) {
  if (policy.max_attempts < 1) throw PreconditionError("max_attempts must be >= 1");
  if (policy.parallelism < 1) throw PreconditionError("parallelism must be >= 1");
}

Json summary_to_json(const BatchSummary& s) {
  return Json{{"total", s.total},
              {"validated", s.validated},
              {"needs_review", s.needs_review},
              {"failed", s.failed},
              {"wall_time_seconds", s.wall_time_seconds}};
}

std::string variant_id_for(const std::string& problem_id, const std::string& interest_label) {
  std::string slug;
  for (unsigned char c : interest_label) {
    if (std::isalnum(c)) {
      slug += static_cast<char>(std::tolower(c));
    } else if (!slug.empty() && slug.back() != '-') {
      slug += '-';
    }
  }
  while (!slug.empty() && slug.back() == '-') slug.pop_back();
  if (slug.empty()) slug = "interest";
  return problem_id + "--" + slug;
}

BatchResult run_batch(const std::vector<ProblemTemplate>& problems,
                      const std::vector<Interest>& interests, const BatchPolicy& policy,
                      generation::Backend& backend, const BatchOptions& options) {
  if (problems.empty()) throw PreconditionError("no problems to contextualize");
  if (interests.empty()) throw PreconditionError("no interests to contextualize for");
  check_policy(policy);
  prompting::check_template(options.prompt_template);

  const auto started = std::chrono::steady_clock::now();
  BatchResult out;
  out.table.created_at = Timestamp::now();
  out.table.policy = policy;

  std::vector<Cell> cells;
  for (const auto& p : problems) {
    for (const auto& i : interests) cells.push_back({&p, &i, ""});
  }
  std::sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
    return std::tie(a.problem->id, a.interest->label) < std::tie(b.problem->id, b.interest->label);
  });
  std::map<std::string, int> taken;
  for (auto& c : cells) {
    const auto base = variant_id_for(c.problem->id, c.interest->label);
    const int n = ++taken[base];
    c.variant_id = n == 1 ? base : base + "-" + std::to_string(n);
  }

  std::vector<std::optional<CellResult>> slots(cells.size());
  std::atomic<std::size_t> next{0};
  std::mutex collector;
  AbortFlag abort;
  auto worker = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      auto result = run_cell(cells[i], policy, backend, options, abort);
      std::lock_guard lock(collector);
      if (options.on_cell_done) options.on_cell_done(result.row);
      slots[i] = std::move(result);
    }
  };
  const auto workers = std::min<std::size_t>(static_cast<std::size_t>(policy.parallelism),
                                             cells.size());
  std::vector<std::thread> pool;
  for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(worker);
  for (auto& t : pool) t.join();

  for (auto& slot : slots) {
    auto& r = *slot;
    switch (r.row.state) {
      case VariantState::kValidated: ++out.summary.validated; break;
      case VariantState::kNeedsReview: ++out.summary.needs_review; break;
      default: ++out.summary.failed; break;
    }
    out.table.rows.push_back(std::move(r.row));
    out.variants.push_back(std::move(r.variant));
  }
  out.summary.total = static_cast<int>(out.table.rows.size());
  out.summary.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  if (abort.raised()) out.backend_unavailable = abort.reason();
  return out;
}

std::optional<ExportFormat> parse_export_format(std::string_view s) {
  if (s == "csv") return ExportFormat::kCsv;
  if (s == "json") return ExportFormat::kJson;
  return std::nullopt;
}

std::string csv_field(std::string_view s) {
  if (s.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(s);
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::string render_table(const MassProductionTable& table, const VariantResolver& resolve,
                         ExportFormat format) {
  std::vector<const TableRow*> rows;
  for (const auto& r : table.rows) rows.push_back(&r);
  std::sort(rows.begin(), rows.end(), [](const TableRow* a, const TableRow* b) {
    return std::tie(a->problem_id, a->interest) < std::tie(b->problem_id, b->interest);
  });
  std::vector<std::string> texts;
  for (const auto* r : rows) {
    const auto v = resolve(r->variant_id);
    if (!v) throw UnresolvedVariant("variant '" + r->variant_id + "' is not in the store");
    texts.push_back(v->text);
  }
  if (format == ExportFormat::kCsv) {
    std::string out = "problem_id,interest,state,overall,attempt,variant_text\r\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = *rows[i];
      out += csv_field(r.problem_id) + ',' + csv_field(r.interest) + ',' + to_string(r.state) +
             ',' + (r.overall ? to_string(*r.overall) : "") + ',' + std::to_string(r.attempt) +
             ',' + csv_field(texts[i]) + "\r\n";
    }
    return out;
  }
  Json arr = Json::array();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = *rows[i];
    arr.push_back({{"problem_id", r.problem_id},
                   {"interest", r.interest},
                   {"state", to_string(r.state)},
                   {"overall", r.overall ? Json(to_string(*r.overall)) : Json(nullptr)},
                   {"attempt", r.attempt},
                   {"variant_text", texts[i]}});
  }
  return arr.dump(2) + "\n";
}

void export_table(const MassProductionTable& table, const VariantResolver& resolve,
                  ExportFormat format, const std::filesystem::path& destination) {
  write_file_atomic(destination, render_table(table, resolve, format));
}

}  // namespace ctxforge::massprod
