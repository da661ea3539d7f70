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

#include "ctxforge/json_io.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <atomic>
#include <cerrno>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "ctxforge/errors.hpp"

namespace ctxforge {
namespace {

const Json& field(const Json& j, const char* name) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end()) throw SchemaError(std::string("missing field '") + name + "'");
  return *it;
}

std::string string_field(const Json& j, const char* name) {
  const Json& v = field(j, name);
  if (!v.is_string()) throw SchemaError(std::string("field '") + name + "' must be a string");
  return v.get<std::string>();
}

std::optional<std::string> optional_string(const Json& j, const char* name) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (!it->is_string()) throw SchemaError(std::string("field '") + name + "' must be a string");
  return it->get<std::string>();
}

std::vector<std::string> string_list(const Json& j, const char* name, bool required) {
  if (!j.is_object()) throw SchemaError("expected a JSON object");
  auto it = j.find(name);
  if (it == j.end() || it->is_null()) {
    if (required) throw SchemaError(std::string("missing field '") + name + "'");
    return {};
  }
  if (!it->is_array()) throw SchemaError(std::string("field '") + name + "' must be an array");
  std::vector<std::string> out;
  for (const auto& e : *it) {
    if (!e.is_string()) {
      throw SchemaError(std::string("field '") + name + "' must hold strings");
    }
    out.push_back(e.get<std::string>());
  }
  return out;
}

Json optional_json(const std::optional<std::string>& v) { return v ? Json(*v) : Json(nullptr); }

}  // namespace

void to_json(Json& j, const ProblemTemplate& p) {
  j = Json::object();
  j["id"] = p.id;
  j["title"] = optional_json(p.title);
  j["body"] = p.body;
  j["formula"] = optional_json(p.formula);
  j["sub_questions"] = p.sub_questions;
  j["variable_note"] = optional_json(p.variable_note);
}

void from_json(const Json& j, ProblemTemplate& p) {
  p = new_problem(string_field(j, "id"), string_field(j, "body"), optional_string(j, "formula"),
                  string_list(j, "sub_questions", false), optional_string(j, "variable_note"),
                  optional_string(j, "title"));
}

void to_json(Json& j, const Interest& i) {
  j = Json::object();
  j["label"] = i.label;
  j["keywords"] = i.keywords;
}

void from_json(const Json& j, Interest& i) {
  i = make_interest(string_field(j, "label"), string_list(j, "keywords", false));
}

void to_json(Json& j, const CheckResult& c) {
  j = Json::object();
  j["check_id"] = to_string(c.check_id);
  j["outcome"] = to_string(c.outcome);
  j["details"] = c.details;
  j["evidence"] = c.evidence;
}

void from_json(const Json& j, CheckResult& c) {
  const auto id = parse_check_id(string_field(j, "check_id"));
  const auto outcome = parse_outcome(string_field(j, "outcome"));
  if (!id) throw SchemaError("unknown check_id");
  if (!outcome) throw SchemaError("unknown outcome");
  c.check_id = *id;
  c.outcome = *outcome;
  c.details = string_field(j, "details");
  c.evidence = field(j, "evidence");
}

void to_json(Json& j, const ValidationReport& r) {
  j = Json::object();
  j["checks"] = Json::array();
  for (const auto& c : r.checks) j["checks"].push_back(c);
  j["overall"] = to_string(r.overall);
}

void from_json(const Json& j, ValidationReport& r) {
  const Json& checks = field(j, "checks");
  if (!checks.is_array()) throw SchemaError("field 'checks' must be an array");
  r.checks.clear();
  for (const auto& c : checks) r.checks.push_back(c.get<CheckResult>());
  const auto overall = parse_outcome(string_field(j, "overall"));
  if (!overall) throw SchemaError("unknown overall outcome");
  r.overall = *overall;
}

void to_json(Json& j, const ContextVariant& v) {
  j = Json::object();
  j["id"] = v.id;
  j["problem_id"] = v.problem_id;
  j["interest_label"] = v.interest_label;
  j["text"] = v.text;
  j["state"] = to_string(v.state);
  j["attempt"] = v.attempt;
  j["report"] = v.report ? Json(*v.report) : Json(nullptr);
  j["edit_history"] = Json::array();
  for (const auto& e : v.edit_history) {
    j["edit_history"].push_back(
        Json{{"timestamp", e.at.to_iso8601()}, {"prior_text", e.prior_text}});
  }
}

void from_json(const Json& j, ContextVariant& v) {
  v.id = string_field(j, "id");
  v.problem_id = string_field(j, "problem_id");
  v.interest_label = string_field(j, "interest_label");
  v.text = string_field(j, "text");
  const auto state = parse_state(string_field(j, "state"));
  if (!state) throw SchemaError("unknown state");
  v.state = *state;
  const Json& attempt = field(j, "attempt");
  if (!attempt.is_number_integer()) throw SchemaError("field 'attempt' must be an integer");
  v.attempt = attempt.get<int>();
  const Json& report = field(j, "report");
  v.report = report.is_null() ? std::nullopt : std::optional(report.get<ValidationReport>());
  v.edit_history.clear();
  const Json& history = field(j, "edit_history");
  if (!history.is_array()) throw SchemaError("field 'edit_history' must be an array");
  for (const auto& e : history) {
    const auto at = Timestamp::parse(string_field(e, "timestamp"));
    if (!at) throw SchemaError("bad timestamp in edit_history");
    v.edit_history.push_back({*at, string_field(e, "prior_text")});
  }
}

ProblemSet problem_set_from_json(const Json& j) {
  ProblemSet set;
  const Json& problems = field(j, "problems");
  if (!problems.is_array()) throw SchemaError("field 'problems' must be an array");
  std::set<std::string> ids;
  for (const auto& p : problems) {
    auto problem = p.get<ProblemTemplate>();
    if (!ids.insert(problem.id).second) throw SchemaError("duplicate problem id '" + problem.id + "'");
    set.problems.push_back(std::move(problem));
  }
  if (auto it = j.find("interests"); it != j.end() && !it->is_null()) {
    if (!it->is_array()) throw SchemaError("field 'interests' must be an array");
    for (const auto& i : *it) {
      auto interest = i.get<Interest>();
      for (const auto& seen : set.interests) {
        if (same_label(seen.label, interest.label)) {
          throw SchemaError("duplicate interest label '" + interest.label + "'");
        }
      }
      set.interests.push_back(std::move(interest));
    }
  }
  return set;
}

ProblemSet load_problem_set(const std::filesystem::path& path) {
  return problem_set_from_json(parse_json(read_file(path)));
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("cannot read " + path.string());
  return ss.str();
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
  static std::atomic<unsigned> counter{0};
  auto tmp = path;
  tmp += ".tmp." + std::to_string(::getpid()) + "." + std::to_string(counter++);
  const int fd = ::open(tmp.c_str(), O_WRONLY | O_CREAT | O_TRUNC | O_CLOEXEC, 0644);
  if (fd < 0) throw IoError("cannot create " + tmp.string() + ": " + std::strerror(errno));
  const char* p = content.data();
  std::size_t left = content.size();
  while (left > 0) {
    const auto n = ::write(fd, p, left);
    if (n < 0) {
      if (errno == EINTR) continue;
      const std::string why = std::strerror(errno);
      ::close(fd);
      ::unlink(tmp.c_str());
      throw IoError("cannot write " + tmp.string() + ": " + why);
    }
    p += n;
    left -= static_cast<std::size_t>(n);
  }
  if (::fsync(fd) != 0 || ::close(fd) != 0) {
    ::unlink(tmp.c_str());
    throw IoError("cannot flush " + tmp.string());
  }
  if (::rename(tmp.c_str(), path.c_str()) != 0) {
    const std::string why = std::strerror(errno);
    ::unlink(tmp.c_str());
    throw IoError("cannot replace " + path.string() + ": " + why);
  }
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace ctxforge
