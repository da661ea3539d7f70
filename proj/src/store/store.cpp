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

#include "ctxforge/store.hpp"

#include <fcntl.h>
#include <sys/file.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <mutex>
#include <regex>
#include <sstream>

#include "ctxforge/json_io.hpp"
#include "ctxforge/lifecycle.hpp"

namespace ctxforge::store {

namespace fs = std::filesystem;

namespace {

constexpr int kVersion = 1;

Json load_versioned(const fs::path& path) {
  Json j;
  try {
    j = parse_json(read_file(path));
  } catch (const Error& e) {
    throw CorruptWorkspace(path.string() + ": " + e.what());
  }
  if (!j.is_object() || !j.contains("version") || j["version"] != kVersion) {
    throw CorruptWorkspace(path.string() + ": missing or unsupported version");
  }
  return j;
}

Json event_to_json(const AuditEvent& e) {
  return Json{{"seq", e.seq},
              {"timestamp", e.at.to_iso8601()},
              {"actor", e.actor},
              {"action", e.action},
              {"subject", e.subject}};
}

AuditEvent event_from_json(const Json& j) {
  AuditEvent e;
  e.seq = j.at("seq").get<std::int64_t>();
  const auto at = Timestamp::parse(j.at("timestamp").get<std::string>());
  if (!at) throw SchemaError("bad timestamp");
  e.at = *at;
  e.actor = j.at("actor").get<std::string>();
  e.action = j.at("action").get<std::string>();
  e.subject = j.at("subject").get<std::string>();
  return e;
}

}  // namespace

std::optional<Decision> parse_decision(std::string_view s) {
  if (s == "accept") return Decision::kAccept;
  if (s == "reject") return Decision::kReject;
  return std::nullopt;
}

bool valid_id(std::string_view id) {
  static const std::regex re("[A-Za-z0-9][A-Za-z0-9._-]*");
  return std::regex_match(id.begin(), id.end(), re);
}

std::unique_ptr<Workspace> Workspace::open(const fs::path& root) {
  std::error_code ec;
  fs::create_directories(root / "variants", ec);
  if (ec) throw IoError("cannot create workspace " + root.string() + ": " + ec.message());
  const auto lock_path = root / ".lock";
  const int fd = ::open(lock_path.c_str(), O_RDWR | O_CREAT | O_CLOEXEC, 0644);
  if (fd < 0) throw IoError("cannot open " + lock_path.string() + ": " + std::strerror(errno));
  if (::flock(fd, LOCK_EX | LOCK_NB) != 0) {
    ::close(fd);
    throw WorkspaceLocked("workspace " + root.string() + " is locked by another writer");
  }
  std::unique_ptr<Workspace> ws(new Workspace(root, fd));
  ws->load();
  return ws;
}

Workspace::Workspace(fs::path root, int lock_fd) : root_(std::move(root)), lock_fd_(lock_fd) {}

Workspace::~Workspace() {
  ::flock(lock_fd_, LOCK_UN);
  ::close(lock_fd_);
}

void Workspace::load() {
  Snapshot d;
  try {
    if (fs::exists(root_ / "problems.json")) {
      const auto file = load_versioned(root_ / "problems.json");
      for (const auto& pj : file.at("problems")) {
        auto p = pj.get<ProblemTemplate>();
        const auto id = p.id;
        d.problems.emplace(id, std::move(p));
      }
    }
    if (fs::exists(root_ / "interests.json")) {
      const auto file = load_versioned(root_ / "interests.json");
      for (const auto& ij : file.at("interests")) {
        auto i = ij.get<Interest>();
        const auto label = i.label;
        d.interests.emplace(label, std::move(i));
      }
    }
    for (const auto& entry : fs::directory_iterator(root_ / "variants")) {
      const auto name = entry.path().filename().string();
      // Leftovers of interrupted writes; the primary file is intact.
      if (name.find(".tmp.") != std::string::npos) continue;
      if (entry.path().extension() != ".json") continue;
      auto v = load_versioned(entry.path()).at("variant").get<ContextVariant>();
      if (v.id + ".json" != name) throw CorruptWorkspace(name + ": id mismatch");
      if (!d.problems.count(v.problem_id)) {
        throw CorruptWorkspace(name + ": unknown problem '" + v.problem_id + "'");
      }
      const auto id = v.id;
      d.variants.emplace(id, std::move(v));
    }
    if (fs::exists(root_ / "audit.log")) {
      std::istringstream lines(read_file(root_ / "audit.log"));
      std::string line;
      while (std::getline(lines, line)) {
        if (line.empty()) continue;
        auto e = event_from_json(Json::parse(line));
        if (!d.audit.empty() && (e.seq <= d.audit.back().seq || e.at < d.audit.back().at)) {
          throw CorruptWorkspace("audit.log out of order at seq " + std::to_string(e.seq));
        }
        d.audit.push_back(std::move(e));
      }
    }
  } catch (const CorruptWorkspace&) {
    throw;
  } catch (const Json::exception& e) {
    throw CorruptWorkspace(root_.string() + ": " + e.what());
  } catch (const fs::filesystem_error& e) {
    throw IoError(e.what());
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw CorruptWorkspace(root_.string() + ": " + e.what());
  }
  data_ = std::move(d);
}

std::vector<ProblemTemplate> Workspace::problems() const {
  std::shared_lock lock(mutex_);
  std::vector<ProblemTemplate> out;
  for (const auto& [_, p] : data_.problems) out.push_back(p);
  return out;
}

std::optional<ProblemTemplate> Workspace::problem(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = data_.problems.find(id);
  if (it == data_.problems.end()) return std::nullopt;
  return it->second;
}

std::vector<Interest> Workspace::interests() const {
  std::shared_lock lock(mutex_);
  std::vector<Interest> out;
  for (const auto& [_, i] : data_.interests) out.push_back(i);
  return out;
}

std::optional<Interest> Workspace::interest(const std::string& label) const {
  std::shared_lock lock(mutex_);
  for (const auto& [l, i] : data_.interests) {
    if (same_label(l, label)) return i;
  }
  return std::nullopt;
}

std::vector<ContextVariant> Workspace::variants() const {
  std::shared_lock lock(mutex_);
  std::vector<ContextVariant> out;
  for (const auto& [_, v] : data_.variants) out.push_back(v);
  return out;
}

std::optional<ContextVariant> Workspace::variant(const std::string& id) const {
  std::shared_lock lock(mutex_);
  auto it = data_.variants.find(id);
  if (it == data_.variants.end()) return std::nullopt;
  return it->second;
}

std::vector<AuditEvent> Workspace::audit() const {
  std::shared_lock lock(mutex_);
  return data_.audit;
}

Snapshot Workspace::snapshot() const {
  std::shared_lock lock(mutex_);
  return data_;
}

void Workspace::write_problems() {
  Json arr = Json::array();
  for (const auto& [_, p] : data_.problems) arr.push_back(p);
  write_file_atomic(root_ / "problems.json",
                    Json{{"version", kVersion}, {"problems", arr}}.dump(2) + "\n");
}

void Workspace::write_interests() {
  Json arr = Json::array();
  for (const auto& [_, i] : data_.interests) arr.push_back(i);
  write_file_atomic(root_ / "interests.json",
                    Json{{"version", kVersion}, {"interests", arr}}.dump(2) + "\n");
}

void Workspace::write_variant(const ContextVariant& v) {
  write_file_atomic(root_ / "variants" / (v.id + ".json"),
                    Json{{"version", kVersion}, {"variant", v}}.dump(2) + "\n");
}

void Workspace::append_audit(const std::string& actor, const std::string& action,
                             const std::string& subject) {
  AuditEvent e{data_.audit.empty() ? 1 : data_.audit.back().seq + 1, Timestamp::now(), actor,
               action, subject};
  if (!data_.audit.empty() && e.at < data_.audit.back().at) e.at = data_.audit.back().at;
  const auto line = event_to_json(e).dump() + "\n";
  const auto path = root_ / "audit.log";
  const int fd = ::open(path.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd < 0) throw IoError("cannot open " + path.string() + ": " + std::strerror(errno));
  const auto n = ::write(fd, line.data(), line.size());
  const bool ok = n == static_cast<ssize_t>(line.size()) && ::fsync(fd) == 0;
  ::close(fd);
  if (!ok) throw IoError("cannot append to " + path.string());
  data_.audit.push_back(std::move(e));
}

std::string Workspace::put_problem(const ProblemTemplate& problem, const std::string& actor) {
  check_problem(problem);
  if (!valid_id(problem.id)) throw PreconditionError("invalid problem id '" + problem.id + "'");
  std::unique_lock lock(mutex_);
  auto previous = data_.problems;
  data_.problems[problem.id] = problem;
  try {
    write_problems();
  } catch (...) {
    data_.problems = std::move(previous);
    throw;
  }
  append_audit(actor, "put_problem", problem.id);
  return problem.id;
}

std::string Workspace::put_interest(const Interest& interest, const std::string& actor) {
  const auto clean = make_interest(interest.label, interest.keywords);
  std::unique_lock lock(mutex_);
  auto previous = data_.interests;
  for (auto it = data_.interests.begin(); it != data_.interests.end();) {
    it = same_label(it->first, clean.label) ? data_.interests.erase(it) : std::next(it);
  }
  data_.interests[clean.label] = clean;
  try {
    write_interests();
  } catch (...) {
    data_.interests = std::move(previous);
    throw;
  }
  append_audit(actor, "put_interest", clean.label);
  return clean.label;
}

std::string Workspace::put_variant(const ContextVariant& variant, const std::string& actor) {
  if (!valid_id(variant.id)) throw PreconditionError("invalid variant id '" + variant.id + "'");
  std::unique_lock lock(mutex_);
  if (!data_.problems.count(variant.problem_id)) {
    throw NotFound("problem '" + variant.problem_id + "'");
  }
  write_variant(variant);
  data_.variants[variant.id] = variant;
  append_audit(actor, "put_variant", variant.id);
  return variant.id;
}

ContextVariant& Workspace::variant_ref(const std::string& id) {
  auto it = data_.variants.find(id);
  if (it == data_.variants.end()) throw NotFound("variant '" + id + "'");
  return it->second;
}

ContextVariant Workspace::record_edit(const std::string& variant_id, const std::string& new_text,
                                      const std::string& actor) {
  std::unique_lock lock(mutex_);
  auto& slot = variant_ref(variant_id);
  auto next = apply_edit(slot, new_text, Timestamp::now());
  write_variant(next);
  slot = next;
  append_audit(actor, "edit", variant_id);
  return next;
}

ContextVariant Workspace::record_revalidation(const std::string& variant_id,
                                              const ValidationReport& report,
                                              const std::string& actor) {
  std::unique_lock lock(mutex_);
  auto& slot = variant_ref(variant_id);
  auto next = apply_report(slot, report);
  write_variant(next);
  slot = next;
  append_audit(actor, "revalidate", variant_id);
  return next;
}

ContextVariant Workspace::record_decision(const std::string& variant_id, Decision decision,
                                          const std::string& actor) {
  std::unique_lock lock(mutex_);
  auto& slot = variant_ref(variant_id);
  const auto event = decision == Decision::kAccept ? LifecycleEvent::kAccept
                                                   : LifecycleEvent::kReject;
  auto next = transition(slot, event);
  write_variant(next);
  slot = next;
  append_audit(actor, to_string(event), variant_id);
  return next;
}

}  // namespace ctxforge::store
