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

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <shared_mutex>
#include <string>
#include <vector>

#include "ctxforge/errors.hpp"
#include "ctxforge/model.hpp"

namespace ctxforge::store {

class WorkspaceLocked : public IoError {
 public:
  using IoError::IoError;
};

struct AuditEvent {
  std::int64_t seq = 0;
  Timestamp at;
  std::string actor;
  std::string action;
  std::string subject;

  bool operator==(const AuditEvent&) const = default;
};

enum class Decision { kAccept, kReject };

std::optional<Decision> parse_decision(std::string_view s);

/// In-memory image of a workspace; what a reload must reproduce.
struct Snapshot {
  std::map<std::string, ProblemTemplate> problems;
  std::map<std::string, Interest> interests;
  std::map<std::string, ContextVariant> variants;
  std::vector<AuditEvent> audit;

  bool operator==(const Snapshot&) const = default;
};

/// Directory-backed store:
///
///   root/problems.json      {"version": 1, "problems": [...]}
///   root/interests.json     {"version": 1, "interests": [...]}
///   root/variants/<id>.json {"version": 1, "variant": {...}}
///   root/audit.log          one {"seq","timestamp","actor","action","subject"} per line
///
/// One Workspace per root at a time (flock on root/.lock). Reads may run
/// concurrently; mutations are serialized. Every mutation rewrites its file
/// via temp-then-rename and then appends exactly one audit line.
class Workspace {
 public:
  /// Creates the directory if needed. Throws WorkspaceLocked, IoError,
  /// CorruptWorkspace.
  static std::unique_ptr<Workspace> open(const std::filesystem::path& root);
  ~Workspace();
  Workspace(const Workspace&) = delete;
  Workspace& operator=(const Workspace&) = delete;

  const std::filesystem::path& root() const { return root_; }

  std::vector<ProblemTemplate> problems() const;
  std::optional<ProblemTemplate> problem(const std::string& id) const;
  std::vector<Interest> interests() const;
  /// Case-insensitive lookup.
  std::optional<Interest> interest(const std::string& label) const;
  std::vector<ContextVariant> variants() const;
  std::optional<ContextVariant> variant(const std::string& id) const;
  std::vector<AuditEvent> audit() const;
  Snapshot snapshot() const;

  /// Insert or replace. Return the stored id / label.
  std::string put_problem(const ProblemTemplate& problem, const std::string& actor = "system");
  /// Replaces an existing interest whose label matches case-insensitively.
  std::string put_interest(const Interest& interest, const std::string& actor = "system");
  /// Throws NotFound when the variant's problem is not stored.
  std::string put_variant(const ContextVariant& variant, const std::string& actor = "system");

  /// Throws NotFound, IllegalTransition.
  ContextVariant record_edit(const std::string& variant_id, const std::string& new_text,
                             const std::string& actor);
  /// Attaches a fresh report and moves the state accordingly.
  ContextVariant record_revalidation(const std::string& variant_id,
                                     const ValidationReport& report, const std::string& actor);
  ContextVariant record_decision(const std::string& variant_id, Decision decision,
                                 const std::string& actor);

 private:
  Workspace(std::filesystem::path root, int lock_fd);
  void load();
  void write_problems();
  void write_interests();
  void write_variant(const ContextVariant& v);
  void append_audit(const std::string& actor, const std::string& action,
                    const std::string& subject);
  ContextVariant& variant_ref(const std::string& id);

  std::filesystem::path root_;
  int lock_fd_;
  mutable std::shared_mutex mutex_;
  Snapshot data_;
};

/// Ids usable as file names: [A-Za-z0-9][A-Za-z0-9._-]*.
bool valid_id(std::string_view id);

}  // namespace ctxforge::store
