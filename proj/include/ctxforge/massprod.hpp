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
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ctxforge/generation/backend.hpp"
#include "ctxforge/model.hpp"
#include "ctxforge/prompting.hpp"
#include "ctxforge/validation.hpp"

namespace ctxforge::massprod {

enum class AcceptOn { kPassOnly, kPassOrWarn };

std::string to_string(AcceptOn a);
std::optional<AcceptOn> parse_accept_on(std::string_view s);

struct BatchPolicy {
  int max_attempts = 3;
  int parallelism = 4;
  AcceptOn accept_on = AcceptOn::kPassOrWarn;
};

/// Throws PreconditionError.
void check_policy(const BatchPolicy& policy);

struct TableRow {
  std::string problem_id;
  std::string interest;
  std::string variant_id;
  VariantState state = VariantState::kGenerated;
  int attempt = 0;  // generations made; 0 when the cell never ran
  std::optional<Outcome> overall;
  std::string reason;  // why a cell failed, empty otherwise

  bool operator==(const TableRow&) const = default;
};

struct MassProductionTable {
  std::vector<TableRow> rows;  // sorted by problem_id, then interest
  Timestamp created_at;
  BatchPolicy policy;
};

struct BatchSummary {
  int total = 0;
  int validated = 0;
  int needs_review = 0;
  int failed = 0;
  double wall_time_seconds = 0.0;
};

Json summary_to_json(const BatchSummary& s);

struct BatchResult {
  MassProductionTable table;
  std::vector<ContextVariant> variants;  // same order as table.rows
  BatchSummary summary;
  /// Set when the backend became unavailable and the rest of the batch was
  /// abandoned; those cells are failed with this reason.
  std::optional<std::string> backend_unavailable;
};

struct BatchOptions {
  prompting::PromptTemplate prompt_template = prompting::default_template();
  generation::GenerationRequest request_defaults;  // prompt and context are filled per cell
  validation::Options validation;
  /// Called from worker threads once per finished cell.
  std::function<void(const TableRow&)> on_cell_done;
};

/// "<problem_id>--<slug of label>", slug = lowercase ASCII alphanumerics with
/// runs of anything else collapsed to '-'.
std::string variant_id_for(const std::string& problem_id, const std::string& interest_label);

/// Runs every (problem, interest) cell. Throws PreconditionError on empty
/// inputs or a bad policy; per-cell problems end up in the rows.
BatchResult run_batch(const std::vector<ProblemTemplate>& problems,
                      const std::vector<Interest>& interests, const BatchPolicy& policy,
                      generation::Backend& backend, const BatchOptions& options = {});

enum class ExportFormat { kCsv, kJson };

std::optional<ExportFormat> parse_export_format(std::string_view s);

/// Looks a variant up by id; nullopt when it does not exist.
using VariantResolver = std::function<std::optional<ContextVariant>(const std::string& id)>;

/// Rendered export. Rows come out in problem_id, interest order whatever the
/// table order. Throws UnresolvedVariant.
std::string render_table(const MassProductionTable& table, const VariantResolver& resolve,
                         ExportFormat format);

/// Writes render_table() to `destination` atomically. Throws IoError,
/// UnresolvedVariant.
void export_table(const MassProductionTable& table, const VariantResolver& resolve,
                  ExportFormat format, const std::filesystem::path& destination);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view s);

}  // namespace ctxforge::massprod
