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

#include "cli.hpp"

#include <CLI11.hpp>

#include <atomic>
#include <csignal>
#include <iostream>
#include <sstream>

#include "ctxforge/api.hpp"
#include "ctxforge/generation/http_backend.hpp"
#include "ctxforge/generation/stub_backend.hpp"
#include "ctxforge/json_io.hpp"
#include "ctxforge/massprod.hpp"
#include "ctxforge/prompting.hpp"
#include "ctxforge/store.hpp"
#include "ctxforge/validation.hpp"

namespace ctxforge::cli {

namespace {

class UsageError : public Error {
 public:
  using Error::Error;
};

std::string trim(std::string s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

/// A problem file is either JSON (a problem object or a problem set) or
/// plain text, taken as the body of a problem with no formula.
struct LoadedProblems {
  std::vector<ProblemTemplate> problems;
  std::vector<Interest> interests;
};

LoadedProblems load_problems(const std::filesystem::path& path) {
  const auto text = read_file(path);
  const auto body = trim(text);
  if (!body.empty() && body.front() == '{') {
    const auto j = parse_json(body);
    if (j.contains("problems")) {
      auto set = problem_set_from_json(j);
      return {std::move(set.problems), std::move(set.interests)};
    }
    return {{j.get<ProblemTemplate>()}, {}};
  }
  return {{new_problem(path.stem().string(), body, std::nullopt, {})}, {}};
}

ProblemTemplate pick_problem(const LoadedProblems& loaded, const std::string& id) {
  if (id.empty()) {
    if (loaded.problems.size() != 1) {
      throw UsageError("file holds " + std::to_string(loaded.problems.size()) +
                       " problems; choose one with --problem-id");
    }
    return loaded.problems.front();
  }
  for (const auto& p : loaded.problems) {
    if (p.id == id) return p;
  }
  throw UsageError("no problem with id '" + id + "'");
}

Interest resolve_interest(const std::string& label, const std::vector<Interest>& known,
                          const std::string& keywords) {
  if (!keywords.empty()) return make_interest(label, split_list(keywords));
  for (const auto& i : known) {
    if (same_label(i.label, label)) return i;
  }
  return make_interest(label);
}

struct BackendFlags {
  std::string kind = "stub";
  std::string fixtures;
  bool fallback = false;
};

void add_backend_flags(CLI::App* cmd, BackendFlags& f) {
  cmd->add_option("--backend", f.kind, "stub or http")
      ->check(CLI::IsMember({"stub", "http"}))
      ->capture_default_str();
  cmd->add_option("--fixtures", f.fixtures, "fixture file for the stub backend");
  cmd->add_flag("--fallback", f.fallback, "stub: answer unknown keys with a templated lead-in");
}

std::shared_ptr<generation::Backend> make_backend(const BackendFlags& f) {
  if (f.kind == "stub") {
    if (f.fixtures.empty() && !f.fallback) {
      throw UsageError("--backend stub needs --fixtures (or --fallback)");
    }
    if (f.fixtures.empty()) return std::make_shared<generation::StubBackend>(
        std::map<generation::StubBackend::Key, std::string>{}, true);
    return generation::stub_from_fixtures(f.fixtures, f.fallback);
  }
  auto config = generation::config_from_env();
  if (config.api_key.empty()) throw UsageError("CTXFORGE_API_KEY is not set");
  return std::make_shared<generation::HttpBackend>(std::move(config));
}

prompting::PromptTemplate template_or_default(const std::string& path) {
  return path.empty() ? prompting::default_template() : prompting::load_template(path);
}

std::atomic<api::Service*> g_service{nullptr};

extern "C" void on_signal(int) {
  if (auto* s = g_service.load()) s->stop();
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Interest-based problem contextualization", "ctxforge"};
  app.require_subcommand(1);

  // prompt
  std::string prompt_problem, prompt_interest, prompt_id, prompt_template;
  auto* prompt = app.add_subcommand("prompt", "print the generation prompt for one problem");
  prompt->add_option("--problem", prompt_problem, "problem file (JSON or text)")->required();
  prompt->add_option("--interest", prompt_interest, "interest label")->required();
  prompt->add_option("--problem-id", prompt_id, "problem to use when the file holds several");
  prompt->add_option("--template", prompt_template, "prompt template JSON");

  // validate
  std::string val_original, val_variant, val_interest, val_keywords, val_id;
  double val_threshold = 0.30;
  auto* validate = app.add_subcommand("validate", "check a variant against its original");
  validate->add_option("--original", val_original, "original problem (JSON or text)")->required();
  validate->add_option("--variant", val_variant, "variant text file")->required();
  validate->add_option("--interest", val_interest, "interest label")->required();
  validate->add_option("--keywords", val_keywords, "comma-separated interest keywords");
  validate->add_option("--problem-id", val_id, "problem to use when the file holds several");
  validate->add_option("--rewrite-threshold", val_threshold)
      ->check(CLI::Range(0.0, 1.0))
      ->capture_default_str();

  // generate
  std::string gen_problems, gen_interests, gen_out, gen_template, gen_accept = "pass_or_warn";
  std::string gen_model = "gpt-4";
  double gen_temperature = 0.7;
  massprod::BatchPolicy gen_policy;
  BackendFlags gen_backend;
  auto* generate = app.add_subcommand("generate", "run a problem x interest batch");
  generate->add_option("--problems", gen_problems, "problem set JSON")->required();
  generate->add_option("--interests", gen_interests, "comma-separated labels");
  generate->add_option("--out", gen_out, "output workspace directory")->required();
  generate->add_option("--max-attempts", gen_policy.max_attempts)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--parallelism", gen_policy.parallelism)
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  generate->add_option("--accept-on", gen_accept)
      ->check(CLI::IsMember({"pass_only", "pass_or_warn"}))
      ->capture_default_str();
  generate->add_option("--template", gen_template, "prompt template JSON");
  generate->add_option("--model", gen_model)->capture_default_str();
  generate->add_option("--temperature", gen_temperature)
      ->check(CLI::Range(0.0, 2.0))
      ->capture_default_str();
  add_backend_flags(generate, gen_backend);

  // serve
  std::string serve_workspace, serve_host = "127.0.0.1", serve_ui;
  int serve_port = 8080;
  BackendFlags serve_backend;
  auto* serve = app.add_subcommand("serve", "run the HTTP API");
  serve->add_option("--workspace", serve_workspace, "workspace directory")->required();
  serve->add_option("--port", serve_port)->check(CLI::Range(0, 65535))->capture_default_str();
  serve->add_option("--host", serve_host)->capture_default_str();
  serve->add_option("--ui", serve_ui, "directory served under /ui");
  add_backend_flags(serve, serve_backend);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*prompt) {
      const auto p = pick_problem(load_problems(prompt_problem), prompt_id);
      out << prompting::build_prompt(template_or_default(prompt_template), p,
                                     make_interest(prompt_interest));
      return 0;
    }
    if (*validate) {
      const auto loaded = load_problems(val_original);
      const auto p = pick_problem(loaded, val_id);
      const auto interest = resolve_interest(val_interest, loaded.interests, val_keywords);
      const auto report =
          validation::validate(p, read_file(val_variant), interest, {val_threshold});
      out << Json(report).dump(2) << "\n";
      return validation::exit_code(report);
    }
    if (*generate) {
      const auto loaded = load_problems(gen_problems);
      std::vector<Interest> interests;
      if (gen_interests.empty()) {
        interests = loaded.interests;
      } else {
        for (const auto& label : split_list(gen_interests)) {
          interests.push_back(resolve_interest(label, loaded.interests, ""));
        }
      }
      if (interests.empty()) throw UsageError("no interests: pass --interests");
      gen_policy.accept_on = *massprod::parse_accept_on(gen_accept);
      auto backend = make_backend(gen_backend);
      massprod::BatchOptions options;
      options.prompt_template = template_or_default(gen_template);
      options.request_defaults.model_name = gen_model;
      options.request_defaults.temperature = gen_temperature;

      auto ws = store::Workspace::open(gen_out);
      for (const auto& p : loaded.problems) ws->put_problem(p, "cli");
      for (const auto& i : interests) ws->put_interest(i, "cli");
      const auto result =
          massprod::run_batch(loaded.problems, interests, gen_policy, *backend, options);
      for (const auto& v : result.variants) ws->put_variant(v, "cli");
      massprod::export_table(result.table, [&](const std::string& id) { return ws->variant(id); },
                             massprod::ExportFormat::kCsv,
                             std::filesystem::path(gen_out) / "export.csv");
      out << massprod::summary_to_json(result.summary).dump() << "\n";
      if (result.backend_unavailable) {
        err << "backend unavailable: " << *result.backend_unavailable << "\n";
      }
      return result.summary.failed == 0 ? 0 : 2;
    }
    if (*serve) {
      auto backend = make_backend(serve_backend);
      auto ws = store::Workspace::open(serve_workspace);
      api::ServiceOptions options;
      if (!serve_ui.empty()) options.ui_dir = serve_ui;
      api::Service service(*ws, backend, std::move(options));
      g_service = &service;
      std::signal(SIGINT, on_signal);
      std::signal(SIGTERM, on_signal);
      err << "serving on http://" << serve_host << ":" << serve_port << "\n";
      service.run(serve_host, serve_port);
      g_service = nullptr;
      service.wait_for_jobs();
      return 0;
    }
  } catch (const UsageError& e) {
    err << "ctxforge: " << e.what() << "\n";
    return kExitUsage;
  } catch (const generation::FixtureParseError& e) {
    err << "ctxforge: " << e.what() << "\n";
    return kExitData;
  } catch (const IoError& e) {
    err << "ctxforge: " << e.what() << "\n";
    return kExitNoInput;
  } catch (const Error& e) {
    err << "ctxforge: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    err << "ctxforge: internal error: " << e.what() << "\n";
    return kExitSoftware;
  }
  return kExitUsage;
}

}  // namespace ctxforge::cli
