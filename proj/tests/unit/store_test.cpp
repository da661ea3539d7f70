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

#include <gtest/gtest.h>

#include <fstream>
#include <random>
#include <thread>

#include "ctxforge/json_io.hpp"
#include "ctxforge/lifecycle.hpp"
#include "ctxforge/validation.hpp"
#include "support/reference_fixtures.hpp"
#include "support/temp_dir.hpp"

namespace ctxforge::store {
namespace {

using ctxforge::testing::ref_interest;
using ctxforge::testing::ref_problem;
using ctxforge::testing::ref_variant;
using ctxforge::testing::TempDir;

ContextVariant validated_variant(const std::string& problem_id, const std::string& label) {
  const auto text = ref_variant(problem_id, label);
  ContextVariant v{problem_id + "--" + label, problem_id, label, text,
                   VariantState::kGenerated, 1, std::nullopt, {}};
  return apply_report(v, validation::validate(ref_problem(problem_id), text,
                                              ref_interest(label)));
}

void seed(Workspace& ws) {
  for (const auto& p : ctxforge::testing::ref_set().problems) ws.put_problem(p);
  for (const auto& i : ctxforge::testing::ref_set().interests) ws.put_interest(i);
}

TEST(WorkspaceTest, EditRevalidateAccept) {
  TempDir dir;
  auto ws = Workspace::open(dir.path());
  seed(*ws);
  const auto v = validated_variant("cd-album", "TikTok");
  ws->put_variant(v);
  const auto before = ws->audit().size();

  const auto edited_text = v.text + "\nThe team posts daily.";
  auto e = ws->record_edit(v.id, edited_text, "author");
  EXPECT_EQ(e.state, VariantState::kEdited);
  EXPECT_THROW(ws->record_decision(v.id, Decision::kAccept, "author"), IllegalTransition);
  const auto report =
      validation::validate(ref_problem("cd-album"), edited_text, ref_interest("TikTok"));
  ws->record_revalidation(v.id, report, "author");
  const auto done = ws->record_decision(v.id, Decision::kAccept, "author");
  EXPECT_EQ(done.state, VariantState::kAccepted);
  EXPECT_EQ(done.edit_history.size(), 1u);
  EXPECT_EQ(ws->audit().size() - before, 3u);
  const auto audit = ws->audit();
  EXPECT_EQ(audit[audit.size() - 3].action, "edit");
  EXPECT_EQ(audit[audit.size() - 2].action, "revalidate");
  EXPECT_EQ(audit.back().action, "accept");
  EXPECT_EQ(audit.back().actor, "author");
}

TEST(WorkspaceTest, ReopenEqual) {
  TempDir dir;
  Snapshot saved;
  {
    auto ws = Workspace::open(dir.path());
    seed(*ws);
    for (const char* p : {"cd-album", "eq-1"}) {
      for (const char* i : {"TikTok", "NBA"}) ws->put_variant(validated_variant(p, i));
    }
    saved = ws->snapshot();
    EXPECT_EQ(saved.variants.size(), 4u);
  }
  auto ws = Workspace::open(dir.path());
  EXPECT_EQ(ws->snapshot(), saved);
}

TEST(WorkspaceTest, SingleWriter) {
  TempDir dir;
  auto ws = Workspace::open(dir.path());
  EXPECT_THROW(Workspace::open(dir.path()), WorkspaceLocked);
}

TEST(WorkspaceTest, Errors) {
  TempDir dir;
  auto ws = Workspace::open(dir.path());
  EXPECT_THROW(ws->record_edit("nope", "x", "a"), NotFound);
  EXPECT_THROW(ws->put_variant(validated_variant("cd-album", "NBA")), NotFound);
  seed(*ws);
  auto v = validated_variant("cd-album", "NBA");
  v.id = "../escape";
  EXPECT_THROW(ws->put_variant(v), PreconditionError);
}

TEST(WorkspaceTest, InterestLabelsCaseInsensitive) {
  TempDir dir;
  auto ws = Workspace::open(dir.path());
  ws->put_interest(make_interest("NBA"));
  ws->put_interest(make_interest("nba", {"hoops"}));
  ASSERT_EQ(ws->interests().size(), 1u);
  EXPECT_EQ(ws->interest("Nba")->keywords, std::vector<std::string>{"hoops"});
}

TEST(WorkspaceTest, CorruptFilesAreReported) {
  TempDir dir;
  {
    auto ws = Workspace::open(dir.path());
    seed(*ws);
    ws->put_variant(validated_variant("eq-1", "NBA"));
  }
  // Leftover temp file from an interrupted write is not a record.
  std::ofstream(dir.path() / "variants" / "eq-1--NBA.json.tmp.1.0") << "{trunc";
  EXPECT_NO_THROW(Workspace::open(dir.path()));

  const auto file = dir.path() / "variants" / "eq-1--NBA.json";
  const auto good = read_file(file);
  std::ofstream(file) << good.substr(0, good.size() / 2);
  EXPECT_THROW(Workspace::open(dir.path()), CorruptWorkspace);
  auto j = parse_json(good);
  j["version"] = 99;
  std::ofstream(file, std::ios::trunc) << j.dump();
  EXPECT_THROW(Workspace::open(dir.path()), CorruptWorkspace);
  std::ofstream(file, std::ios::trunc) << good;
  std::ofstream(dir.path() / "audit.log", std::ios::app) << "{\"seq\":1}\n";
  EXPECT_THROW(Workspace::open(dir.path()), CorruptWorkspace);
}

TEST(WorkspaceTest, RandomMutationsSurviveReload) {
  TempDir dir;
  std::mt19937 rng(1234);
  Snapshot saved;
  {
    auto ws = Workspace::open(dir.path());
    seed(*ws);
    std::vector<std::string> ids;
    for (int step = 0; step < 100; ++step) {
      const int kind = ids.empty() ? 0 : static_cast<int>(rng() % 5);
      try {
        switch (kind) {
          case 0: {
            auto v = validated_variant(rng() % 2 ? "cd-album" : "eq-1", rng() % 2 ? "NBA" : "TikTok");
            v.id += "-" + std::to_string(step);
            ids.push_back(ws->put_variant(v));
            break;
          }
          case 1:
            ws->record_edit(ids[rng() % ids.size()], "edit " + std::to_string(step), "u");
            break;
          case 2: {
            const auto id = ids[rng() % ids.size()];
            const auto v = *ws->variant(id);
            ws->record_revalidation(id, validation::validate(*ws->problem(v.problem_id), v.text,
                                                             *ws->interest(v.interest_label)),
                                    "u");
            break;
          }
          case 3:
            ws->record_decision(ids[rng() % ids.size()],
                                rng() % 2 ? Decision::kAccept : Decision::kReject, "u");
            break;
          default:
            ws->put_interest(make_interest("Interest " + std::to_string(rng() % 6)));
        }
      } catch (const IllegalTransition&) {
      }
    }
    saved = ws->snapshot();
  }
  auto ws = Workspace::open(dir.path());
  EXPECT_EQ(ws->snapshot(), saved);
  const auto audit = ws->audit();
  for (std::size_t i = 1; i < audit.size(); ++i) {
    EXPECT_LT(audit[i - 1].seq, audit[i].seq);
    EXPECT_LE(audit[i - 1].at, audit[i].at);
  }
}

TEST(WorkspaceTest, ConcurrentReadersAndWriters) {
  TempDir dir;
  auto ws = Workspace::open(dir.path());
  seed(*ws);
  std::vector<std::thread> threads;
  for (int t = 0; t < 8; ++t) {
    threads.emplace_back([&, t] {
      for (int k = 0; k < 10; ++k) {
        auto v = validated_variant("eq-1", "NBA");
        v.id = "t" + std::to_string(t) + "-" + std::to_string(k);
        ws->put_variant(v);
        EXPECT_TRUE(ws->variant(v.id));
        ws->variants();
      }
    });
  }
  for (auto& th : threads) th.join();
  EXPECT_EQ(ws->variants().size(), 80u);
  const auto audit = ws->audit();
  for (std::size_t i = 1; i < audit.size(); ++i) EXPECT_EQ(audit[i].seq, audit[i - 1].seq + 1);
}

}  // namespace
}  // namespace ctxforge::store
