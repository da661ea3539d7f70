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

#include <gtest/gtest.h>

#include <deque>
#include <set>

#include "ctxforge/errors.hpp"
#include "ctxforge/json_io.hpp"
#include "ctxforge/lifecycle.hpp"
#include "ctxforge/model.hpp"
#include "support/reference_fixtures.hpp"

namespace ctxforge {
namespace {

using ctxforge::testing::ref_problem;

ValidationReport report_with(Outcome overall) { return ValidationReport{{}, overall}; }

ContextVariant variant_in(VariantState s, std::optional<Outcome> overall = Outcome::kPass) {
  ContextVariant v{"v1", "cd-album", "TikTok", "text", s, 1, std::nullopt, {}};
  if (overall) v.report = report_with(*overall);
  return v;
}

TEST(NewProblemTest, CdAlbum) {
  const auto& src = ref_problem("cd-album");
  const auto p = new_problem("cd-album", src.body, std::string("1000 - 2.50(C+15)"),
                             src.sub_questions);
  EXPECT_EQ(p.sub_questions.size(), 4u);
}

TEST(NewProblemTest, BareEquation) {
  const auto p = new_problem("eq-1", "2x + 3 = 15", std::nullopt, {});
  EXPECT_TRUE(p.sub_questions.empty());
  EXPECT_EQ(full_text(p), "2x + 3 = 15");
}

TEST(NewProblemTest, Errors) {
  try {
    new_problem("bad", "text", std::string("2+"), {});
    FAIL() << "expected FormulaParseError";
  } catch (const FormulaParseError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(new_problem("", "text", std::nullopt, {}), EmptyField);
  EXPECT_THROW(new_problem("id", "   ", std::nullopt, {}), EmptyField);
}

TEST(FullTextTest, BlocksSeparatedByBlankLines) {
  const auto p = new_problem("p", "Body.", std::string("x + 1"), {"Q1?", "Q2?"},
                             std::string("Let x be a thing."));
  EXPECT_EQ(full_text(p), "Body.\n\nLet x be a thing.\n\nx + 1\n\n1. Q1?\n\n2. Q2?");
}

TEST(InterestTest, TrimAndCompare) {
  EXPECT_EQ(make_interest("  TikTok ").label, "TikTok");
  EXPECT_THROW(make_interest("   "), EmptyField);
  EXPECT_TRUE(same_label("tiktok", "TikTok "));
  EXPECT_FALSE(same_label("NBA", "NFL"));
}

TEST(TransitionTest, SpecifiedMoves) {
  EXPECT_EQ(transition(variant_in(VariantState::kGenerated), LifecycleEvent::kValidationPassed)
                .state,
            VariantState::kValidated);
  EXPECT_THROW(transition(variant_in(VariantState::kAccepted), LifecycleEvent::kEdit),
               IllegalTransition);
  EXPECT_THROW(transition(variant_in(VariantState::kEdited), LifecycleEvent::kAccept),
               IllegalTransition);
}

TEST(TransitionTest, IllegalTransitionNamesStateAndEvent) {
  try {
    transition(variant_in(VariantState::kEdited), LifecycleEvent::kAccept);
    FAIL();
  } catch (const IllegalTransition& e) {
    EXPECT_EQ(e.from_state(), "edited");
    EXPECT_EQ(e.event(), "accept");
  }
}

TEST(TransitionTest, AcceptNeedsNonFailingReport) {
  EXPECT_THROW(transition(variant_in(VariantState::kNeedsReview, Outcome::kFail),
                          LifecycleEvent::kAccept),
               IllegalTransition);
  EXPECT_THROW(transition(variant_in(VariantState::kNeedsReview, std::nullopt),
                          LifecycleEvent::kAccept),
               IllegalTransition);
  EXPECT_EQ(transition(variant_in(VariantState::kNeedsReview, Outcome::kWarn),
                       LifecycleEvent::kAccept)
                .state,
            VariantState::kAccepted);
}

TEST(TransitionTest, EditThenRevalidate) {
  auto v = apply_edit(variant_in(VariantState::kValidated), "new", Timestamp{5});
  EXPECT_EQ(v.state, VariantState::kEdited);
  EXPECT_EQ(v.text, "new");
  ASSERT_EQ(v.edit_history.size(), 1u);
  EXPECT_EQ(v.edit_history[0].prior_text, "text");
  v = apply_edit(v, "newer", Timestamp{6});
  EXPECT_EQ(v.edit_history.size(), 2u);
  v = apply_report(v, report_with(Outcome::kFail));
  EXPECT_EQ(v.state, VariantState::kNeedsReview);
  EXPECT_THROW(transition(v, LifecycleEvent::kAccept), IllegalTransition);
  v = apply_edit(v, "fixed", Timestamp{7});
  v = apply_report(v, report_with(Outcome::kPass));
  EXPECT_EQ(v.state, VariantState::kValidated);
  EXPECT_EQ(transition(v, LifecycleEvent::kAccept).state, VariantState::kAccepted);
  EXPECT_THROW(apply_edit(transition(v, LifecycleEvent::kReject), "x", Timestamp{8}),
               IllegalTransition);
}

// Breadth-first search over the state graph. Every state is reachable from
// generated, and no path reaches accepted without visiting validated or
// needs_review immediately before.
TEST(TransitionTest, Reachability) {
  const std::vector<LifecycleEvent> events = {
      LifecycleEvent::kValidationPassed, LifecycleEvent::kValidationWarned,
      LifecycleEvent::kValidationFailed, LifecycleEvent::kEdit,
      LifecycleEvent::kAccept,           LifecycleEvent::kReject};
  std::set<VariantState> seen{VariantState::kGenerated};
  std::deque<VariantState> queue{VariantState::kGenerated};
  while (!queue.empty()) {
    const auto s = queue.front();
    queue.pop_front();
    for (auto e : events) {
      const auto t = next_state(s, e);
      if (!t) continue;
      if (*t == VariantState::kAccepted) {
        EXPECT_TRUE(s == VariantState::kValidated || s == VariantState::kNeedsReview);
      }
      if (seen.insert(*t).second) queue.push_back(*t);
    }
  }
  EXPECT_EQ(seen.size(), 7u);
}

TEST(AllowedEventsTest, MirrorsTransition) {
  const std::vector<VariantState> states = {
      VariantState::kGenerated, VariantState::kValidated, VariantState::kNeedsReview,
      VariantState::kEdited,    VariantState::kAccepted,  VariantState::kRejected,
      VariantState::kFailed};
  for (auto s : states) {
    for (auto overall : {Outcome::kPass, Outcome::kFail}) {
      const auto v = variant_in(s, overall);
      const auto allowed = allowed_events(v);
      for (auto e : allowed) {
        if (e == LifecycleEvent::kEdit) {
          EXPECT_NO_THROW(apply_edit(v, "t", Timestamp{}));
        } else {
          EXPECT_NO_THROW(transition(v, e));
        }
      }
    }
  }
}

TEST(JsonTest, ProblemRoundTrip) {
  for (const auto& p : ctxforge::testing::ref_set().problems) {
    const Json j = p;
    EXPECT_EQ(j.get<ProblemTemplate>(), p);
  }
  const Json j = ref_problem("eq-1");
  EXPECT_TRUE(j["formula"].is_null());
  EXPECT_EQ(j.begin().key(), "id");
}

TEST(JsonTest, VariantRoundTrip) {
  auto v = variant_in(VariantState::kValidated);
  v.report->checks.push_back({CheckId::kInterestPresence, Outcome::kWarn, "d", Json{{"k", 1}}});
  v = apply_edit(v, "edited text", Timestamp{1'700'000'000'123});
  const Json j = v;
  EXPECT_EQ(j["state"], "edited");
  EXPECT_EQ(j["edit_history"][0]["timestamp"], "2023-11-14T22:13:20.123Z");
  EXPECT_EQ(j.get<ContextVariant>(), v);
}

TEST(JsonTest, SchemaViolations) {
  EXPECT_THROW((Json{{"id", "x"}}.get<ProblemTemplate>()), SchemaError);
  EXPECT_THROW((Json{{"id", 3}, {"body", "b"}}.get<ProblemTemplate>()), SchemaError);
  EXPECT_THROW((Json{{"id", "x"}, {"body", "b"}, {"formula", "2+"}}.get<ProblemTemplate>()),
               FormulaParseError);
  Json v = variant_in(VariantState::kValidated);
  v["state"] = "bogus";
  EXPECT_THROW(v.get<ContextVariant>(), SchemaError);
}

TEST(JsonTest, ProblemSetRejectsDuplicates) {
  Json set = {{"problems", Json::array({Json(ref_problem("eq-1")), Json(ref_problem("eq-1"))})}};
  EXPECT_THROW(problem_set_from_json(set), SchemaError);
  Json labels = {{"problems", Json::array()},
                 {"interests", Json::array({{{"label", "NBA"}}, {{"label", "nba"}}})}};
  EXPECT_THROW(problem_set_from_json(labels), SchemaError);
}

}  // namespace
}  // namespace ctxforge
