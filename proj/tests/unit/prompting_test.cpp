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

#include "ctxforge/prompting.hpp"

#include <gtest/gtest.h>

#include "ctxforge/errors.hpp"
#include "support/reference_fixtures.hpp"

namespace ctxforge::prompting {
namespace {

using ctxforge::testing::golden_dir;
using ctxforge::testing::ref_problem;

const char* kPlaceholder = "[The interest that the problem needs to be contextualized for.]";

ProblemTemplate bare_equation() { return new_problem("eq", "2x+3=15", std::nullopt, {}); }

TEST(DefaultTemplateTest, Shape) {
  const auto& t = default_template();
  ASSERT_EQ(t.exemplars.size(), 3u);
  ASSERT_EQ(t.rules.size(), 3u);
  EXPECT_EQ(t.rules[0], "don't change values");
  EXPECT_EQ(t.exemplars[0].outputs.size(), 2u);
  EXPECT_EQ(t.exemplars[0].outputs[0].interest, "Video Games");
  EXPECT_EQ(t.exemplars[0].outputs[1].interest, "basketball");
  EXPECT_EQ(t.exemplars[1].outputs.size(), 1u);
  EXPECT_NE(t.exemplars[1].outputs[0].output_problem.find("World of Warcraft"),
            std::string::npos);
  EXPECT_EQ(t.exemplars[2].outputs.size(), 1u);
  EXPECT_NO_THROW(check_template(t));
}

TEST(BuildPromptTest, MatchesGoldenTranscription) {
  const std::string golden = read_file(golden_dir() / "prompt_2x+3=15.txt");
  EXPECT_EQ(build_prompt(default_template(), bare_equation(), make_interest(kPlaceholder)),
            golden);
}

TEST(BuildPromptTest, TargetStanza) {
  const std::string p = build_prompt(default_template(), bare_equation(), make_interest("NBA"));
  EXPECT_NE(p.find("input problem: 2x+3=15"), std::string::npos);
  EXPECT_NE(p.find("Interest: NBA"), std::string::npos);
  EXPECT_LT(p.find("Now give output for"), p.find("Some rules to follow:"));
}

TEST(BuildPromptTest, Deterministic) {
  const auto& problem = ref_problem("cd-album");
  EXPECT_EQ(build_prompt(default_template(), problem, make_interest("NBA")),
            build_prompt(default_template(), problem, make_interest("NBA")));
}

TEST(BuildPromptTest, CdAlbumMatchesFrozenGolden) {
  const std::string golden = read_file(golden_dir() / "prompt_cd-album_TikTok.txt");
  const std::string p =
      build_prompt(default_template(), ref_problem("cd-album"), make_interest("TikTok"));
  EXPECT_EQ(p.size(), golden.size());
  EXPECT_EQ(p, golden);
}

TEST(TemplateJsonTest, RoundTripAndOverride) {
  const Json j = template_to_json(default_template());
  EXPECT_EQ(template_from_json(j), default_template());

  Json custom = j;
  custom["rules"].push_back("keep it short");
  custom["exemplars"].push_back(
      {{"input_problem", "1 + 1"}, {"outputs", {{{"interest", "chess"}, {"output_problem", "x"}}}}});
  const auto t = template_from_json(custom);
  EXPECT_EQ(t.rules.size(), 4u);
  const auto p = build_prompt(t, bare_equation(), make_interest("NBA"));
  EXPECT_NE(p.find("Output Problem 4 based on interest \"chess\":"), std::string::npos);
  EXPECT_NE(p.find("4. keep it short\n"), std::string::npos);
}

TEST(TemplateJsonTest, RejectsBrokenTemplates) {
  Json j = template_to_json(default_template());
  Json reordered = j;
  std::swap(reordered["rules"][0], reordered["rules"][2]);
  EXPECT_THROW(template_from_json(reordered), SchemaError);

  Json no_rules = j;
  no_rules["rules"] = Json::array();
  EXPECT_THROW(template_from_json(no_rules), SchemaError);

  Json no_outputs = j;
  no_outputs["exemplars"][1]["outputs"] = Json::array();
  EXPECT_THROW(template_from_json(no_outputs), SchemaError);

  EXPECT_THROW(template_from_json(Json::array()), SchemaError);
}

}  // namespace
}  // namespace ctxforge::prompting
