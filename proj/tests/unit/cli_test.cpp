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

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "ctxforge/json_io.hpp"
#include "support/reference_fixtures.hpp"
#include "support/temp_dir.hpp"

namespace ctxforge::cli {
namespace {

using ctxforge::testing::data_dir;
using ctxforge::testing::TempDir;

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run cli(std::vector<std::string> args) {
  args.insert(args.begin(), "ctxforge");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string write(const TempDir& dir, const std::string& name, const std::string& text) {
  const auto path = dir.path() / name;
  std::ofstream(path, std::ios::binary) << text;
  return path.string();
}

const std::string problems = (data_dir() / "reference" / "problems.json").string();
const std::string fixtures = (data_dir() / "reference" / "variants.json").string();

TEST(CliTest, ValidateReferencePairPasses) {
  TempDir dir;
  const auto variant = write(dir, "nba.txt", ctxforge::testing::ref_variant("cd-album", "NBA"));
  const auto r = cli({"validate", "--original", problems, "--problem-id", "cd-album",
                      "--variant", variant, "--interest", "NBA"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(parse_json(r.out)["overall"], "pass");
  // Deterministic stdout.
  EXPECT_EQ(cli({"validate", "--original", problems, "--problem-id", "cd-album", "--variant",
                 variant, "--interest", "NBA"})
                .out,
            r.out);
}

TEST(CliTest, ValidateIdenticalFilesWarns) {
  TempDir dir;
  const auto text = full_text(ctxforge::testing::ref_problem("cd-album"));
  const auto a = write(dir, "a.txt", text);
  const auto b = write(dir, "b.txt", text);
  const auto r = cli({"validate", "--original", a, "--variant", b, "--interest", "TikTok"});
  EXPECT_EQ(r.code, 1) << r.out;
}

TEST(CliTest, ValidateValueChangeFails) {
  TempDir dir;
  auto text = ctxforge::testing::ref_variant("cd-album", "NBA");
  text.replace(text.find("2.50"), 4, "3.00");
  const auto variant = write(dir, "bad.txt", text);
  EXPECT_EQ(cli({"validate", "--original", problems, "--problem-id", "cd-album", "--variant",
                 variant, "--interest", "NBA", "--keywords", "Lakers"})
                .code,
            2);
}

TEST(CliTest, GenerateWritesWorkspaceAndCsv) {
  TempDir dir;
  const auto out = (dir.path() / "ws").string();
  const auto r = cli({"generate", "--problems", problems, "--interests", "TikTok,NBA",
                      "--backend", "stub", "--fixtures", fixtures, "--out", out});
  EXPECT_EQ(r.code, 0) << r.err;
  const auto summary = parse_json(r.out);
  EXPECT_EQ(summary["total"], 4);
  EXPECT_EQ(summary["failed"], 0);
  EXPECT_EQ(read_file(dir.path() / "ws" / "export.csv"),
            read_file(ctxforge::testing::golden_dir() / "reference_batch.csv"));
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "ws" / "variants" / "eq-1--nba.json"));
}

TEST(CliTest, GenerateWithFailuresExits2) {
  TempDir dir;
  const auto empty = write(dir, "empty.json", R"({"entries":[]})");
  const auto r = cli({"generate", "--problems", problems, "--fixtures", empty, "--out",
                      (dir.path() / "ws").string(), "--max-attempts", "1"});
  EXPECT_EQ(r.code, 2);
  EXPECT_EQ(parse_json(r.out)["failed"], 4);
}

TEST(CliTest, UsageErrors) {
  EXPECT_EQ(cli({}).code, kExitUsage);
  EXPECT_EQ(cli({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(cli({"validate", "--original", problems}).code, kExitUsage);
  EXPECT_EQ(cli({"generate", "--problems", problems, "--out", "/tmp/x", "--max-attempts", "0"})
                .code,
            kExitUsage);
  EXPECT_EQ(cli({"generate", "--problems", problems, "--out", "/tmp/x", "--backend", "gpt"}).code,
            kExitUsage);
  const auto many = cli({"prompt", "--problem", problems, "--interest", "NBA"});
  EXPECT_EQ(many.code, kExitUsage);
  EXPECT_NE(many.err.find("--problem-id"), std::string::npos);
  EXPECT_TRUE(many.out.empty());
}

TEST(CliTest, MissingFile) {
  EXPECT_EQ(cli({"prompt", "--problem", "/nonexistent.txt", "--interest", "NBA"}).code,
            kExitNoInput);
}

TEST(CliTest, PromptGolden) {
  TempDir dir;
  const auto problem = write(dir, "eq.txt", "2x+3=15\n");
  const auto r = cli({"prompt", "--problem", problem, "--interest",
                      "[The interest that the problem needs to be contextualized for.]"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(r.out, read_file(ctxforge::testing::golden_dir() / "prompt_2x+3=15.txt"));
}

}  // namespace
}  // namespace ctxforge::cli
