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

#include <algorithm>

#include "ctxforge/errors.hpp"
#include "ctxforge/json_io.hpp"

namespace ctxforge::prompting {
namespace {

PromptTemplate make_default() {
  PromptTemplate t;
  t.preamble = "Your task is to change context based on interest for a problem, for example:";

  t.exemplars.push_back(Exemplar{
      "Chaz and Nikki are standing in a long line to buy rock concert tickets. Nikki is 8 feet "
      "ahead of Chaz in the line. Let's compare Chaz's distance to Nikki's distance from the "
      "front of the line.\n\n"
      "When Nikki is 20 feet from the front of the line, how far away is Chaz?\n\n"
      "When Nikki is 16 feet from the front of the line, how far away is Chaz?\n\n"
      "In the row labeled \"Expression\", define a variable for Nikki's distance and use that "
      "variable to write an expression that will allow you to calculate Chaz's distance.",
      {
          {"Video Games",
           "In a video game, two players, Mario and Luigi, are standing at different points in a "
           "level. Luigi is 8 units ahead of Mario in the game. Let's compare Mario's distance to "
           "Luigi's distance from the level's end.\n\n"
           "When Luigi is 20 units from the end of the level, how far away is Mario?\n\n"
           "When Luigi is 16 units from the end of the level, how far away is Mario?\n\n"
           "In the row labeled \"Expression\", define a variable for Mario's distance and use "
           "that variable to write an expression that will allow you to calculate Luigi's "
           "distance."},
          {"basketball",
           "During a basketball game, two players, Jordan and Kobe, are standing at different "
           "positions on the court. Jordan is 12 feet ahead of Kobe on the court. Let's compare "
           "Jordan's distance to Kobe's distance from the basket.\n\n"
           "When Kobe is 20 feet away from the basket, how far away is Jordan from the basket?\n\n"
           "When Kobe is 16 feet away from the basket, how far away is Jordan from the basket?\n\n"
           "In the row labeled \"Expression\", define a variable for Kobe's distance and use that "
           "variable to write an expression that will allow you to calculate Jordan's distance."},
      }});

  t.exemplars.push_back(Exemplar{
      "You are a product inspector for a company that produces light bulbs. You find that two "
      "out of every 300 bulbs are defective: they don’t work properly.",
      {
          {"World of Warcraft",
           "You enjoy playing World of Warcraft on your computer. You notice that two out of "
           "every 300 times you defeat a monster, the monster has an epic item: a treasure that "
           "you want to collect."},
      }});

  t.exemplars.push_back(Exemplar{
      "y = 80 - 6x\n\n"
      "If x = 10, what is y?\n\n"
      "If x = 7, what is y?\n\n"
      "If y = 8, what is x?\n\n"
      "Write a story that could go along with the equation y = 80 - 6x.",
      {
          {"Video Games",
           "You are playing your favorite war game on the Xbox 360. When you started playing "
           "today, there were 80 enemies left in the locust horde. You kill an average of 6 "
           "enemies every minute.\n\n"
           "(a) How many enemies are left after 10 minutes?\n\n"
           "(b) How many enemies are left after 7 minutes?\n\n"
           "(c) Write an algebra rule that represents this situation using symbols.\n\n"
           "(d) If there are only 8 enemies left, how long have you been playing today?"},
      }});

  t.rules = {
      "don't change values",
      "we want to have deeper contextualization not surface details based on Using Adaptive "
      "Learning Technologies to Personalize Instruction to Student Interests: The Impact of "
      "Relevant Contexts on Performance and Learning Outcomes",
      "output question should ask same thing as input question, don't ask any additional "
      "question or complicate the info by adding unnecessary details",
  };
  return t;
}

const std::string& str(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw SchemaError(std::string("template field '") + key + "' must be a string");
  }
  return it->get_ref<const std::string&>();
}

const Json& arr(const Json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || !it->is_array()) {
    throw SchemaError(std::string("template field '") + key + "' must be an array");
  }
  return *it;
}

}  // namespace

const PromptTemplate& default_template() {
  static const PromptTemplate t = make_default();
  return t;
}

std::string build_prompt(const PromptTemplate& tmpl, const ProblemTemplate& problem,
                         const Interest& interest) {
  std::string out = tmpl.preamble;
  out += "\n\n";
  for (std::size_t i = 0; i < tmpl.exemplars.size(); ++i) {
    const auto n = std::to_string(i + 1);
    const Exemplar& ex = tmpl.exemplars[i];
    out += "Input Problem " + n + ":\n\n" + ex.input_problem + "\n\n";
    for (const auto& o : ex.outputs) {
      out += "Output Problem " + n + " based on interest \"" + o.interest + "\":\n\n" +
             o.output_problem + "\n\n";
    }
  }
  out += "Now give output for\n";
  out += "input problem: " + full_text(problem) + "\n";
  out += "Interest: " + interest.label + "\n\n";
  out += "Some rules to follow:\n";
  for (std::size_t i = 0; i < tmpl.rules.size(); ++i) {
    out += std::to_string(i + 1) + ". " + tmpl.rules[i] + "\n";
  }
  return out;
}

void check_template(const PromptTemplate& tmpl) {
  if (tmpl.rules.empty()) throw SchemaError("template needs at least one rule");
  for (const auto& ex : tmpl.exemplars) {
    if (ex.outputs.empty()) throw SchemaError("every exemplar needs at least one output");
  }
  const auto& defaults = default_template().rules;
  std::vector<std::ptrdiff_t> positions;
  for (const auto& rule : defaults) {
    auto it = std::find(tmpl.rules.begin(), tmpl.rules.end(), rule);
    if (it == tmpl.rules.end()) return;
    positions.push_back(it - tmpl.rules.begin());
  }
  if (!std::is_sorted(positions.begin(), positions.end())) {
    throw SchemaError("the default rules must keep their original order");
  }
}

PromptTemplate template_from_json(const Json& j) {
  if (!j.is_object()) throw SchemaError("template must be a JSON object");
  PromptTemplate t;
  t.preamble = str(j, "preamble");
  for (const auto& e : arr(j, "exemplars")) {
    Exemplar ex{str(e, "input_problem"), {}};
    for (const auto& o : arr(e, "outputs")) {
      ex.outputs.push_back({str(o, "interest"), str(o, "output_problem")});
    }
    t.exemplars.push_back(std::move(ex));
  }
  for (const auto& r : arr(j, "rules")) {
    if (!r.is_string()) throw SchemaError("rules must be strings");
    t.rules.push_back(r.get<std::string>());
  }
  check_template(t);
  return t;
}

Json template_to_json(const PromptTemplate& tmpl) {
  Json j = Json::object();
  j["preamble"] = tmpl.preamble;
  j["exemplars"] = Json::array();
  for (const auto& ex : tmpl.exemplars) {
    Json e = {{"input_problem", ex.input_problem}, {"outputs", Json::array()}};
    for (const auto& o : ex.outputs) {
      e["outputs"].push_back({{"interest", o.interest}, {"output_problem", o.output_problem}});
    }
    j["exemplars"].push_back(std::move(e));
  }
  j["rules"] = tmpl.rules;
  return j;
}

PromptTemplate load_template(const std::filesystem::path& path) {
  return template_from_json(parse_json(read_file(path)));
}

}  // namespace ctxforge::prompting
