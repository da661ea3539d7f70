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

#include "ctxforge/validation.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <set>

#include "ctxforge/mathtext/parser.hpp"
#include "ctxforge/mathtext/scan.hpp"

namespace ctxforge::validation {
namespace {

using mathtext::Equation;
using mathtext::Expression;

Json value_list(const std::set<Decimal>& values) {
  Json out = Json::array();
  for (const auto& v : values) out.push_back(v.to_string());
  return out;
}

std::set<Decimal> difference(const std::set<Decimal>& a, const std::set<Decimal>& b) {
  std::set<Decimal> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::inserter(out, out.end()));
  return out;
}

Json structure_json(const QuestionStructure& q) {
  return Json{{"enumerated_items", q.enumerated_items},
              {"question_marks", q.question_marks},
              {"imperative_tasks", q.imperative_tasks}};
}

Json renaming_json(const mathtext::Renaming& r) {
  Json out = Json::object();
  for (const auto& [from, to] : r) out[from] = to;
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

bool is_word_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }

bool contains_word(const std::string& haystack, const std::string& needle) {
  if (needle.empty()) return false;
  for (std::size_t at = haystack.find(needle); at != std::string::npos;
       at = haystack.find(needle, at + 1)) {
    const bool left_ok = at == 0 || !is_word_char(haystack[at - 1]);
    const std::size_t end = at + needle.size();
    const bool right_ok = end >= haystack.size() || !is_word_char(haystack[end]);
    if (left_ok && right_ok) return true;
  }
  return false;
}

}  // namespace

CheckResult check_values(const ProblemTemplate& original, std::string_view variant_text) {
  const auto expected = mathtext::distinct_values(full_text(original));
  const auto actual = mathtext::distinct_values(variant_text);
  const auto missing = difference(expected, actual);
  const auto extraneous = difference(actual, expected);
  CheckResult r{CheckId::kValuePreservation, Outcome::kPass, "", Json::object()};
  r.evidence["original"] = value_list(expected);
  r.evidence["variant"] = value_list(actual);
  r.evidence["missing"] = value_list(missing);
  r.evidence["extraneous"] = value_list(extraneous);
  if (missing.empty() && extraneous.empty()) {
    r.details = "all " + std::to_string(expected.size()) + " distinct values preserved";
  } else {
    r.outcome = Outcome::kFail;
    r.details = std::to_string(missing.size()) + " value(s) missing, " +
                std::to_string(extraneous.size()) + " value(s) introduced";
  }
  return r;
}

CheckResult check_expression(const ProblemTemplate& original, std::string_view variant_text) {
  CheckResult r{CheckId::kExpressionPreservation, Outcome::kSkipped, "", Json::object()};
  if (!original.formula) {
    r.details = "original has no formula";
    return r;
  }
  const auto found = mathtext::find_expressions(variant_text);
  r.evidence["formula"] = *original.formula;
  if (found.empty() && mathtext::count_questions(variant_text).imperative_tasks >= 1) {
    r.details = "variant states no formula and asks the student to write one";
    return r;
  }
  Json found_json = Json::array();
  for (const auto& f : found) found_json.push_back(std::string(variant_text.substr(f.offset, f.length)));
  r.evidence["found"] = found_json;

  const mathtext::Formula target = mathtext::parse_formula(*original.formula);
  for (const auto& f : found) {
    std::optional<mathtext::Renaming> mapping;
    if (const auto* expr = std::get_if<Expression>(&target)) {
      if (const auto* e = std::get_if<Expression>(&f.formula)) {
        mapping = mathtext::alpha_mapping(*expr, *e);
      } else {
        const auto& eq = std::get<Equation>(f.formula);
        mapping = mathtext::alpha_mapping(*expr, eq.rhs);
        if (!mapping) mapping = mathtext::alpha_mapping(*expr, eq.lhs);
      }
    } else if (const auto* eq = std::get_if<Equation>(&f.formula)) {
      const auto& want = std::get<Equation>(target);
      if (mathtext::alpha_equivalent(want, *eq)) {
        mathtext::Renaming m;
        const auto from = mathtext::variables(want);
        const auto to = mathtext::variables(*eq);
        for (std::size_t i = 0; i < from.size(); ++i) m[from[i]] = to[i];
        mapping = m;
      }
    }
    if (mapping) {
      r.outcome = Outcome::kPass;
      r.details = "formula preserved up to variable renaming";
      r.evidence["matched"] = std::string(variant_text.substr(f.offset, f.length));
      r.evidence["renaming"] = renaming_json(*mapping);
      return r;
    }
  }
  r.outcome = Outcome::kFail;
  r.details = found.empty() ? "no formula found in variant"
                            : "no formula in variant matches the original";
  return r;
}

CheckResult check_structure(const ProblemTemplate& original, std::string_view variant_text) {
  const QuestionStructure qo = mathtext::count_questions(full_text(original));
  const QuestionStructure qv = mathtext::count_questions(variant_text);
  CheckResult r{CheckId::kStructurePreservation, Outcome::kPass, "", Json::object()};
  r.evidence["original"] = structure_json(qo);
  r.evidence["variant"] = structure_json(qv);
  const bool same_items = qv.enumerated_items == qo.enumerated_items;
  bool ok = false;
  if (qo.total() == 0) {
    ok = qv.total() >= 1 && same_items;
    r.details = ok ? "bare-equation original; variant poses a task"
                   : "bare-equation original; variant must pose a task and add no list items";
  } else {
    const bool same_asks = qv.question_marks + qv.imperative_tasks ==
                           qo.question_marks + qo.imperative_tasks;
    ok = same_items && same_asks;
    r.details = ok ? "same enumerated items and questions"
                   : (!same_items ? "enumerated item count differs" : "question count differs");
  }
  if (!ok) r.outcome = Outcome::kFail;
  return r;
}

CheckResult check_interest_presence(std::string_view variant_text, const Interest& interest) {
  CheckResult r{CheckId::kInterestPresence, Outcome::kWarn, "", Json::object()};
  const std::string haystack = lower(variant_text);
  std::vector<std::string> terms{interest.label};
  terms.insert(terms.end(), interest.keywords.begin(), interest.keywords.end());
  r.evidence["terms"] = terms;
  for (const auto& term : terms) {
    if (contains_word(haystack, lower(term))) {
      r.outcome = Outcome::kPass;
      r.evidence["matched"] = term;
      r.details = "mentions '" + term + "'";
      return r;
    }
  }
  r.details = "neither the interest label nor a keyword appears";
  return r;
}

std::vector<std::string> tokenize(std::string_view text) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : text) {
    if (is_word_char(c)) {
      cur += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    } else if (!cur.empty()) {
      out.push_back(std::move(cur));
      cur.clear();
    }
  }
  if (!cur.empty()) out.push_back(std::move(cur));
  return out;
}

double rewrite_ratio(std::string_view a, std::string_view b) {
  const auto ta = tokenize(a);
  const auto tb = tokenize(b);
  const std::size_t longest = std::max(ta.size(), tb.size());
  if (longest == 0) return 0.0;
  std::vector<std::size_t> prev(tb.size() + 1, 0), cur(tb.size() + 1, 0);
  for (std::size_t i = 1; i <= ta.size(); ++i) {
    for (std::size_t j = 1; j <= tb.size(); ++j) {
      cur[j] = ta[i - 1] == tb[j - 1] ? prev[j - 1] + 1 : std::max(prev[j], cur[j - 1]);
    }
    std::swap(prev, cur);
  }
  return 1.0 - static_cast<double>(prev[tb.size()]) / static_cast<double>(longest);
}

CheckResult check_nontrivial_rewrite(const ProblemTemplate& original,
                                     std::string_view variant_text, double threshold) {
  const double ratio = rewrite_ratio(full_text(original), variant_text);
  CheckResult r{CheckId::kNontrivialRewrite, Outcome::kPass, "", Json::object()};
  r.evidence["ratio"] = std::round(ratio * 10000.0) / 10000.0;
  r.evidence["threshold"] = threshold;
  if (ratio >= threshold) {
    r.details = "variant rewrites enough of the original";
  } else {
    r.outcome = Outcome::kWarn;
    r.details = "variant is too close to the original";
  }
  return r;
}

Outcome aggregate(const std::vector<CheckResult>& checks) {
  bool warned = false;
  for (const auto& c : checks) {
    if (c.outcome == Outcome::kFail && severity_of(c.check_id) == Severity::kError) {
      return Outcome::kFail;
    }
    warned |= c.outcome == Outcome::kWarn || c.outcome == Outcome::kFail;
  }
  return warned ? Outcome::kWarn : Outcome::kPass;
}

ValidationReport validate(const ProblemTemplate& original, std::string_view variant_text,
                          const Interest& interest, const Options& options) {
  ValidationReport report;
  report.checks = {
      check_values(original, variant_text),
      check_expression(original, variant_text),
      check_structure(original, variant_text),
      check_interest_presence(variant_text, interest),
      check_nontrivial_rewrite(original, variant_text, options.rewrite_threshold),
  };
  report.overall = aggregate(report.checks);
  return report;
}

int exit_code(const ValidationReport& report) {
  switch (report.overall) {
    case Outcome::kPass: return 0;
    case Outcome::kWarn: return 1;
    default: return 2;
  }
}

}  // namespace ctxforge::validation
