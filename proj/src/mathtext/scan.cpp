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

#include "ctxforge/mathtext/scan.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "ctxforge/errors.hpp"
#include "ctxforge/mathtext/parser.hpp"

namespace ctxforge::mathtext {
namespace {

bool is_digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }
bool is_alpha(char c) { return std::isalpha(static_cast<unsigned char>(c)) != 0; }
bool is_alnum(char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; }
bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

struct Line {
  std::size_t offset;
  std::string_view text;
};

std::vector<Line> lines_of(std::string_view text) {
  std::vector<Line> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    out.push_back({start, text.substr(start, end - start)});
    start = end + 1;
  }
  return out;
}

struct Marker {
  std::size_t length = 0;  // marker plus following blanks, from line start
  bool numeric = false;
};

// "1." "2)" "(a)" "(iv)" "a)" "-" "*" "•", each followed by a blank.
Marker list_marker(std::string_view line) {
  std::size_t i = 0;
  while (i < line.size() && is_blank(line[i])) ++i;
  const std::size_t start = i;
  std::size_t end = std::string_view::npos;
  bool numeric = false;
  if (i < line.size() && is_digit(line[i])) {
    std::size_t j = i;
    while (j < line.size() && is_digit(line[j])) ++j;
    if (j < line.size() && (line[j] == '.' || line[j] == ')')) {
      end = j + 1;
      numeric = true;
    }
  } else if (i < line.size() && line[i] == '(') {
    std::size_t j = i + 1;
    while (j < line.size() && is_alnum(line[j]) && j - i <= 4) ++j;
    if (j > i + 1 && j < line.size() && line[j] == ')') {
      end = j + 1;
      numeric = is_digit(line[i + 1]);
    }
  } else if (i + 1 < line.size() && is_alpha(line[i]) && line[i + 1] == ')') {
    end = i + 2;
  } else if (i < line.size() && (line[i] == '-' || line[i] == '*')) {
    end = i + 1;
  } else if (line.substr(i, 3) == "\xE2\x80\xA2") {
    end = i + 3;
  }
  if (end == std::string_view::npos || end == start) return {};
  if (end < line.size() && !is_blank(line[end])) return {};
  while (end < line.size() && is_blank(line[end])) ++end;
  return {end, numeric};
}

}  // namespace

std::vector<NumericLiteral> extract_numeric_literals(std::string_view text) {
  std::vector<NumericLiteral> out;
  for (const Line& line : lines_of(text)) {
    const std::string_view s = line.text;
    const Marker marker = list_marker(s);
    std::size_t i = marker.numeric ? marker.length : 0;
    while (i < s.size()) {
      if (!is_digit(s[i])) {
        ++i;
        continue;
      }
      std::size_t j = i;
      while (j < s.size() && is_digit(s[j])) ++j;
      if (j - i <= 3) {
        while (j + 3 < s.size() && s[j] == ',' && is_digit(s[j + 1]) && is_digit(s[j + 2]) &&
               is_digit(s[j + 3]) && (j + 4 >= s.size() || !is_digit(s[j + 4]))) {
          j += 4;
        }
      }
      if (j + 1 < s.size() && s[j] == '.' && is_digit(s[j + 1])) {
        j += 1;
        while (j < s.size() && is_digit(s[j])) ++j;
      }
      const std::size_t start = (i > 0 && s[i - 1] == '$') ? i - 1 : i;
      std::string digits;
      for (std::size_t k = i; k < j; ++k) {
        if (s[k] != ',') digits += s[k];
      }
      out.push_back({*Decimal::parse(digits), std::string(s.substr(start, j - start)),
                     line.offset + start, j - start});
      i = j;
    }
  }
  return out;
}

std::set<Decimal> distinct_values(std::string_view text) {
  std::set<Decimal> out;
  for (const auto& lit : extract_numeric_literals(text)) out.insert(lit.value);
  return out;
}

namespace {

enum class Lex { kNumber, kMath, kWord, kOther };

struct ProseToken {
  Lex kind;
  std::size_t offset;
  std::size_t length;
  bool is_operator = false;
  bool is_equals = false;
};

std::size_t math_symbol_width(std::string_view s, std::size_t i, bool& is_op, bool& is_eq) {
  is_op = false;
  is_eq = false;
  switch (s[i]) {
    case '+': case '-': case '*': case '/':
      is_op = true;
      return 1;
    case '(': case ')':
      return 1;
    case '=':
      is_eq = true;
      return 1;
    default:
      break;
  }
  for (std::string_view sym : {"\xE2\x88\x92", "\xC3\x97", "\xC3\xB7", "\xC2\xB7"}) {
    if (s.substr(i, sym.size()) == sym) {
      is_op = true;
      return sym.size();
    }
  }
  return 0;
}

std::vector<ProseToken> lex_prose(std::string_view s) {
  std::vector<ProseToken> out;
  bool math_mode = false;
  std::size_t i = 0;
  while (i < s.size()) {
    const char c = s[i];
    if (is_blank(c)) {
      ++i;
      continue;
    }
    if (c == '$') {
      if (!(i + 1 < s.size() && is_digit(s[i + 1]))) math_mode = !math_mode;
      ++i;
      continue;
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < s.size() && is_digit(s[j])) ++j;
      if (j + 1 < s.size() && s[j] == '.' && is_digit(s[j + 1])) {
        ++j;
        while (j < s.size() && is_digit(s[j])) ++j;
      }
      out.push_back({Lex::kNumber, i, j - i});
      i = j;
      continue;
    }
    if (is_alpha(c)) {
      std::size_t j = i + 1;
      while (j < s.size() && (is_alnum(s[j]) || s[j] == '_')) ++j;
      const bool variable_like = math_mode || j - i == 1;
      // An apostrophe glued to a letter ("Let's", "don't") keeps it prose.
      const bool glued = j < s.size() && (s[j] == '\'' || s.substr(j, 3) == "\xE2\x80\x99");
      out.push_back({variable_like && !glued ? Lex::kMath : Lex::kWord, i, j - i});
      i = j;
      continue;
    }
    bool is_op = false, is_eq = false;
    if (const std::size_t w = math_symbol_width(s, i, is_op, is_eq); w > 0) {
      out.push_back({Lex::kMath, i, w, is_op, is_eq});
      i += w;
      continue;
    }
    out.push_back({Lex::kOther, i, 1});
    ++i;
  }
  return out;
}

std::string phrase_identifier(std::string_view s, const std::vector<ProseToken>& toks,
                              std::size_t first, std::size_t last) {
  std::string name;
  for (std::size_t k = first; k < last; ++k) {
    if (!name.empty()) name += '_';
    name += s.substr(toks[k].offset, toks[k].length);
  }
  return name;
}

}  // namespace

std::vector<FoundExpression> find_expressions(std::string_view text) {
  std::vector<FoundExpression> out;
  for (const Line& line : lines_of(text)) {
    const std::string_view s = line.text;
    const auto toks = lex_prose(s);
    std::size_t k = 0;
    while (k < toks.size()) {
      if (toks[k].kind != Lex::kNumber && toks[k].kind != Lex::kMath) {
        ++k;
        continue;
      }
      const std::size_t run_begin = k;
      bool has_operator = false;
      bool has_equals = false;
      while (k < toks.size() && (toks[k].kind == Lex::kNumber || toks[k].kind == Lex::kMath)) {
        has_operator |= toks[k].is_operator;
        has_equals |= toks[k].is_equals;
        ++k;
      }
      const std::size_t run_end = k;
      if (!has_operator && !has_equals) continue;

      std::size_t span_begin = toks[run_begin].offset;
      const std::size_t span_end = toks[run_end - 1].offset + toks[run_end - 1].length;
      const std::string_view src = s.substr(span_begin, span_end - span_begin);
      try {
        if (toks[run_begin].is_equals) {
          // "<prose phrase> = <expression>"
          std::size_t first_word = run_begin;
          while (first_word > 0 && toks[first_word - 1].kind == Lex::kWord) --first_word;
          if (first_word == run_begin) continue;
          Expression rhs = parse_expression(src.substr(1));
          Expression lhs =
              Expression::variable(phrase_identifier(s, toks, first_word, run_begin));
          span_begin = toks[first_word].offset;
          out.push_back({line.offset + span_begin, span_end - span_begin,
                         Equation{std::move(lhs), std::move(rhs)}});
        } else {
          out.push_back({line.offset + span_begin, span_end - span_begin, parse_formula(src)});
        }
      } catch (const ParseError&) {
        // not a formula after all
      }
    }
  }
  return out;
}

namespace {

bool ends_with_abbreviation(std::string_view sentence_so_far) {
  static constexpr std::array<std::string_view, 5> kAbbreviations = {"mr", "ms", "dr", "e.g",
                                                                     "i.e"};
  for (std::string_view abbr : kAbbreviations) {
    if (sentence_so_far.size() < abbr.size()) continue;
    const std::size_t at = sentence_so_far.size() - abbr.size();
    bool match = true;
    for (std::size_t i = 0; i < abbr.size(); ++i) {
      if (std::tolower(static_cast<unsigned char>(sentence_so_far[at + i])) != abbr[i]) {
        match = false;
        break;
      }
    }
    if (match && (at == 0 || !is_alpha(sentence_so_far[at - 1]))) return true;
  }
  return false;
}

bool closes_quote(char c) { return c == '"' || c == '\'' || c == ')'; }

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

std::vector<std::string> split_sentences(std::string_view text) {
  std::vector<std::string> out;
  auto emit = [&out](std::string_view piece) {
    piece = trim(piece);
    if (!piece.empty()) out.emplace_back(piece);
  };
  for (const Line& line : lines_of(text)) {
    std::string_view s = line.text.substr(list_marker(line.text).length);
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
      const char c = s[i];
      if (c != '.' && c != '?' && c != '!') continue;
      std::size_t end = i + 1;
      while (end < s.size() && closes_quote(s[end])) ++end;
      if (end < s.size() && !is_blank(s[end])) continue;
      if (c == '.' && ends_with_abbreviation(s.substr(start, i - start))) continue;
      emit(s.substr(start, end - start));
      start = end;
      i = end - 1;
    }
    emit(s.substr(start));
  }
  return out;
}

QuestionStructure count_questions(std::string_view text) {
  static constexpr std::array<std::string_view, 9> kDirectives = {
      "write", "create", "define", "use", "find", "calculate", "determine", "explain", "solve"};
  QuestionStructure q;
  for (const Line& line : lines_of(text)) {
    if (list_marker(line.text).length > 0) ++q.enumerated_items;
  }
  for (const std::string& sentence : split_sentences(text)) {
    std::string_view body = sentence;
    while (!body.empty() && closes_quote(body.back())) body.remove_suffix(1);
    if (!body.empty() && body.back() == '?') ++q.question_marks;

    std::size_t i = 0;
    while (i < sentence.size() && !is_alpha(sentence[i])) ++i;
    std::size_t j = i;
    while (j < sentence.size() && is_alpha(sentence[j])) ++j;
    std::string word;
    for (std::size_t k = i; k < j; ++k) {
      word += static_cast<char>(std::tolower(static_cast<unsigned char>(sentence[k])));
    }
    if (std::find(kDirectives.begin(), kDirectives.end(), word) != kDirectives.end()) {
      ++q.imperative_tasks;
    }
  }
  return q;
}

}  // namespace ctxforge::mathtext
