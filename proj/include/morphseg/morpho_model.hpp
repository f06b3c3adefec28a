// Copyright 2026 The morphseg Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Words as produced by an external morphological analyzer, and the
// line-oriented interchange format used to read them.
//
// An analyzed line holds space-separated tokens; each token is a stem
// followed by zero or more suffixes joined by a single-character delimiter:
//
//   küçük fagernes kasaba+sı+nda+yım , oslo+dan
//
// A backslash escapes the delimiter or another backslash. Any other
// backslash is kept literally.

#pragma once

#include <compare>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "morphseg/error.hpp"
#include "morphseg/text.hpp"

namespace morphseg {

inline constexpr char kDefaultDelimiter = '+';

// One surface word: exactly one stem and an ordered list of suffixes.
class MorphWord {
 public:
  explicit MorphWord(std::string stem, std::vector<std::string> suffixes = {})
      : stem_(std::move(stem)), suffixes_(std::move(suffixes)) {
    if (stem_.empty()) throw std::invalid_argument("empty stem");
    if (text::has_space(stem_))
      throw std::invalid_argument("stem contains whitespace: '" + stem_ + "'");
    for (const auto& suffix : suffixes_) {
      if (suffix.empty()) throw std::invalid_argument("empty suffix");
      if (text::has_space(suffix))
        throw std::invalid_argument("suffix contains whitespace: '" + suffix +
                                    "'");
    }
  }

  const std::string& stem() const { return stem_; }
  const std::vector<std::string>& suffixes() const { return suffixes_; }
  bool has_suffixes() const { return !suffixes_.empty(); }

  // All suffixes joined without separators; empty when there are none.
  std::string combined_suffix() const {
    std::string out;
    for (const auto& s : suffixes_) out += s;
    return out;
  }

  friend bool operator==(const MorphWord&, const MorphWord&) = default;
  friend auto operator<=>(const MorphWord&, const MorphWord&) = default;

 private:
  std::string stem_;
  std::vector<std::string> suffixes_;
};

struct AnalyzedSentence {
  std::vector<MorphWord> words;

  friend bool operator==(const AnalyzedSentence&,
                         const AnalyzedSentence&) = default;
};

struct RawSentence {
  std::vector<std::string> tokens;

  static RawSentence from_line(std::string_view line) {
    return RawSentence{text::split_whitespace(line)};
  }
  std::string to_line() const { return text::join(tokens); }

  friend bool operator==(const RawSentence&, const RawSentence&) = default;
};

inline std::string canonical_surface(const MorphWord& w) {
  return w.stem() + w.combined_suffix();
}

inline RawSentence canonical_surfaces(const AnalyzedSentence& s) {
  RawSentence out;
  out.tokens.reserve(s.words.size());
  for (const auto& w : s.words) out.tokens.push_back(canonical_surface(w));
  return out;
}

namespace detail {

inline void check_delimiter(char delimiter) {
  if (text::is_space(delimiter))
    throw std::invalid_argument("morpheme delimiter must not be whitespace");
  if (delimiter == '\\')
    throw std::invalid_argument("morpheme delimiter must not be a backslash");
}

inline MorphWord parse_token(std::string_view token, std::size_t offset,
                             char delimiter) {
  if (token.find_first_not_of(delimiter) == std::string_view::npos)
    throw ParseError("token consists only of delimiters", offset + 1);
  std::vector<std::string> units;
  std::string current;
  std::size_t unit_start = offset;
  for (std::size_t i = 0; i < token.size(); ++i) {
    const char c = token[i];
    if (c == '\\' && i + 1 < token.size() &&
        (token[i + 1] == delimiter || token[i + 1] == '\\')) {
      current += token[i + 1];
      ++i;
    } else if (c == delimiter) {
      if (current.empty())
        throw ParseError("empty morpheme", offset + i + 1);
      units.push_back(std::move(current));
      current.clear();
      unit_start = offset + i + 1;
    } else {
      current += c;
    }
  }
  if (current.empty())
    throw ParseError("empty morpheme", unit_start + 1);
  units.push_back(std::move(current));

  std::string stem = std::move(units.front());
  units.erase(units.begin());
  return MorphWord(std::move(stem), std::move(units));
}

inline void append_escaped(std::string& out, std::string_view unit,
                           char delimiter) {
  for (char c : unit) {
    if (c == delimiter || c == '\\') out += '\\';
    out += c;
  }
}

}  // namespace detail

inline AnalyzedSentence parse_analyzed_line(std::string_view line,
                                            char delimiter = kDefaultDelimiter) {
  detail::check_delimiter(delimiter);
  if (auto bad = text::find_invalid_utf8(line))
    throw ParseError("invalid UTF-8", *bad + 1);

  AnalyzedSentence out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && text::is_space(line[i])) ++i;
    const std::size_t start = i;
    while (i < line.size() && !text::is_space(line[i])) ++i;
    if (i > start)
      out.words.push_back(
          detail::parse_token(line.substr(start, i - start), start, delimiter));
  }
  return out;
}

inline std::string serialize_word(const MorphWord& w,
                                  char delimiter = kDefaultDelimiter) {
  std::string out;
  detail::append_escaped(out, w.stem(), delimiter);
  for (const auto& suffix : w.suffixes()) {
    out += delimiter;
    detail::append_escaped(out, suffix, delimiter);
  }
  return out;
}

inline std::string serialize_analyzed_line(const AnalyzedSentence& s,
                                           char delimiter = kDefaultDelimiter) {
  detail::check_delimiter(delimiter);
  std::string out;
  for (std::size_t i = 0; i < s.words.size(); ++i) {
    if (i) out += ' ';
    out += serialize_word(s.words[i], delimiter);
  }
  return out;
}

}  // namespace morphseg
