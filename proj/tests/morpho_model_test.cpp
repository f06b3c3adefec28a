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

#include "morphseg/morpho_model.hpp"

#include <gtest/gtest.h>

#include "generators.hpp"

namespace morphseg {
namespace {

using Suffixes = std::vector<std::string>;

TEST(ParseAnalyzedLineTest, StemAndSuffixes) {
  const auto s = parse_analyzed_line("kasaba+sı+nda+yım");
  ASSERT_EQ(s.words.size(), 1u);
  EXPECT_EQ(s.words[0], MorphWord("kasaba", {"sı", "nda", "yım"}));
}

TEST(ParseAnalyzedLineTest, UnsegmentedWord) {
  const auto s = parse_analyzed_line("küçük");
  ASSERT_EQ(s.words.size(), 1u);
  EXPECT_EQ(s.words[0].stem(), "küçük");
  EXPECT_TRUE(s.words[0].suffixes().empty());
}

TEST(ParseAnalyzedLineTest, EscapedDelimiter) {
  const auto s = parse_analyzed_line("a\\+b+c");
  ASSERT_EQ(s.words.size(), 1u);
  EXPECT_EQ(s.words[0], MorphWord("a+b", {"c"}));
}

TEST(ParseAnalyzedLineTest, EscapedBackslashAndLiteralBackslash) {
  EXPECT_EQ(parse_analyzed_line("a\\\\+b").words[0], MorphWord("a\\", {"b"}));
  EXPECT_EQ(parse_analyzed_line("a\\b").words[0], MorphWord("a\\b"));
  EXPECT_EQ(parse_analyzed_line("ab\\").words[0], MorphWord("ab\\"));
}

TEST(ParseAnalyzedLineTest, CustomDelimiter) {
  const auto s = parse_analyzed_line("uzak|ta küçük", '|');
  ASSERT_EQ(s.words.size(), 2u);
  EXPECT_EQ(s.words[0], MorphWord("uzak", {"ta"}));
  EXPECT_EQ(s.words[1], MorphWord("küçük"));
}

TEST(ParseAnalyzedLineTest, WhitespaceRuns) {
  const auto s = parse_analyzed_line("  a+b \t c  ");
  ASSERT_EQ(s.words.size(), 2u);
  EXPECT_EQ(s.words[1], MorphWord("c"));
}

TEST(ParseAnalyzedLineTest, EmptyLine) {
  EXPECT_TRUE(parse_analyzed_line("").words.empty());
  EXPECT_TRUE(parse_analyzed_line("   ").words.empty());
}

TEST(ParseAnalyzedLineTest, EmptyMorphemesAreErrors) {
  const auto column_of = [](std::string_view line) -> std::size_t {
    try {
      parse_analyzed_line(line);
    } catch (const ParseError& e) {
      return e.column();
    }
    return 0;
  };
  EXPECT_EQ(column_of("+ab"), 1u);
  EXPECT_EQ(column_of("ab+"), 4u);
  EXPECT_EQ(column_of("ab++c"), 4u);
  EXPECT_EQ(column_of("ok ab++c"), 7u);
}

TEST(ParseAnalyzedLineTest, DelimiterOnlyToken) {
  try {
    parse_analyzed_line("a ++ b");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.column(), 3u);
    EXPECT_NE(e.reason().find("only of delimiters"), std::string::npos);
    EXPECT_EQ(std::string(e.with_line(7).what()),
              "line 7, column 3: token consists only of delimiters");
  }
  EXPECT_THROW(parse_analyzed_line("+"), ParseError);
}

TEST(ParseAnalyzedLineTest, InvalidUtf8) {
  EXPECT_THROW(parse_analyzed_line("ab\xff"), ParseError);
  EXPECT_THROW(parse_analyzed_line("\xc3"), ParseError);
}

TEST(ParseAnalyzedLineTest, BadDelimiter) {
  EXPECT_THROW(parse_analyzed_line("a", ' '), std::invalid_argument);
  EXPECT_THROW(parse_analyzed_line("a", '\\'), std::invalid_argument);
}

TEST(SerializeAnalyzedLineTest, Examples) {
  EXPECT_EQ(serialize_analyzed_line(
                {{MorphWord("kasaba", {"sı", "nda", "yım"})}}),
            "kasaba+sı+nda+yım");
  EXPECT_EQ(serialize_analyzed_line({{MorphWord("küçük")}}), "küçük");
  EXPECT_EQ(serialize_analyzed_line({{MorphWord("a+b", {"c\\"})}}),
            "a\\+b+c\\\\");
  EXPECT_EQ(serialize_analyzed_line({}), "");
}

TEST(CanonicalSurfaceTest, Examples) {
  EXPECT_EQ(canonical_surface(MorphWord("kasaba", {"sındayım"})),
            "kasabasındayım");
  EXPECT_EQ(canonical_surface(MorphWord("uzak", {"ta"})), "uzakta");
  EXPECT_EQ(canonical_surface(MorphWord("x")), "x");
}

TEST(CanonicalSurfaceTest, InvariantUnderSuffixRegrouping) {
  EXPECT_EQ(canonical_surface(MorphWord("kasaba", {"sı", "nda", "yım"})),
            canonical_surface(MorphWord("kasaba", {"sındayım"})));
}

TEST(MorphWordTest, RejectsInvalidUnits) {
  EXPECT_THROW(MorphWord(""), std::invalid_argument);
  EXPECT_THROW(MorphWord("a b"), std::invalid_argument);
  EXPECT_THROW(MorphWord("a", {""}), std::invalid_argument);
  EXPECT_THROW(MorphWord("a", {"x\ty"}), std::invalid_argument);
}

TEST(AnalyzedFormatPropertyTest, RoundTrip) {
  gen::Rng rng(20260101);
  for (char delimiter : {'+', '|', '#'}) {
    for (int iter = 0; iter < 2000; ++iter) {
      AnalyzedSentence s;
      const int n = std::uniform_int_distribution<int>(0, 8)(rng);
      for (int i = 0; i < n; ++i) {
        std::vector<std::string> suffixes;
        const int k = std::uniform_int_distribution<int>(0, 6)(rng);
        for (int j = 0; j < k; ++j) suffixes.push_back(gen::random_unit(rng));
        s.words.emplace_back(gen::random_unit(rng), std::move(suffixes));
      }
      const std::string line = serialize_analyzed_line(s, delimiter);
      ASSERT_EQ(parse_analyzed_line(line, delimiter), s) << line;
      for (const auto& w : parse_analyzed_line(line, delimiter).words) {
        EXPECT_FALSE(w.stem().empty());
        for (const auto& x : w.suffixes()) EXPECT_FALSE(x.empty());
      }
    }
  }
}

}  // namespace
}  // namespace morphseg
