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

#include "morphseg/metrics.hpp"

#include <gtest/gtest.h>

#include <algorithm>

#include "generators.hpp"
#include "oracles.hpp"

namespace morphseg {
namespace {

using Lines = std::vector<std::string>;

double bleu_of(const Lines& h, const Lines& r) { return bleu(h, r); }
double chrf_of(const Lines& h, const Lines& r) { return chrf3(h, r); }

std::vector<std::vector<std::string>> split_all(const Lines& lines) {
  std::vector<std::vector<std::string>> out;
  for (const auto& l : lines) out.push_back(text::split_whitespace(l));
  return out;
}

TEST(BleuTest, IdenticalCorpus) {
  const Lines c{"küçük fagernes kasabasındayım , oslodan", "a b c d e f"};
  EXPECT_DOUBLE_EQ(bleu_of(c, c), 100.0);
}

TEST(BleuTest, DisjointCorpus) {
  EXPECT_EQ(bleu_of({"a b c d"}, {"w x y z"}), 0.0);
}

TEST(BleuTest, DerivedValues) {
  // No hypothesis 4-gram exists, and there is no smoothing.
  EXPECT_EQ(bleu_of({"the cat sat"}, {"the cat sat down"}), 0.0);
  // p = 6/7, 4/6, 2/5, 1/4 and equal lengths.
  EXPECT_NEAR(bleu_of({"the cat sat on the mat today"}, {"the cat sat on a mat today"}),
              48.8923022434901, 1e-9);
  // All precisions 1, brevity penalty exp(1 - 7/6).
  EXPECT_NEAR(bleu_of({"the cat sat on the mat"}, {"the cat sat on the mat today"}),
              84.64817248906141, 1e-9);
  // Corpus level: lengths 9 vs 9, precisions pooled over both lines.
  EXPECT_NEAR(bleu_of({"a b c d e", "x y z w"}, {"a b c d", "x y z w v"}),
              79.84079523098931, 1e-9);
}

TEST(BleuTest, CaseSensitive) {
  EXPECT_EQ(bleu_of({"A b c d"}, {"a b c d"}), 0.0);
}

TEST(BleuTest, EmptyHypothesis) {
  EXPECT_EQ(bleu_of({""}, {"a b c d"}), 0.0);
  EXPECT_EQ(bleu_of({}, {}), 0.0);
}

TEST(BleuTest, LengthMismatchThrows) {
  EXPECT_THROW(bleu_of({"a"}, {"a", "b"}), std::invalid_argument);
}

TEST(BleuTest, ClippingCountsReferenceOccurrences) {
  const auto s = bleu_sentence_stats("the the the the", "the cat");
  EXPECT_EQ(s.matched[0], 1u);
  EXPECT_EQ(s.total[0], 4u);
}

TEST(ChrfTest, IdenticalCorpus) {
  EXPECT_DOUBLE_EQ(chrf_of({"abc", "kasaba## sı$$"}, {"abc", "kasaba## sı$$"}), 100.0);
  EXPECT_DOUBLE_EQ(chrf_of({"a"}, {"a"}), 100.0);
}

TEST(ChrfTest, DisjointCorpus) {
  EXPECT_EQ(chrf_of({"abc"}, {"xyz"}), 0.0);
}

TEST(ChrfTest, DerivedValues) {
  // P = R = (3/4 + 2/3 + 1/2 + 0) / 4 over the four orders that exist.
  EXPECT_NEAR(chrf_of({"abcd"}, {"abce"}), 47.91666666666666, 1e-9);
  EXPECT_NEAR(chrf_of({"the cat sat on the mat"}, {"the cat sat on a mat"}),
              73.21392616061074, 1e-9);
  EXPECT_NEAR(chrf_of({"kasabasındayım"}, {"kasabadayım"}), 62.88092567052256, 1e-9);
}

TEST(ChrfTest, WhitespaceIgnored) {
  EXPECT_DOUBLE_EQ(chrf_of({"ab cd"}, {"abcd"}), 100.0);
}

TEST(ChrfTest, EmptyHypothesis) {
  EXPECT_EQ(chrf_of({""}, {"abc"}), 0.0);
  EXPECT_EQ(chrf_of({""}, {""}), 0.0);
}

TEST(ChrfTest, LengthMismatchThrows) {
  EXPECT_THROW(chrf_of({"a", "b"}, {"a"}), std::invalid_argument);
}

TEST(ChrfTest, SwappingPrecisionAndRecallFavorsRecall) {
  for (int i = 1; i <= 20; ++i)
    for (int j = 1; j <= 20; ++j) {
      const double p = i / 20.0, r = j / 20.0;
      const double f = ChrfStats::chrf_combine(p, r, kChrfBeta);
      ASSERT_NEAR(f, 10 * p * r / (9 * p + r), 1e-12);
      if (r > p) {
        ASSERT_GT(f, ChrfStats::chrf_combine(r, p, kChrfBeta));
      }
    }
}

TEST(ChrfTest, MarginalGainFromRecallWhileRecallBelowThreePrecision) {
  // dF/dR = 90 P^2 / D^2 and dF/dP = 10 R^2 / D^2, so recall is worth more
  // exactly while R < 3P.
  const double d = 1e-6;
  for (int i = 1; i <= 20; ++i)
    for (int j = 1; j <= 20; ++j) {
      const double p = i / 25.0, r = j / 25.0;
      if (p == r || std::abs(r - 3 * p) < 0.05) continue;
      const double base = ChrfStats::chrf_combine(p, r, kChrfBeta);
      const double gain_r = ChrfStats::chrf_combine(p, r + d, kChrfBeta) - base;
      const double gain_p = ChrfStats::chrf_combine(p + d, r, kChrfBeta) - base;
      if (r < 3 * p) {
        ASSERT_GT(gain_r, gain_p) << p << " " << r;
      } else {
        ASSERT_LT(gain_r, gain_p) << p << " " << r;
      }
    }
}

Lines random_corpus(gen::Rng& rng, std::size_t n, bool small_alphabet) {
  Lines out;
  for (std::size_t i = 0; i < n; ++i) {
    std::string line;
    const int k = std::uniform_int_distribution<int>(0, 9)(rng);
    for (int j = 0; j < k; ++j) {
      if (j) line += ' ';
      line += small_alphabet ? gen::random_small_word(rng, 3) : gen::random_unit(rng, 1, 4);
    }
    out.push_back(line);
  }
  return out;
}

TEST(MetricsOracleTest, RandomCorpora) {
  gen::Rng rng(71);
  for (int iter = 0; iter < 200; ++iter) {
    const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 6)(rng);
    const bool small = iter % 3 != 0;
    const Lines hyp = random_corpus(rng, n, small);
    Lines ref = random_corpus(rng, n, small);
    // Share some lines so BLEU is often nonzero.
    for (std::size_t i = 0; i < n; ++i)
      if (std::bernoulli_distribution(0.4)(rng)) ref[i] = hyp[i];
    ASSERT_NEAR(bleu_of(hyp, ref), oracle::bleu(split_all(hyp), split_all(ref)), 1e-9);
    ASSERT_NEAR(chrf_of(hyp, ref), oracle::chrf3(hyp, ref), 1e-9);
  }
}

TEST(MetricsPropertyTest, IdenticalRandomCorpora) {
  gen::Rng rng(73);
  for (int iter = 0; iter < 100; ++iter) {
    Lines c = random_corpus(rng, 5, false);
    c.push_back("w1 w2 w3 w4");
    EXPECT_NEAR(bleu_of(c, c), 100.0, 1e-9);
    EXPECT_NEAR(chrf_of(c, c), 100.0, 1e-9);
  }
}

TEST(MetricsPropertyTest, PermutationInvariance) {
  gen::Rng rng(79);
  for (int iter = 0; iter < 100; ++iter) {
    const Lines hyp = random_corpus(rng, 8, true);
    const Lines ref = random_corpus(rng, 8, true);
    std::vector<std::size_t> order(hyp.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::shuffle(order.begin(), order.end(), rng);
    Lines h2, r2;
    for (auto i : order) {
      h2.push_back(hyp[i]);
      r2.push_back(ref[i]);
    }
    ASSERT_NEAR(bleu_of(hyp, ref), bleu_of(h2, r2), 1e-9);
    ASSERT_NEAR(chrf_of(hyp, ref), chrf_of(h2, r2), 1e-9);
  }
}

TEST(MetricsPropertyTest, ScoresInRange) {
  gen::Rng rng(83);
  for (int iter = 0; iter < 200; ++iter) {
    const Lines hyp = random_corpus(rng, 4, true);
    const Lines ref = random_corpus(rng, 4, true);
    const double b = bleu_of(hyp, ref), c = chrf_of(hyp, ref);
    ASSERT_GE(b, 0.0);
    ASSERT_LE(b, 100.0 + 1e-9);
    ASSERT_GE(c, 0.0);
    ASSERT_LE(c, 100.0 + 1e-9);
  }
}

}  // namespace
}  // namespace morphseg
