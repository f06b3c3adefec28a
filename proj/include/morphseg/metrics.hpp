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

// Corpus-level translation metrics.
//
// bleu: case-sensitive, single reference, n = 1..4, no smoothing. Input is
// taken as already tokenized and split on whitespace only. Any order with
// no matches gives a score of 0.
//
// chrf3: character n-grams of order 1..6 with whitespace removed, precision
// and recall averaged over orders, combined with beta = 3.

#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "morphseg/text.hpp"

namespace morphseg {

inline constexpr int kBleuOrder = 4;
inline constexpr int kChrfOrder = 6;
inline constexpr double kChrfBeta = 3.0;

struct BleuStats {
  std::array<std::uint64_t, kBleuOrder> matched{};
  std::array<std::uint64_t, kBleuOrder> total{};
  std::uint64_t hyp_length = 0;
  std::uint64_t ref_length = 0;

  void add(const BleuStats& o) {
    for (int n = 0; n < kBleuOrder; ++n) {
      matched[n] += o.matched[n];
      total[n] += o.total[n];
    }
    hyp_length += o.hyp_length;
    ref_length += o.ref_length;
  }

  double brevity_penalty() const {
    if (hyp_length == 0) return 0.0;
    if (hyp_length >= ref_length) return 1.0;
    return std::exp(1.0 - static_cast<double>(ref_length) /
                              static_cast<double>(hyp_length));
  }

  // In [0, 100].
  double score() const {
    double log_sum = 0.0;
    for (int n = 0; n < kBleuOrder; ++n) {
      if (matched[n] == 0 || total[n] == 0) return 0.0;
      log_sum += std::log(static_cast<double>(matched[n]) /
                          static_cast<double>(total[n]));
    }
    return 100.0 * brevity_penalty() * std::exp(log_sum / kBleuOrder);
  }
};

namespace detail {

using NgramCounts = std::map<std::vector<std::string_view>, std::uint64_t>;

inline NgramCounts word_ngrams(std::span<const std::string> tokens, int n) {
  NgramCounts counts;
  const auto len = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + len <= tokens.size(); ++i) {
    std::vector<std::string_view> key(tokens.begin() + i,
                                      tokens.begin() + i + len);
    ++counts[std::move(key)];
  }
  return counts;
}

inline void check_lengths(std::size_t hyps, std::size_t refs) {
  if (hyps != refs)
    throw std::invalid_argument(
        "hypothesis and reference counts differ (" + std::to_string(hyps) +
        " vs " + std::to_string(refs) + ")");
}

}  // namespace detail

inline BleuStats bleu_sentence_stats(std::string_view hypothesis,
                                     std::string_view reference) {
  const auto hyp = text::split_whitespace(hypothesis);
  const auto ref = text::split_whitespace(reference);
  BleuStats s;
  s.hyp_length = hyp.size();
  s.ref_length = ref.size();
  for (int n = 1; n <= kBleuOrder; ++n) {
    const auto h = detail::word_ngrams(hyp, n);
    const auto r = detail::word_ngrams(ref, n);
    for (const auto& [gram, count] : h) {
      s.total[n - 1] += count;
      if (auto it = r.find(gram); it != r.end())
        s.matched[n - 1] += std::min(count, it->second);
    }
  }
  return s;
}

inline BleuStats bleu_stats(std::span<const std::string> hypotheses,
                            std::span<const std::string> references) {
  detail::check_lengths(hypotheses.size(), references.size());
  BleuStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i)
    total.add(bleu_sentence_stats(hypotheses[i], references[i]));
  return total;
}

inline double bleu(std::span<const std::string> hypotheses,
                   std::span<const std::string> references) {
  return bleu_stats(hypotheses, references).score();
}

struct ChrfStats {
  std::array<std::uint64_t, kChrfOrder> matched{};
  std::array<std::uint64_t, kChrfOrder> hyp_total{};
  std::array<std::uint64_t, kChrfOrder> ref_total{};

  void add(const ChrfStats& o) {
    for (int n = 0; n < kChrfOrder; ++n) {
      matched[n] += o.matched[n];
      hyp_total[n] += o.hyp_total[n];
      ref_total[n] += o.ref_total[n];
    }
  }

  // Orders beyond the longest line on both sides carry no information and
  // are left out of the average. An order present on only one side counts
  // with precision or recall 0 for the missing side.
  int precision_recall(double& precision, double& recall) const {
    precision = recall = 0.0;
    int orders = 0;
    for (int n = 0; n < kChrfOrder; ++n) {
      if (hyp_total[n] == 0 && ref_total[n] == 0) continue;
      ++orders;
      if (hyp_total[n])
        precision += static_cast<double>(matched[n]) /
                     static_cast<double>(hyp_total[n]);
      if (ref_total[n])
        recall += static_cast<double>(matched[n]) /
                  static_cast<double>(ref_total[n]);
    }
    if (orders) {
      precision /= orders;
      recall /= orders;
    }
    return orders;
  }

  // In [0, 100].
  double score(double beta = kChrfBeta) const {
    double p = 0.0;
    double r = 0.0;
    precision_recall(p, r);
    return 100.0 * chrf_combine(p, r, beta);
  }

  static double chrf_combine(double precision, double recall, double beta) {
    const double b2 = beta * beta;
    const double denom = b2 * precision + recall;
    if (denom <= 0.0) return 0.0;
    return (1.0 + b2) * precision * recall / denom;
  }
};

namespace detail {

inline std::vector<std::string> chrf_characters(std::string_view line) {
  std::string stripped;
  stripped.reserve(line.size());
  for (char c : line)
    if (!text::is_space(c)) stripped += c;
  return text::split_code_points(stripped);
}

inline std::unordered_map<std::string, std::uint64_t> char_ngrams(
    const std::vector<std::string>& chars, int n) {
  std::unordered_map<std::string, std::uint64_t> counts;
  const auto len = static_cast<std::size_t>(n);
  for (std::size_t i = 0; i + len <= chars.size(); ++i) {
    std::string key;
    for (std::size_t j = i; j < i + len; ++j) key += chars[j];
    ++counts[std::move(key)];
  }
  return counts;
}

}  // namespace detail

inline ChrfStats chrf_sentence_stats(std::string_view hypothesis,
                                     std::string_view reference) {
  const auto hyp = detail::chrf_characters(hypothesis);
  const auto ref = detail::chrf_characters(reference);
  ChrfStats s;
  for (int n = 1; n <= kChrfOrder; ++n) {
    const auto h = detail::char_ngrams(hyp, n);
    const auto r = detail::char_ngrams(ref, n);
    for (const auto& [gram, count] : h) {
      s.hyp_total[n - 1] += count;
      if (auto it = r.find(gram); it != r.end())
        s.matched[n - 1] += std::min(count, it->second);
    }
    for (const auto& [gram, count] : r) s.ref_total[n - 1] += count;
  }
  return s;
}

inline ChrfStats chrf_stats(std::span<const std::string> hypotheses,
                            std::span<const std::string> references) {
  detail::check_lengths(hypotheses.size(), references.size());
  ChrfStats total;
  for (std::size_t i = 0; i < hypotheses.size(); ++i)
    total.add(chrf_sentence_stats(hypotheses[i], references[i]));
  return total;
}

inline double chrf3(std::span<const std::string> hypotheses,
                    std::span<const std::string> references) {
  return chrf_stats(hypotheses, references).score(kChrfBeta);
}

}  // namespace morphseg
