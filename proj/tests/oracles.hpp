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

// Slow reference implementations used only by the tests. They share types
// with the library but none of its algorithms.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "morphseg/bpe.hpp"
#include "morphseg/morpho_model.hpp"
#include "morphseg/stats.hpp"

namespace morphseg::oracle {

inline std::vector<std::string> code_points(const std::string& s) {
  // Independent UTF-8 splitter: continuation bytes are 10xxxxxx.
  std::vector<std::string> out;
  for (unsigned char c : s) {
    if ((c & 0xC0) == 0x80 && !out.empty())
      out.back() += static_cast<char>(c);
    else
      out.emplace_back(1, static_cast<char>(c));
  }
  return out;
}

inline std::vector<Symbol> word_symbols(const std::string& word) {
  std::vector<Symbol> out;
  for (auto& cp : code_points(word)) out.push_back({cp, false});
  out.back().end_of_word = true;
  return out;
}

inline void merge_pass(std::vector<Symbol>& syms, const MergeRule& rule) {
  std::vector<Symbol> next;
  std::size_t i = 0;
  while (i < syms.size()) {
    if (i + 1 < syms.size() && syms[i] == rule.left &&
        syms[i + 1] == rule.right) {
      next.push_back({rule.left.text + rule.right.text, rule.right.end_of_word});
      i += 2;
    } else {
      next.push_back(syms[i]);
      i += 1;
    }
  }
  syms = std::move(next);
}

// Recounts every pair from scratch on every iteration.
inline std::vector<MergeRule> learn(const FrequencyDictionary& dict,
                                    std::size_t num_merges,
                                    std::uint64_t min_freq) {
  std::vector<std::pair<std::vector<Symbol>, std::uint64_t>> words;
  for (const auto& [w, c] : dict.entries()) words.push_back({word_symbols(w), c});
  std::vector<MergeRule> merges;
  while (merges.size() < num_merges) {
    std::map<std::pair<Symbol, Symbol>, std::uint64_t> counts;
    for (const auto& [syms, c] : words)
      for (std::size_t i = 0; i + 1 < syms.size(); ++i)
        counts[{syms[i], syms[i + 1]}] += c;
    if (counts.empty()) break;
    // std::map iterates in ascending pair order, so the first maximum wins
    // ties.
    auto best = counts.begin();
    for (auto it = counts.begin(); it != counts.end(); ++it)
      if (it->second > best->second) best = it;
    if (best->second < min_freq) break;
    const MergeRule rule{best->first.first, best->first.second};
    merges.push_back(rule);
    for (auto& [syms, c] : words) merge_pass(syms, rule);
  }
  return merges;
}

// Walks the whole merge list once, in order.
inline std::vector<std::string> apply(const std::vector<MergeRule>& merges,
                                      const std::string& word) {
  auto syms = word_symbols(word);
  for (const auto& rule : merges) merge_pass(syms, rule);
  std::vector<std::string> out;
  for (auto& s : syms) out.push_back(s.text);
  return out;
}

inline std::map<std::string, std::uint64_t> recount_tokens(
    const std::vector<std::string>& lines) {
  std::map<std::string, std::uint64_t> counts;
  for (const auto& line : lines) {
    std::string cur;
    for (char c : line + " ") {
      if (c == ' ' || c == '\t') {
        if (!cur.empty()) ++counts[cur];
        cur.clear();
      } else {
        cur += c;
      }
    }
  }
  return counts;
}

inline CorpusStats recount_stats(const std::vector<std::string>& lines) {
  const auto counts = recount_tokens(lines);
  CorpusStats s;
  s.sentences = lines.size();
  for (const auto& [t, c] : counts) s.tokens += c;
  s.vocabulary = counts.size();
  return s;
}

inline MorphStats recount_morph(const std::vector<AnalyzedSentence>& corpus) {
  std::set<std::string> stems, combined, singular;
  for (const auto& s : corpus)
    for (const auto& w : s.words) {
      stems.insert(w.stem());
      std::string all;
      for (const auto& x : w.suffixes()) {
        singular.insert(x);
        all += x;
      }
      if (!all.empty()) combined.insert(all);
    }
  return MorphStats{stems.size(), combined.size(), singular.size()};
}

// BLEU from explicit n-gram lists with clipping by linear search.
inline double bleu(const std::vector<std::vector<std::string>>& hyps,
                   const std::vector<std::vector<std::string>>& refs) {
  double hyp_len = 0, ref_len = 0;
  double match[4] = {0, 0, 0, 0}, total[4] = {0, 0, 0, 0};
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    hyp_len += hyps[s].size();
    ref_len += refs[s].size();
    for (std::size_t n = 1; n <= 4; ++n) {
      std::vector<std::vector<std::string>> hg, rg;
      for (std::size_t i = 0; i + n <= hyps[s].size(); ++i)
        hg.emplace_back(hyps[s].begin() + i, hyps[s].begin() + i + n);
      for (std::size_t i = 0; i + n <= refs[s].size(); ++i)
        rg.emplace_back(refs[s].begin() + i, refs[s].begin() + i + n);
      std::vector<bool> used(rg.size(), false);
      for (const auto& g : hg) {
        total[n - 1] += 1;
        for (std::size_t j = 0; j < rg.size(); ++j)
          if (!used[j] && rg[j] == g) {
            used[j] = true;
            match[n - 1] += 1;
            break;
          }
      }
    }
  }
  double product = 1.0;
  for (int n = 0; n < 4; ++n) {
    if (total[n] == 0 || match[n] == 0) return 0.0;
    product *= match[n] / total[n];
  }
  const double bp = hyp_len == 0       ? 0.0
                    : hyp_len < ref_len ? std::exp(1.0 - ref_len / hyp_len)
                                        : 1.0;
  return 100.0 * bp * std::pow(product, 0.25);
}

// chrF with beta 3 from explicit character n-gram lists. Orders with no
// n-grams on either side are left out of the average.
inline double chrf3(const std::vector<std::string>& hyps,
                    const std::vector<std::string>& refs) {
  double match[6] = {}, htot[6] = {}, rtot[6] = {};
  for (std::size_t s = 0; s < hyps.size(); ++s) {
    std::string h, r;
    for (char c : hyps[s])
      if (c != ' ' && c != '\t') h += c;
    for (char c : refs[s])
      if (c != ' ' && c != '\t') r += c;
    const auto hc = code_points(h);
    const auto rc = code_points(r);
    for (std::size_t n = 1; n <= 6; ++n) {
      std::vector<std::vector<std::string>> hg, rg;
      for (std::size_t i = 0; i + n <= hc.size(); ++i)
        hg.emplace_back(hc.begin() + i, hc.begin() + i + n);
      for (std::size_t i = 0; i + n <= rc.size(); ++i)
        rg.emplace_back(rc.begin() + i, rc.begin() + i + n);
      htot[n - 1] += hg.size();
      rtot[n - 1] += rg.size();
      std::vector<bool> used(rg.size(), false);
      for (const auto& g : hg)
        for (std::size_t j = 0; j < rg.size(); ++j)
          if (!used[j] && rg[j] == g) {
            used[j] = true;
            match[n - 1] += 1;
            break;
          }
    }
  }
  double p = 0, r = 0;
  int orders = 0;
  for (int n = 0; n < 6; ++n) {
    if (htot[n] == 0 && rtot[n] == 0) continue;
    ++orders;
    if (htot[n] > 0) p += match[n] / htot[n];
    if (rtot[n] > 0) r += match[n] / rtot[n];
  }
  if (orders == 0) return 0.0;
  p /= orders;
  r /= orders;
  if (9 * p + r == 0) return 0.0;
  return 100.0 * 10 * p * r / (9 * p + r);
}

}  // namespace morphseg::oracle
