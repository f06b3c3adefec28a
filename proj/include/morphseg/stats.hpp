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

// Corpus statistics: token and type counts, average sentence length, stem
// and suffix inventories, and vocabulary size as a function of merge count.

#pragma once

#include <algorithm>
#include <cstdint>
#include <istream>
#include <ranges>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "morphseg/bpe.hpp"
#include "morphseg/morpho_model.hpp"
#include "morphseg/strategies.hpp"
#include "morphseg/text.hpp"

namespace morphseg {

struct CorpusStats {
  std::uint64_t sentences = 0;
  std::uint64_t tokens = 0;
  std::uint64_t vocabulary = 0;

  // Undefined for an empty corpus; the accessors below then report 0.
  bool has_average() const { return sentences > 0; }

  double average_length() const {
    return has_average() ? static_cast<double>(tokens) /
                               static_cast<double>(sentences)
                         : 0.0;
  }

  // tokens / sentences rounded half up, computed exactly.
  std::uint64_t average_length_rounded() const {
    if (!has_average()) return 0;
    return (2 * tokens + sentences) / (2 * sentences);
  }

  // Average length in tenths, rounded half up ("18.7" is 187).
  std::uint64_t average_length_tenths() const {
    if (!has_average()) return 0;
    return (20 * tokens + sentences) / (2 * sentences);
  }

  std::string average_length_one_decimal() const {
    const auto t = average_length_tenths();
    return std::to_string(t / 10) + "." + std::to_string(t % 10);
  }

  friend bool operator==(const CorpusStats&, const CorpusStats&) = default;
};

// Streaming counter. Accumulators over disjoint shards can be merged and
// give the same result as one sequential pass.
class StatsAccumulator {
 public:
  void add_line(std::string_view line) {
    ++sentences_;
    text::for_each_token(line, [&](std::string_view tok) {
      ++tokens_;
      types_.emplace(tok);
    });
  }

  void merge(const StatsAccumulator& other) {
    sentences_ += other.sentences_;
    tokens_ += other.tokens_;
    types_.insert(other.types_.begin(), other.types_.end());
  }

  CorpusStats result() const {
    return CorpusStats{sentences_, tokens_, types_.size()};
  }

 private:
  std::uint64_t sentences_ = 0;
  std::uint64_t tokens_ = 0;
  std::unordered_set<std::string> types_;
};

// Every line counts as one sentence, including empty ones.
template <std::ranges::input_range Lines>
  requires std::convertible_to<std::ranges::range_reference_t<Lines>,
                               std::string_view>
CorpusStats compute_stats(Lines&& lines) {
  StatsAccumulator acc;
  for (std::string_view line : lines) acc.add_line(line);
  return acc.result();
}

inline CorpusStats compute_stats(std::istream& in) {
  StatsAccumulator acc;
  std::string line;
  while (std::getline(in, line)) acc.add_line(line);
  return acc.result();
}

struct MorphStats {
  std::uint64_t stem_types = 0;
  std::uint64_t combined_suffix_types = 0;
  std::uint64_t singular_suffix_types = 0;

  friend bool operator==(const MorphStats&, const MorphStats&) = default;
};

class MorphStatsAccumulator {
 public:
  void add(const AnalyzedSentence& s) {
    for (const auto& w : s.words) add(w);
  }

  void add(const MorphWord& w) {
    stems_.insert(w.stem());
    if (w.has_suffixes()) combined_.insert(w.combined_suffix());
    singular_.insert(w.suffixes().begin(), w.suffixes().end());
  }

  void merge(const MorphStatsAccumulator& other) {
    stems_.insert(other.stems_.begin(), other.stems_.end());
    combined_.insert(other.combined_.begin(), other.combined_.end());
    singular_.insert(other.singular_.begin(), other.singular_.end());
  }

  MorphStats result() const {
    return MorphStats{stems_.size(), combined_.size(), singular_.size()};
  }

  const std::unordered_set<std::string>& combined_suffixes() const {
    return combined_;
  }
  const std::unordered_set<std::string>& singular_suffixes() const {
    return singular_;
  }

 private:
  std::unordered_set<std::string> stems_;
  std::unordered_set<std::string> combined_;
  std::unordered_set<std::string> singular_;
};

template <std::ranges::input_range Corpus>
  requires std::convertible_to<std::ranges::range_reference_t<Corpus>,
                               const AnalyzedSentence&>
MorphStats compute_morph_stats(Corpus&& corpus) {
  MorphStatsAccumulator acc;
  for (const AnalyzedSentence& s : corpus) acc.add(s);
  return acc.result();
}

// ---------------------------------------------------------------------------
// Merge-count sweep

// What a sweep segments. For BPE the learning dictionary is the word
// dictionary and its keys are what gets segmented. For BPE-SCS and BPE-SSS
// the learning dictionary holds stems and `words` lists the distinct
// analyzed word types to segment.
struct SweepContext {
  StrategyKind strategy = StrategyKind::BPE;
  std::vector<MorphWord> words;
  MarkerConfig markers;
  std::uint64_t min_pair_frequency = kDefaultMinPairFrequency;

  template <std::ranges::input_range Corpus>
  static SweepContext from_analyzed(StrategyKind strategy, Corpus&& corpus) {
    std::set<MorphWord> distinct;
    for (const AnalyzedSentence& s : corpus)
      distinct.insert(s.words.begin(), s.words.end());
    SweepContext ctx;
    ctx.strategy = strategy;
    ctx.words.assign(distinct.begin(), distinct.end());
    return ctx;
  }
};

struct SweepRow {
  std::size_t merges_requested = 0;
  std::size_t merges_used = 0;
  // Distinct emitted token types, markers included.
  std::size_t vocabulary = 0;
  // Distinct BPE symbols (end-of-word flag included) over the learning
  // dictionary.
  std::size_t symbol_types = 0;

  friend bool operator==(const SweepRow&, const SweepRow&) = default;
};

// Distinct rendered tokens when segmenting the context's material with
// `model`.
inline std::size_t emitted_vocabulary(const BpeModel& model,
                                      const FrequencyDictionary& dict,
                                      const SweepContext& ctx) {
  std::unordered_set<std::string> vocab;
  const auto add_all = [&](const TokenList& tokens) {
    for (const auto& t : tokens) vocab.insert(t.render(ctx.markers));
  };
  if (ctx.strategy == StrategyKind::BPE) {
    for (const auto& [word, count] : dict.entries())
      add_all(segment_word_bpe(model, word, ctx.markers));
  } else if (ctx.strategy == StrategyKind::BPE_SCS ||
             ctx.strategy == StrategyKind::BPE_SSS) {
    CachedBpe stems(model);
    for (const auto& w : ctx.words) {
      ctx.markers.check_clean(w.stem());
      const SymbolSequence& pieces = stems(w.stem());
      add_all(ctx.strategy == StrategyKind::BPE_SCS
                  ? segment_word_bpe_scs(pieces, w, ctx.markers)
                  : segment_word_bpe_sss(pieces, w, ctx.markers));
    }
  } else {
    throw std::invalid_argument("sweep needs a BPE-bearing strategy");
  }
  return vocab.size();
}

// Learns one model with the largest requested merge count and evaluates
// every count by truncating it. Truncation is exact: the learner is greedy
// and deterministic, so the first k merges of a longer run are the k-merge
// model.
inline std::vector<SweepRow> sweep_merges(const FrequencyDictionary& dict,
                                          std::span<const std::size_t> counts,
                                          const SweepContext& ctx) {
  if (!uses_bpe(ctx.strategy))
    throw std::invalid_argument("sweep needs a BPE-bearing strategy");
  if (!std::is_sorted(counts.begin(), counts.end()))
    throw std::invalid_argument("merge counts must be sorted ascending");
  ctx.markers.validate();
  std::vector<SweepRow> rows;
  if (counts.empty()) return rows;
  const BpeModel full = learn_bpe(dict, counts.back(), ctx.min_pair_frequency);
  for (const std::size_t k : counts) {
    const BpeModel model = full.prefix(k);
    rows.push_back(SweepRow{k, model.size(),
                            emitted_vocabulary(model, dict, ctx),
                            count_symbol_types(model, dict)});
  }
  return rows;
}

// ---------------------------------------------------------------------------
// Plain-text reports

inline std::string format_count(std::uint64_t n) {
  std::string digits = std::to_string(n);
  std::string out;
  const std::size_t lead = digits.size() % 3;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (i && (i + 3 - lead) % 3 == 0) out += ',';
    out += digits[i];
  }
  return out;
}

namespace detail {

inline std::string pad_left(const std::string& s, std::size_t width) {
  const std::size_t n = text::count_code_points(s);
  return n >= width ? s : std::string(width - n, ' ') + s;
}

inline std::string pad_right(const std::string& s, std::size_t width) {
  const std::size_t n = text::count_code_points(s);
  return n >= width ? s : s + std::string(width - n, ' ');
}

inline std::string format_table(const std::vector<std::string>& header,
                                const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> widths(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) {
    widths[c] = text::count_code_points(header[c]);
    for (const auto& r : rows)
      widths[c] = std::max(widths[c], text::count_code_points(r[c]));
  }
  std::string out;
  const auto emit = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      if (c) out += "  ";
      out += c == 0 ? pad_right(r[c], widths[c]) : pad_left(r[c], widths[c]);
    }
    out += '\n';
  };
  emit(header);
  for (const auto& r : rows) emit(r);
  return out;
}

}  // namespace detail

struct LabeledStats {
  std::string label;
  CorpusStats stats;
};

// Columns: label, tokens, vocabulary, rounded average length.
inline std::string format_stats_table(std::span<const LabeledStats> rows) {
  std::vector<std::vector<std::string>> body;
  for (const auto& r : rows)
    body.push_back({r.label, format_count(r.stats.tokens),
                    format_count(r.stats.vocabulary),
                    std::to_string(r.stats.average_length_rounded())});
  return detail::format_table({"Data", "Tokens", "Vocabulary", "Average Length"},
                              body);
}

inline std::string format_morph_table(const std::string& label,
                                      const CorpusStats& c,
                                      const MorphStats& m) {
  return detail::format_table(
      {"Data", label},
      {{"Sentences", format_count(c.sentences)},
       {"Tokens", format_count(c.tokens)},
       {"Vocabulary", format_count(c.vocabulary)},
       {"Stem", format_count(m.stem_types)},
       {"Combined Suffix", format_count(m.combined_suffix_types)},
       {"Singular Suffix", format_count(m.singular_suffix_types)}});
}

inline std::string format_sweep_table(std::span<const SweepRow> rows) {
  std::vector<std::vector<std::string>> body;
  for (const auto& r : rows) {
    std::string k = r.merges_requested % 1000 == 0 && r.merges_requested
                        ? std::to_string(r.merges_requested / 1000) + "K"
                        : std::to_string(r.merges_requested);
    body.push_back({k, format_count(r.vocabulary)});
  }
  return detail::format_table({"Merge Operation", "Vocabulary"}, body);
}

}  // namespace morphseg
