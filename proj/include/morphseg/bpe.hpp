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

// Character-level byte pair encoding over frequency-weighted dictionaries.
//
// Words start as sequences of code points. The last symbol of a word carries
// an end-of-word flag, so "b" at the end of a word and "b" inside a word are
// different symbols. The learner repeatedly merges the adjacent pair with the
// highest weighted count. Ties go to the smallest pair, comparing the left
// symbols first and then the right ones. Symbols compare by text (UTF-8 byte
// order, which equals code point order) and then by flag, unflagged first.
//
// Applying a model replays its merges in order. Each merge rewrites every
// occurrence of its pair in one left-to-right pass, so "aaa" under (a, a)
// becomes "aa a".

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <ranges>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "morphseg/error.hpp"
#include "morphseg/morpho_model.hpp"
#include "morphseg/text.hpp"

namespace morphseg {

inline constexpr std::uint64_t kDefaultMinPairFrequency = 2;

// Word type -> occurrence count. Iteration order is by word (byte order).
class FrequencyDictionary {
 public:
  using Map = std::map<std::string, std::uint64_t, std::less<>>;

  void add(std::string_view word, std::uint64_t count = 1) {
    if (word.empty()) throw std::invalid_argument("empty dictionary entry");
    if (text::has_space(word))
      throw std::invalid_argument("dictionary entry contains whitespace");
    if (count == 0) throw std::invalid_argument("dictionary count must be >= 1");
    auto it = entries_.find(word);
    if (it == entries_.end())
      entries_.emplace(std::string(word), count);
    else
      it->second += count;
  }

  void merge(const FrequencyDictionary& other) {
    for (const auto& [word, count] : other.entries_) add(word, count);
  }

  std::uint64_t count(std::string_view word) const {
    auto it = entries_.find(word);
    return it == entries_.end() ? 0 : it->second;
  }

  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

  std::uint64_t total() const {
    std::uint64_t n = 0;
    for (const auto& [word, count] : entries_) n += count;
    return n;
  }

  friend bool operator==(const FrequencyDictionary&,
                         const FrequencyDictionary&) = default;

 private:
  Map entries_;
};

template <std::ranges::input_range Corpus>
  requires std::convertible_to<std::ranges::range_reference_t<Corpus>,
                               const RawSentence&>
FrequencyDictionary build_dictionary(Corpus&& corpus) {
  FrequencyDictionary dict;
  for (const RawSentence& sentence : corpus)
    for (const auto& token : sentence.tokens) dict.add(token);
  return dict;
}

// Streams whitespace-delimited tokens line by line.
inline FrequencyDictionary build_dictionary(std::istream& in) {
  FrequencyDictionary dict;
  std::string line;
  while (std::getline(in, line))
    text::for_each_token(line, [&](std::string_view tok) { dict.add(tok); });
  return dict;
}

struct Symbol {
  std::string text;
  bool end_of_word = false;

  friend bool operator==(const Symbol&, const Symbol&) = default;
  friend auto operator<=>(const Symbol&, const Symbol&) = default;
};

struct MergeRule {
  Symbol left;
  Symbol right;

  Symbol merged() const {
    return Symbol{left.text + right.text, right.end_of_word};
  }

  friend bool operator==(const MergeRule&, const MergeRule&) = default;
  friend auto operator<=>(const MergeRule&, const MergeRule&) = default;
};

// Result of segmenting one word. The end-of-word flag of the final unit is
// implied and never part of the text.
struct SymbolSequence {
  std::vector<std::string> units;

  std::string joined() const {
    std::string out;
    for (const auto& u : units) out += u;
    return out;
  }

  friend bool operator==(const SymbolSequence&,
                         const SymbolSequence&) = default;
};

namespace detail {

struct SymbolHash {
  std::size_t operator()(const Symbol& s) const noexcept {
    return std::hash<std::string>{}(s.text) * 2 + (s.end_of_word ? 1 : 0);
  }
};

struct SymbolPairHash {
  std::size_t operator()(const std::pair<Symbol, Symbol>& p) const noexcept {
    const std::size_t a = SymbolHash{}(p.first);
    const std::size_t b = SymbolHash{}(p.second);
    return a ^ (b + 0x9e3779b97f4a7c15ULL + (a << 6) + (a >> 2));
  }
};

inline std::vector<Symbol> initial_symbols(std::string_view word) {
  std::vector<Symbol> out;
  for (auto& cp : text::split_code_points(word))
    out.push_back(Symbol{std::move(cp), false});
  if (!out.empty()) out.back().end_of_word = true;
  return out;
}

}  // namespace detail

// Ordered merge table. Immutable once constructed.
class BpeModel {
 public:
  static constexpr int kFormatVersion = 1;

  BpeModel() = default;

  explicit BpeModel(std::vector<MergeRule> merges) : merges_(std::move(merges)) {
    ranks_.reserve(merges_.size());
    for (std::size_t i = 0; i < merges_.size(); ++i) {
      const auto& rule = merges_[i];
      if (rule.left.text.empty() || rule.right.text.empty())
        throw std::invalid_argument("merge rule with empty symbol");
      if (rule.left.end_of_word)
        throw std::invalid_argument("left symbol of a merge cannot end a word");
      if (!ranks_.emplace(std::pair{rule.left, rule.right}, i).second)
        throw std::invalid_argument("duplicate merge rule '" + rule.left.text +
                                    " " + rule.right.text + "'");
    }
  }

  const std::vector<MergeRule>& merges() const { return merges_; }
  std::size_t size() const { return merges_.size(); }
  bool empty() const { return merges_.empty(); }
  int version() const { return kFormatVersion; }

  // The first min(k, size()) merges.
  BpeModel prefix(std::size_t k) const {
    k = std::min(k, merges_.size());
    return BpeModel(std::vector<MergeRule>(merges_.begin(),
                                           merges_.begin() + k));
  }

  // Rank of the rule merging (left, right), or npos.
  std::size_t rank(const Symbol& left, const Symbol& right) const {
    auto it = ranks_.find(std::pair{left, right});
    return it == ranks_.end() ? npos : it->second;
  }

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  friend bool operator==(const BpeModel& a, const BpeModel& b) {
    return a.merges_ == b.merges_;
  }

 private:
  std::vector<MergeRule> merges_;
  std::unordered_map<std::pair<Symbol, Symbol>, std::size_t,
                     detail::SymbolPairHash>
      ranks_;
};

namespace detail {

// Applies merges to `symbols` in model order. Equivalent to walking the whole
// merge list once, but only visits ranks whose pair is present.
inline void apply_merges(const BpeModel& model, std::vector<Symbol>& symbols) {
  std::size_t applied = BpeModel::npos;
  while (symbols.size() > 1) {
    std::size_t best = BpeModel::npos;
    for (std::size_t i = 0; i + 1 < symbols.size(); ++i) {
      const std::size_t r = model.rank(symbols[i], symbols[i + 1]);
      if (r == BpeModel::npos) continue;
      if (applied != BpeModel::npos && r <= applied) continue;
      best = std::min(best, r);
    }
    if (best == BpeModel::npos) break;
    const MergeRule& rule = model.merges()[best];
    std::vector<Symbol> next;
    next.reserve(symbols.size());
    for (std::size_t i = 0; i < symbols.size();) {
      if (i + 1 < symbols.size() && symbols[i] == rule.left &&
          symbols[i + 1] == rule.right) {
        next.push_back(rule.merged());
        i += 2;
      } else {
        next.push_back(std::move(symbols[i]));
        ++i;
      }
    }
    symbols = std::move(next);
    applied = best;
  }
}

}  // namespace detail

inline SymbolSequence apply_bpe(const BpeModel& model, std::string_view word) {
  if (word.empty()) throw std::invalid_argument("cannot segment an empty word");
  if (text::has_space(word))
    throw std::invalid_argument("word contains whitespace");
  auto symbols = detail::initial_symbols(word);
  detail::apply_merges(model, symbols);
  SymbolSequence out;
  out.units.reserve(symbols.size());
  for (auto& s : symbols) out.units.push_back(std::move(s.text));
  return out;
}

// Memoizing front end for segmenting large corpora. Not thread-safe; use one
// per thread.
class CachedBpe {
 public:
  explicit CachedBpe(const BpeModel& model, std::size_t max_entries = 1 << 20)
      : model_(&model), max_entries_(max_entries) {}

  const SymbolSequence& operator()(const std::string& word) {
    if (auto it = cache_.find(word); it != cache_.end()) return it->second;
    if (cache_.size() >= max_entries_) cache_.clear();
    return cache_.emplace(word, apply_bpe(*model_, word)).first->second;
  }

  const BpeModel& model() const { return *model_; }

 private:
  const BpeModel* model_;
  std::size_t max_entries_;
  std::unordered_map<std::string, SymbolSequence> cache_;
};

struct LearnStats {
  std::size_t initial_symbol_types = 0;
  std::size_t final_symbol_types = 0;
};

namespace detail {

class BpeLearner {
 public:
  BpeLearner(const FrequencyDictionary& dict, std::uint64_t min_pair_frequency)
      : min_pair_frequency_(std::max<std::uint64_t>(min_pair_frequency, 1)),
        queue_(QueueOrder{&symbols_}) {
    words_.reserve(dict.size());
    freqs_.reserve(dict.size());
    for (const auto& [word, count] : dict.entries()) {
      std::vector<std::uint32_t> ids;
      for (auto& s : initial_symbols(word)) ids.push_back(intern(std::move(s)));
      words_.push_back(std::move(ids));
      freqs_.push_back(static_cast<std::int64_t>(count));
    }
    for (std::uint32_t w = 0; w < words_.size(); ++w) {
      const auto& ids = words_[w];
      for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
        const auto key = pair_key(ids[i], ids[i + 1]);
        counts_[key] += freqs_[w];
        index_[key].push_back(w);
      }
    }
    for (const auto& [key, count] : counts_) queue_.insert({count, key});
    stamps_.assign(words_.size(), 0);
  }

  std::size_t symbol_types() const {
    std::unordered_set<std::uint32_t> seen;
    for (const auto& ids : words_) seen.insert(ids.begin(), ids.end());
    return seen.size();
  }

  // Performs one merge; returns false when no pair qualifies.
  bool step(std::vector<MergeRule>& out) {
    if (queue_.empty()) return false;
    const auto [count, key] = *queue_.begin();
    if (static_cast<std::uint64_t>(count) < min_pair_frequency_) return false;
    const std::uint32_t left = static_cast<std::uint32_t>(key >> 32);
    const std::uint32_t right = static_cast<std::uint32_t>(key & 0xffffffffu);
    if (!merged_.insert(key).second)
      throw std::logic_error("BPE learner selected an already merged pair");
    const MergeRule rule{symbols_[left], symbols_[right]};
    const std::uint32_t joined = intern(rule.merged());
    out.push_back(rule);

    touched_.clear();
    ++stamp_;
    auto candidates = std::move(index_[key]);
    index_.erase(key);
    for (const std::uint32_t w : candidates) {
      if (stamps_[w] == stamp_) continue;
      stamps_[w] = stamp_;
      rewrite_word(w, left, right, joined);
    }
    for (const auto& [k, before] : touched_) {
      auto it = counts_.find(k);
      const std::int64_t after = it == counts_.end() ? 0 : it->second;
      if (after == 0 && it != counts_.end()) counts_.erase(it);
      if (before == after) continue;
      if (before > 0) queue_.erase({before, k});
      if (after > 0) queue_.insert({after, k});
    }
    return true;
  }

 private:
  using Entry = std::pair<std::int64_t, std::uint64_t>;

  struct QueueOrder {
    const std::vector<Symbol>* symbols;
    bool operator()(const Entry& a, const Entry& b) const {
      if (a.first != b.first) return a.first > b.first;
      if (a.second == b.second) return false;
      const auto& s = *symbols;
      const Symbol& al = s[a.second >> 32];
      const Symbol& bl = s[b.second >> 32];
      if (auto c = al <=> bl; c != 0) return c < 0;
      return s[a.second & 0xffffffffu] < s[b.second & 0xffffffffu];
    }
  };

  static std::uint64_t pair_key(std::uint32_t a, std::uint32_t b) {
    return (static_cast<std::uint64_t>(a) << 32) | b;
  }

  std::uint32_t intern(Symbol s) {
    auto it = ids_.find(s);
    if (it != ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(symbols_.size());
    symbols_.push_back(s);
    ids_.emplace(std::move(s), id);
    return id;
  }

  void adjust(std::uint64_t key, std::int64_t delta) {
    auto [it, inserted] = counts_.try_emplace(key, 0);
    touched_.try_emplace(key, it->second);
    it->second += delta;
  }

  void rewrite_word(std::uint32_t w, std::uint32_t left, std::uint32_t right,
                    std::uint32_t joined) {
    auto& ids = words_[w];
    bool present = false;
    for (std::size_t i = 0; i + 1 < ids.size(); ++i)
      if (ids[i] == left && ids[i + 1] == right) {
        present = true;
        break;
      }
    if (!present) return;

    const std::int64_t f = freqs_[w];
    for (std::size_t i = 0; i + 1 < ids.size(); ++i)
      adjust(pair_key(ids[i], ids[i + 1]), -f);

    std::vector<std::uint32_t> next;
    next.reserve(ids.size());
    for (std::size_t i = 0; i < ids.size();) {
      if (i + 1 < ids.size() && ids[i] == left && ids[i + 1] == right) {
        next.push_back(joined);
        i += 2;
      } else {
        next.push_back(ids[i]);
        ++i;
      }
    }
    ids = std::move(next);

    for (std::size_t i = 0; i + 1 < ids.size(); ++i) {
      const auto k = pair_key(ids[i], ids[i + 1]);
      adjust(k, f);
      if (ids[i] == joined || ids[i + 1] == joined) index_[k].push_back(w);
    }
  }

  std::uint64_t min_pair_frequency_;
  std::vector<Symbol> symbols_;
  std::unordered_map<Symbol, std::uint32_t, SymbolHash> ids_;
  std::vector<std::vector<std::uint32_t>> words_;
  std::vector<std::int64_t> freqs_;
  std::unordered_map<std::uint64_t, std::int64_t> counts_;
  std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> index_;
  std::set<Entry, QueueOrder> queue_;
  std::unordered_map<std::uint64_t, std::int64_t> touched_;
  std::unordered_set<std::uint64_t> merged_;
  std::vector<std::uint32_t> stamps_;
  std::uint32_t stamp_ = 0;
};

}  // namespace detail

inline BpeModel learn_bpe(const FrequencyDictionary& dict,
                          std::size_t num_merges,
                          std::uint64_t min_pair_frequency =
                              kDefaultMinPairFrequency,
                          LearnStats* stats = nullptr) {
  if (min_pair_frequency == 0)
    throw std::invalid_argument("min_pair_frequency must be positive");
  detail::BpeLearner learner(dict, min_pair_frequency);
  if (stats) stats->initial_symbol_types = learner.symbol_types();
  std::vector<MergeRule> merges;
  merges.reserve(num_merges);
  while (merges.size() < num_merges && learner.step(merges)) {
  }
  if (stats) stats->final_symbol_types = learner.symbol_types();
  return BpeModel(std::move(merges));
}

// Distinct symbols (flag included) over the dictionary after applying the
// model. With an empty model this is the initial character inventory.
inline std::size_t count_symbol_types(const BpeModel& model,
                                      const FrequencyDictionary& dict) {
  std::unordered_set<Symbol, detail::SymbolHash> seen;
  for (const auto& [word, count] : dict.entries()) {
    auto symbols = detail::initial_symbols(word);
    detail::apply_merges(model, symbols);
    for (auto& s : symbols) seen.insert(std::move(s));
  }
  return seen.size();
}

// Model file:
//
//   morphseg-bpe v1
//   k a
//   ka s
//   kasab a</w>
//
// One merge per line, left and right symbol separated by a single space.
// "</w>" after the right symbol marks the end-of-word flag. Inside symbols
// backslash and '<' are escaped with a backslash.

inline constexpr std::string_view kModelFormatName = "morphseg-bpe";
inline constexpr std::string_view kEndOfWordTag = "</w>";

namespace detail {

inline std::string encode_symbol(const Symbol& s) {
  std::string out;
  for (char c : s.text) {
    if (c == '\\' || c == '<') out += '\\';
    out += c;
  }
  if (s.end_of_word) out += kEndOfWordTag;
  return out;
}

inline Symbol decode_symbol(std::string_view field, std::size_t line_no) {
  Symbol s;
  for (std::size_t i = 0; i < field.size(); ++i) {
    const char c = field[i];
    if (c == '\\') {
      if (i + 1 == field.size())
        throw ModelFormatError("dangling escape", line_no);
      s.text += field[++i];
    } else if (c == '<') {
      if (field.substr(i) != kEndOfWordTag)
        throw ModelFormatError("unescaped '<'", line_no);
      s.end_of_word = true;
      break;
    } else {
      s.text += c;
    }
  }
  if (s.text.empty()) throw ModelFormatError("empty symbol", line_no);
  return s;
}

}  // namespace detail

inline void save_model(const BpeModel& model, std::ostream& out) {
  out << kModelFormatName << " v" << model.version() << '\n';
  for (const auto& rule : model.merges())
    out << detail::encode_symbol(rule.left) << ' '
        << detail::encode_symbol(rule.right) << '\n';
}

inline BpeModel load_model(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ModelFormatError("missing header", 1);
  const std::string expected_prefix = std::string(kModelFormatName) + " v";
  if (line.rfind(expected_prefix, 0) != 0)
    throw ModelFormatError("malformed header '" + line + "'", 1);
  const std::string version = line.substr(expected_prefix.size());
  if (version != std::to_string(BpeModel::kFormatVersion))
    throw ModelFormatError("unsupported model version '" + version + "'", 1);

  std::vector<MergeRule> merges;
  std::set<std::pair<Symbol, Symbol>> seen;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    const auto space = line.find(' ');
    if (space == std::string::npos || space == 0 ||
        line.find(' ', space + 1) != std::string::npos ||
        space + 1 == line.size() || line.find_first_of("\t\r") != line.npos)
      throw ModelFormatError("expected 'left right'", line_no);
    MergeRule rule{detail::decode_symbol(line.substr(0, space), line_no),
                   detail::decode_symbol(line.substr(space + 1), line_no)};
    if (rule.left.end_of_word)
      throw ModelFormatError("left symbol carries end-of-word tag", line_no);
    if (!seen.insert({rule.left, rule.right}).second)
      throw ModelFormatError("duplicate merge", line_no);
    merges.push_back(std::move(rule));
  }
  return BpeModel(std::move(merges));
}

}  // namespace morphseg
