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

// Segmentation strategies and their boundary-marker grammar.
//
//   raw      küçük kasabasındayım
//   scs      küçük kasaba## sındayım$$
//   sss      küçük kasaba## sı$$ nda$$ yım$$
//   bpe      küçük kasaba@@ sın@@ dayım
//   bpe-scs  fa@@ ger@@ nes kasaba## sındayım$$
//   bpe-sss  fa@@ ger@@ nes kasaba## sı$$ nda$$ yım$$
//
// "##" follows a stem that BPE left whole and that has suffixes, "$$" follows
// every suffix unit and "@@" follows every non-final BPE subword. When BPE
// splits a stem its last piece carries no marker; the following "$$" unit
// still attaches to it when desegmenting.

#pragma once

#include <array>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "morphseg/bpe.hpp"
#include "morphseg/error.hpp"
#include "morphseg/morpho_model.hpp"
#include "morphseg/text.hpp"

namespace morphseg {

enum class MarkerKind { Plain, StemJoin, SuffixUnit, BpeContinuation };

struct MarkerConfig {
  std::string stem_join = "##";
  std::string suffix_unit = "$$";
  std::string bpe_continuation = "@@";

  const std::string& glyph(MarkerKind kind) const {
    static const std::string kNone;
    switch (kind) {
      case MarkerKind::StemJoin:
        return stem_join;
      case MarkerKind::SuffixUnit:
        return suffix_unit;
      case MarkerKind::BpeContinuation:
        return bpe_continuation;
      case MarkerKind::Plain:
        break;
    }
    return kNone;
  }

  std::array<const std::string*, 3> glyphs() const {
    return {&stem_join, &suffix_unit, &bpe_continuation};
  }

  // Glyphs must be non-empty, whitespace-free, and no glyph may be a suffix
  // of another, so that the marker on a token is always unambiguous.
  void validate() const {
    const auto all = glyphs();
    for (const auto* g : all) {
      if (g->empty()) throw std::invalid_argument("empty marker glyph");
      if (text::has_space(*g))
        throw std::invalid_argument("marker glyph contains whitespace");
    }
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = 0; j < all.size(); ++j)
        if (i != j && text::ends_with(*all[i], *all[j]))
          throw std::invalid_argument("marker glyphs '" + *all[i] + "' and '" +
                                      *all[j] + "' are ambiguous");
  }

  // Throws MarkerCollisionError if `s` contains any glyph.
  void check_clean(std::string_view s) const {
    for (const auto* g : glyphs())
      if (s.find(*g) != std::string_view::npos)
        throw MarkerCollisionError(std::string(s), *g);
  }

  friend bool operator==(const MarkerConfig&, const MarkerConfig&) = default;
};

struct MarkedToken {
  std::string text;
  MarkerKind marker = MarkerKind::Plain;

  std::string render(const MarkerConfig& markers) const {
    return text + markers.glyph(marker);
  }

  friend bool operator==(const MarkedToken&, const MarkedToken&) = default;
};

using TokenList = std::vector<MarkedToken>;

inline std::vector<std::string> render_tokens(std::span<const MarkedToken> tokens,
                                              const MarkerConfig& markers) {
  std::vector<std::string> out;
  out.reserve(tokens.size());
  for (const auto& t : tokens) out.push_back(t.render(markers));
  return out;
}

inline std::string render_line(std::span<const MarkedToken> tokens,
                               const MarkerConfig& markers) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out += ' ';
    out += tokens[i].text;
    out += markers.glyph(tokens[i].marker);
  }
  return out;
}

enum class StrategyKind { Raw, SCS, SSS, BPE, BPE_SCS, BPE_SSS };

inline constexpr bool uses_bpe(StrategyKind k) {
  return k == StrategyKind::BPE || k == StrategyKind::BPE_SCS ||
         k == StrategyKind::BPE_SSS;
}

inline constexpr bool uses_analysis(StrategyKind k) {
  return k != StrategyKind::Raw && k != StrategyKind::BPE;
}

inline std::string_view strategy_name(StrategyKind k) {
  switch (k) {
    case StrategyKind::Raw:
      return "raw";
    case StrategyKind::SCS:
      return "scs";
    case StrategyKind::SSS:
      return "sss";
    case StrategyKind::BPE:
      return "bpe";
    case StrategyKind::BPE_SCS:
      return "bpe-scs";
    case StrategyKind::BPE_SSS:
      return "bpe-sss";
  }
  return "?";
}

inline StrategyKind parse_strategy_name(std::string_view name) {
  for (auto k : {StrategyKind::Raw, StrategyKind::SCS, StrategyKind::SSS,
                 StrategyKind::BPE, StrategyKind::BPE_SCS,
                 StrategyKind::BPE_SSS})
    if (strategy_name(k) == name) return k;
  throw std::invalid_argument("unknown strategy '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Word-level strategies

inline TokenList segment_word_scs(const MorphWord& w,
                                  const MarkerConfig& markers = {}) {
  markers.check_clean(w.stem());
  if (!w.has_suffixes()) return {{w.stem(), MarkerKind::Plain}};
  std::string suffix = w.combined_suffix();
  markers.check_clean(suffix);
  return {{w.stem(), MarkerKind::StemJoin},
          {std::move(suffix), MarkerKind::SuffixUnit}};
}

inline TokenList segment_word_sss(const MorphWord& w,
                                  const MarkerConfig& markers = {}) {
  markers.check_clean(w.stem());
  if (!w.has_suffixes()) return {{w.stem(), MarkerKind::Plain}};
  TokenList out;
  out.reserve(1 + w.suffixes().size());
  out.push_back({w.stem(), MarkerKind::StemJoin});
  for (const auto& s : w.suffixes()) {
    markers.check_clean(s);
    out.push_back({s, MarkerKind::SuffixUnit});
  }
  return out;
}

namespace detail {

inline void append_bpe_pieces(TokenList& out, const SymbolSequence& pieces,
                              MarkerKind single_marker) {
  if (pieces.units.size() == 1) {
    out.push_back({pieces.units.front(), single_marker});
    return;
  }
  for (std::size_t i = 0; i < pieces.units.size(); ++i)
    out.push_back({pieces.units[i], i + 1 < pieces.units.size()
                                        ? MarkerKind::BpeContinuation
                                        : MarkerKind::Plain});
}

inline TokenList segment_stem_bpe(const SymbolSequence& pieces,
                                  const MorphWord& w) {
  TokenList out;
  out.reserve(pieces.units.size() + w.suffixes().size());
  append_bpe_pieces(out, pieces,
                    w.has_suffixes() ? MarkerKind::StemJoin : MarkerKind::Plain);
  return out;
}

}  // namespace detail

inline TokenList segment_word_bpe(const SymbolSequence& pieces) {
  TokenList out;
  out.reserve(pieces.units.size());
  detail::append_bpe_pieces(out, pieces, MarkerKind::Plain);
  return out;
}

inline TokenList segment_word_bpe(const BpeModel& model,
                                  std::string_view surface,
                                  const MarkerConfig& markers = {}) {
  markers.check_clean(surface);
  return segment_word_bpe(apply_bpe(model, surface));
}

inline TokenList segment_word_bpe_scs(const SymbolSequence& stem_pieces,
                                      const MorphWord& w,
                                      const MarkerConfig& markers = {}) {
  markers.check_clean(w.stem());
  TokenList out = detail::segment_stem_bpe(stem_pieces, w);
  if (w.has_suffixes()) {
    std::string suffix = w.combined_suffix();
    markers.check_clean(suffix);
    out.push_back({std::move(suffix), MarkerKind::SuffixUnit});
  }
  return out;
}

inline TokenList segment_word_bpe_scs(const BpeModel& model, const MorphWord& w,
                                      const MarkerConfig& markers = {}) {
  markers.check_clean(w.stem());
  return segment_word_bpe_scs(apply_bpe(model, w.stem()), w, markers);
}

inline TokenList segment_word_bpe_sss(const SymbolSequence& stem_pieces,
                                      const MorphWord& w,
                                      const MarkerConfig& markers = {}) {
  markers.check_clean(w.stem());
  TokenList out = detail::segment_stem_bpe(stem_pieces, w);
  for (const auto& s : w.suffixes()) {
    markers.check_clean(s);
    out.push_back({s, MarkerKind::SuffixUnit});
  }
  return out;
}

inline TokenList segment_word_bpe_sss(const BpeModel& model, const MorphWord& w,
                                      const MarkerConfig& markers = {}) {
  markers.check_clean(w.stem());
  return segment_word_bpe_sss(apply_bpe(model, w.stem()), w, markers);
}

// ---------------------------------------------------------------------------
// Sentence level

// A strategy plus the model it needs. BPE-bearing kinds require a model,
// the others reject one.
class Strategy {
 public:
  explicit Strategy(StrategyKind kind,
                    std::shared_ptr<const BpeModel> model = nullptr,
                    MarkerConfig markers = {})
      : kind_(kind), model_(std::move(model)), markers_(std::move(markers)) {
    if (uses_bpe(kind_) && !model_)
      throw std::invalid_argument("strategy '" +
                                  std::string(strategy_name(kind_)) +
                                  "' requires a BPE model");
    if (!uses_bpe(kind_) && model_)
      throw std::invalid_argument("strategy '" +
                                  std::string(strategy_name(kind_)) +
                                  "' does not take a BPE model");
    markers_.validate();
  }

  StrategyKind kind() const { return kind_; }
  const BpeModel* model() const { return model_.get(); }
  const MarkerConfig& markers() const { return markers_; }

  // Segments one analyzed word. `pieces`, if given, is the BPE segmentation
  // of the stem and saves recomputing it.
  TokenList segment_word(const MorphWord& w,
                         const SymbolSequence* pieces = nullptr) const {
    switch (kind_) {
      case StrategyKind::SCS:
        return segment_word_scs(w, markers_);
      case StrategyKind::SSS:
        return segment_word_sss(w, markers_);
      case StrategyKind::BPE_SCS:
        return pieces ? segment_word_bpe_scs(*pieces, w, markers_)
                      : segment_word_bpe_scs(*model_, w, markers_);
      case StrategyKind::BPE_SSS:
        return pieces ? segment_word_bpe_sss(*pieces, w, markers_)
                      : segment_word_bpe_sss(*model_, w, markers_);
      case StrategyKind::Raw:
      case StrategyKind::BPE:
        break;
    }
    throw std::invalid_argument("strategy '" +
                                std::string(strategy_name(kind_)) +
                                "' segments raw tokens, not analyzed words");
  }

  TokenList segment_token(std::string_view surface,
                          const SymbolSequence* pieces = nullptr) const {
    if (kind_ == StrategyKind::Raw) {
      markers_.check_clean(surface);
      return {{std::string(surface), MarkerKind::Plain}};
    }
    if (kind_ == StrategyKind::BPE) {
      if (pieces) {
        markers_.check_clean(surface);
        return segment_word_bpe(*pieces);
      }
      return segment_word_bpe(*model_, surface, markers_);
    }
    throw std::invalid_argument("strategy '" +
                                std::string(strategy_name(kind_)) +
                                "' segments analyzed words, not raw tokens");
  }

 private:
  StrategyKind kind_;
  std::shared_ptr<const BpeModel> model_;
  MarkerConfig markers_;
};

namespace detail {

template <typename Fn>
void with_token_index(std::size_t index, Fn&& fn) {
  try {
    fn();
  } catch (const MarkerCollisionError& e) {
    throw e.with_token_index(index);
  }
}

}  // namespace detail

inline TokenList segment_sentence(const Strategy& strategy,
                                  const AnalyzedSentence& s,
                                  CachedBpe* cache = nullptr) {
  TokenList out;
  for (std::size_t i = 0; i < s.words.size(); ++i) {
    const MorphWord& w = s.words[i];
    detail::with_token_index(i, [&] {
      const SymbolSequence* pieces = nullptr;
      if (cache && uses_bpe(strategy.kind())) {
        strategy.markers().check_clean(w.stem());
        pieces = &(*cache)(w.stem());
      }
      for (auto& t : strategy.segment_word(w, pieces)) out.push_back(std::move(t));
    });
  }
  return out;
}

inline TokenList segment_sentence(const Strategy& strategy,
                                  const RawSentence& s,
                                  CachedBpe* cache = nullptr) {
  TokenList out;
  for (std::size_t i = 0; i < s.tokens.size(); ++i) {
    const std::string& tok = s.tokens[i];
    detail::with_token_index(i, [&] {
      const SymbolSequence* pieces = nullptr;
      if (cache && strategy.kind() == StrategyKind::BPE) {
        strategy.markers().check_clean(tok);
        pieces = &(*cache)(tok);
      }
      for (auto& t : strategy.segment_token(tok, pieces))
        out.push_back(std::move(t));
    });
  }
  return out;
}

// Stem frequencies, one count per word token. Suffixes are ignored.
template <std::ranges::input_range Corpus>
  requires std::convertible_to<std::ranges::range_reference_t<Corpus>,
                               const AnalyzedSentence&>
FrequencyDictionary build_stem_dictionary(Corpus&& corpus) {
  FrequencyDictionary dict;
  for (const AnalyzedSentence& s : corpus)
    for (const auto& w : s.words) dict.add(w.stem());
  return dict;
}

}  // namespace morphseg
