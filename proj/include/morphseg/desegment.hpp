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

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "morphseg/error.hpp"
#include "morphseg/morpho_model.hpp"
#include "morphseg/strategies.hpp"
#include "morphseg/text.hpp"

namespace morphseg {

struct SegmentedLine {
  std::vector<std::string> tokens;

  static SegmentedLine from_line(std::string_view line) {
    return SegmentedLine{text::split_whitespace(line)};
  }
};

struct Diagnostic {
  std::size_t token_index;
  std::string message;
};

struct DesegmentOptions {
  // Downgrade structure errors to diagnostics and strip dangling markers
  // without joining.
  bool lenient = false;
};

// Which glyph terminates `token`, if any. Glyphs are suffix-free, so at most
// one can match.
inline MarkerKind trailing_marker(std::string_view token,
                                  const MarkerConfig& markers) {
  for (auto kind : {MarkerKind::StemJoin, MarkerKind::SuffixUnit,
                    MarkerKind::BpeContinuation})
    if (text::ends_with(token, markers.glyph(kind))) return kind;
  return MarkerKind::Plain;
}

// "##" and "@@" join forward, "$$" joins backward.
inline RawSentence desegment(const SegmentedLine& line,
                             const MarkerConfig& markers = {},
                             const DesegmentOptions& options = {},
                             std::vector<Diagnostic>* diagnostics = nullptr) {
  markers.validate();
  const auto report = [&](std::size_t index, const std::string& what) {
    if (!options.lenient) throw StructureError(what, index);
    if (diagnostics) diagnostics->push_back({index, what});
  };

  struct Unit {
    std::string text;
    bool join_next = false;
    bool join_prev = false;
  };
  std::vector<Unit> units;
  units.reserve(line.tokens.size());
  for (std::size_t i = 0; i < line.tokens.size(); ++i) {
    const std::string& tok = line.tokens[i];
    const MarkerKind kind = trailing_marker(tok, markers);
    Unit u;
    u.text = tok.substr(0, tok.size() - markers.glyph(kind).size());
    u.join_next =
        kind == MarkerKind::StemJoin || kind == MarkerKind::BpeContinuation;
    u.join_prev = kind == MarkerKind::SuffixUnit;
    if (u.text.empty()) {
      report(i, "bare marker '" + tok + "'");
      continue;
    }
    if (u.join_prev && units.empty()) {
      report(i, "suffix marker on the first token");
      u.join_prev = false;
    }
    units.push_back(std::move(u));
    if (units.back().join_next && i + 1 == line.tokens.size()) {
      report(i, "join marker on the last token");
      units.back().join_next = false;
    }
  }
  // A forward join whose successor was dropped in lenient mode.
  if (!units.empty() && units.back().join_next) {
    report(line.tokens.size() - 1, "join marker on the last token");
    units.back().join_next = false;
  }

  RawSentence out;
  for (std::size_t i = 0; i < units.size(); ++i) {
    const bool attach = i > 0 && (units[i - 1].join_next || units[i].join_prev);
    if (attach)
      out.tokens.back() += units[i].text;
    else
      out.tokens.push_back(std::move(units[i].text));
  }
  return out;
}

inline std::string desegment_line(std::string_view line,
                                  const MarkerConfig& markers = {},
                                  const DesegmentOptions& options = {},
                                  std::vector<Diagnostic>* diagnostics = nullptr) {
  return desegment(SegmentedLine::from_line(line), markers, options,
                   diagnostics)
      .to_line();
}

}  // namespace morphseg
