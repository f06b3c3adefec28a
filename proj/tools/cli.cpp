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

#include "cli.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "morphseg/morphseg.hpp"

namespace morphseg::cli {
namespace {

using nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Streams {
  std::istream& in;
  std::ostream& out;
  std::ostream& err;
};

class Input {
 public:
  Input(const std::string& path, Streams& s) {
    if (path == "-") {
      stream_ = &s.in;
      return;
    }
    file_ = std::make_unique<std::ifstream>(path, std::ios::binary);
    if (!*file_) throw UsageError("cannot open '" + path + "' for reading");
    stream_ = file_.get();
  }
  std::istream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ifstream> file_;
  std::istream* stream_ = nullptr;
};

class Output {
 public:
  Output(const std::string& path, Streams& s) {
    if (path == "-") {
      stream_ = &s.out;
      return;
    }
    file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
    if (!*file_) throw UsageError("cannot open '" + path + "' for writing");
    stream_ = file_.get();
  }
  std::ostream& get() { return *stream_; }

 private:
  std::unique_ptr<std::ofstream> file_;
  std::ostream* stream_ = nullptr;
};

struct MarkerOptions {
  std::string stem_join = "##";
  std::string suffix_unit = "$$";
  std::string bpe_continuation = "@@";

  void add_to(CLI::App* cmd) {
    cmd->add_option("--stem-marker", stem_join, "glyph after a whole stem")
        ->capture_default_str();
    cmd->add_option("--suffix-marker", suffix_unit, "glyph after a suffix unit")
        ->capture_default_str();
    cmd->add_option("--bpe-marker", bpe_continuation,
                    "glyph after a non-final BPE subword")
        ->capture_default_str();
  }

  MarkerConfig config() const {
    MarkerConfig m{stem_join, suffix_unit, bpe_continuation};
    try {
      m.validate();
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    return m;
  }
};

char delimiter_from(const std::string& s) {
  if (s.size() != 1 || text::is_space(s[0]) || s[0] == '\\')
    throw UsageError("delimiter must be a single non-space character");
  return s[0];
}

std::string line_prefix(std::size_t line_no) {
  return "line " + std::to_string(line_no) + ": ";
}

// ---------------------------------------------------------------------------
// learn-bpe

struct LearnOptions {
  std::string input = "-";
  std::string output = "-";
  std::size_t merges = 0;
  std::string preset;
  std::uint64_t min_frequency = kDefaultMinPairFrequency;
  bool on_stems = false;
  std::string delimiter = "+";
};

int cmd_learn_bpe(const LearnOptions& o, CLI::App* cmd, Streams& s) {
  std::size_t merges = o.merges;
  if (!o.preset.empty()) {
    auto it = merge_presets().find(o.preset);
    if (it == merge_presets().end())
      throw UsageError("unknown preset '" + o.preset + "'");
    if (cmd->count("--merges") == 0) merges = it->second;
  } else if (cmd->count("--merges") == 0) {
    throw UsageError("learn-bpe needs --merges or --preset");
  }
  if (o.min_frequency == 0)
    throw UsageError("--min-frequency must be positive");
  const char delimiter = delimiter_from(o.delimiter);

  Input in(o.input, s);
  FrequencyDictionary dict;
  std::size_t errors = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in.get(), line)) {
    ++line_no;
    if (!o.on_stems) {
      text::for_each_token(line, [&](std::string_view t) { dict.add(t); });
      continue;
    }
    try {
      for (const auto& w : parse_analyzed_line(line, delimiter).words)
        dict.add(w.stem());
    } catch (const ParseError& e) {
      s.err << "error: " << e.with_line(line_no).what() << '\n';
      ++errors;
    }
  }
  if (errors) {
    s.err << "error: " << errors << " malformed line(s); no model written\n";
    return kDataError;
  }

  LearnStats stats;
  const BpeModel model = learn_bpe(dict, merges, o.min_frequency, &stats);
  Output out(o.output, s);
  save_model(model, out.get());
  s.err << "learned " << model.size() << " merges; " << stats.final_symbol_types
        << " symbol types (" << stats.initial_symbol_types << " initially)\n";
  return kOk;
}

// ---------------------------------------------------------------------------
// segment

struct SegmentOptions {
  std::string strategy;
  std::string model;
  std::string input = "-";
  std::string output = "-";
  std::string delimiter = "+";
  MarkerOptions markers;
  bool fail_fast = false;
  std::size_t max_len = 0;
};

std::shared_ptr<const BpeModel> read_model(const std::string& path,
                                           Streams& s) {
  Input in(path, s);
  try {
    return std::make_shared<const BpeModel>(load_model(in.get()));
  } catch (const ModelFormatError& e) {
    throw UsageError("'" + path + "': " + e.what());
  }
}

int cmd_segment(const SegmentOptions& o, Streams& s) {
  StrategyKind kind;
  try {
    kind = parse_strategy_name(o.strategy);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  std::shared_ptr<const BpeModel> model;
  if (uses_bpe(kind)) {
    if (o.model.empty())
      throw UsageError("strategy '" + o.strategy + "' needs --model");
    model = read_model(o.model, s);
  } else if (!o.model.empty()) {
    throw UsageError("strategy '" + o.strategy + "' does not use a model");
  }
  const Strategy strategy(kind, model, o.markers.config());
  const char delimiter = delimiter_from(o.delimiter);
  std::unique_ptr<CachedBpe> cache;
  if (model) cache = std::make_unique<CachedBpe>(*model);

  Input in(o.input, s);
  Output out(o.output, s);
  std::size_t errors = 0;
  std::size_t filtered = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in.get(), line)) {
    ++line_no;
    try {
      const TokenList tokens =
          uses_analysis(kind)
              ? segment_sentence(strategy,
                                 parse_analyzed_line(line, delimiter),
                                 cache.get())
              : segment_sentence(strategy, RawSentence::from_line(line),
                                 cache.get());
      if (o.max_len && tokens.size() > o.max_len) {
        ++filtered;
        continue;
      }
      out.get() << render_line(tokens, strategy.markers()) << '\n';
    } catch (const ParseError& e) {
      s.err << "error: " << e.with_line(line_no).what() << '\n';
      ++errors;
      out.get() << '\n';
    } catch (const Error& e) {
      s.err << "error: " << line_prefix(line_no) << e.what() << '\n';
      ++errors;
      out.get() << '\n';
    }
    if (errors && o.fail_fast) break;
  }
  out.get().flush();
  if (filtered)
    s.err << "dropped " << filtered << " line(s) longer than " << o.max_len
          << " tokens\n";
  return errors ? kDataError : kOk;
}

// ---------------------------------------------------------------------------
// desegment

struct DesegmentCliOptions {
  std::string input = "-";
  std::string output = "-";
  MarkerOptions markers;
  bool lenient = false;
};

int cmd_desegment(const DesegmentCliOptions& o, Streams& s) {
  const MarkerConfig markers = o.markers.config();
  const DesegmentOptions options{o.lenient};
  Input in(o.input, s);
  Output out(o.output, s);
  std::size_t errors = 0;
  std::string line;
  std::size_t line_no = 0;
  std::vector<Diagnostic> warnings;
  while (std::getline(in.get(), line)) {
    ++line_no;
    warnings.clear();
    try {
      out.get() << desegment_line(line, markers, options, &warnings) << '\n';
    } catch (const StructureError& e) {
      s.err << "error: " << line_prefix(line_no) << e.what() << '\n';
      ++errors;
      out.get() << '\n';
    }
    for (const auto& w : warnings)
      s.err << "warning: " << line_prefix(line_no) << "token " << w.token_index
            << ": " << w.message << '\n';
  }
  out.get().flush();
  return errors ? kDataError : kOk;
}

// ---------------------------------------------------------------------------
// stats

struct StatsOptions {
  std::vector<std::string> inputs{"-"};
  bool analyzed = false;
  std::string delimiter = "+";
  std::string format = "table";
  std::string records;
};

ordered_json stats_record(const std::string& input, const CorpusStats& c) {
  ordered_json j;
  j["input"] = input;
  j["sentences"] = c.sentences;
  j["tokens"] = c.tokens;
  j["vocabulary"] = c.vocabulary;
  j["average_length"] = c.average_length();
  j["average_length_rounded"] = c.average_length_rounded();
  j["average_defined"] = c.has_average();
  return j;
}

void emit_records(const std::vector<ordered_json>& records,
                  const std::string& path, Streams& s) {
  Output out(path, s);
  for (const auto& r : records) out.get() << r.dump() << '\n';
}

int cmd_stats(const StatsOptions& o, Streams& s) {
  const char delimiter = delimiter_from(o.delimiter);
  std::vector<LabeledStats> rows;
  std::vector<MorphStats> morph;
  std::vector<ordered_json> records;
  std::size_t errors = 0;
  for (const auto& path : o.inputs) {
    Input in(path, s);
    StatsAccumulator acc;
    MorphStatsAccumulator macc;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in.get(), line)) {
      ++line_no;
      if (!o.analyzed) {
        acc.add_line(line);
        continue;
      }
      try {
        const auto sentence = parse_analyzed_line(line, delimiter);
        macc.add(sentence);
        acc.add_line(canonical_surfaces(sentence).to_line());
      } catch (const ParseError& e) {
        s.err << "error: " << path << ": " << e.with_line(line_no).what()
              << '\n';
        ++errors;
        acc.add_line("");
      }
    }
    const CorpusStats c = acc.result();
    rows.push_back({path == "-" ? "stdin" : path, c});
    ordered_json rec = stats_record(path, c);
    if (o.analyzed) {
      const MorphStats m = macc.result();
      morph.push_back(m);
      rec["stem_types"] = m.stem_types;
      rec["combined_suffix_types"] = m.combined_suffix_types;
      rec["singular_suffix_types"] = m.singular_suffix_types;
    }
    records.push_back(std::move(rec));
  }

  if (o.format == "jsonl") {
    for (const auto& r : records) s.out << r.dump() << '\n';
  } else if (o.analyzed) {
    for (std::size_t i = 0; i < rows.size(); ++i)
      s.out << format_morph_table(rows[i].label, rows[i].stats, morph[i]);
  } else {
    s.out << format_stats_table(rows);
  }
  if (!o.records.empty()) emit_records(records, o.records, s);
  return errors ? kDataError : kOk;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepOptions {
  std::string input = "-";
  std::string strategy = "bpe-sss";
  std::vector<std::size_t> merges;
  std::uint64_t min_frequency = kDefaultMinPairFrequency;
  std::string delimiter = "+";
  MarkerOptions markers;
  std::string format = "table";
  std::string records;
};

int cmd_sweep(const SweepOptions& o, Streams& s) {
  StrategyKind kind;
  try {
    kind = parse_strategy_name(o.strategy);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  if (!uses_bpe(kind))
    throw UsageError("sweep needs bpe, bpe-scs or bpe-sss");
  if (o.min_frequency == 0)
    throw UsageError("--min-frequency must be positive");
  const char delimiter = delimiter_from(o.delimiter);

  SweepContext ctx;
  ctx.strategy = kind;
  ctx.markers = o.markers.config();
  ctx.min_pair_frequency = o.min_frequency;

  Input in(o.input, s);
  FrequencyDictionary dict;
  std::set<MorphWord> words;
  std::size_t errors = 0;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in.get(), line)) {
    ++line_no;
    if (kind == StrategyKind::BPE) {
      text::for_each_token(line, [&](std::string_view t) { dict.add(t); });
      continue;
    }
    try {
      for (auto& w : parse_analyzed_line(line, delimiter).words) {
        dict.add(w.stem());
        words.insert(std::move(w));
      }
    } catch (const ParseError& e) {
      s.err << "error: " << e.with_line(line_no).what() << '\n';
      ++errors;
    }
  }
  if (errors) return kDataError;
  ctx.words.assign(words.begin(), words.end());

  std::vector<std::size_t> counts = o.merges;
  std::sort(counts.begin(), counts.end());
  counts.erase(std::unique(counts.begin(), counts.end()), counts.end());
  std::vector<SweepRow> rows;
  try {
    rows = sweep_merges(dict, counts, ctx);
  } catch (const MarkerCollisionError& e) {
    s.err << "error: " << e.what() << '\n';
    return kDataError;
  }

  std::vector<ordered_json> records;
  for (const auto& r : rows) {
    ordered_json j;
    j["strategy"] = std::string(strategy_name(kind));
    j["merges"] = r.merges_requested;
    j["merges_learned"] = r.merges_used;
    j["vocabulary"] = r.vocabulary;
    j["symbol_types"] = r.symbol_types;
    records.push_back(std::move(j));
  }
  if (o.format == "jsonl") {
    for (const auto& r : records) s.out << r.dump() << '\n';
  } else {
    s.out << format_sweep_table(rows);
  }
  if (!o.records.empty()) emit_records(records, o.records, s);
  return kOk;
}

// ---------------------------------------------------------------------------
// score

struct ScoreOptions {
  std::string metric;
  std::string hyp;
  std::string ref;
};

std::vector<std::string> read_lines(const std::string& path, Streams& s) {
  Input in(path, s);
  std::vector<std::string> lines;
  std::string line;
  while (std::getline(in.get(), line)) lines.push_back(line);
  return lines;
}

int cmd_score(const ScoreOptions& o, Streams& s) {
  if (o.hyp == "-" && o.ref == "-")
    throw UsageError("--hyp and --ref cannot both be standard input");
  const auto hyps = read_lines(o.hyp, s);
  const auto refs = read_lines(o.ref, s);
  double score = 0.0;
  try {
    score = o.metric == "bleu" ? bleu(hyps, refs) : chrf3(hyps, refs);
  } catch (const std::invalid_argument& e) {
    s.err << "error: " << e.what() << '\n';
    return kDataError;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", score);
  s.out << buf << '\n';
  return kOk;
}

}  // namespace

const std::map<std::string, std::size_t>& merge_presets() {
  static const std::map<std::string, std::size_t> presets = {
      {"tr-bpe", 35000},     {"tr-bpe-scs", 15000}, {"tr-bpe-sss", 25000},
      {"ug-bpe", 38000},     {"ug-bpe-scs", 10000}, {"ug-bpe-sss", 35000},
      {"en-bpe", 30000},     {"zh-bpe", 35000},
  };
  return presets;
}

int run(const std::vector<std::string>& args, std::istream& in,
        std::ostream& out, std::ostream& err) {
  Streams streams{in, out, err};

  CLI::App app{"Morphological word segmentation for agglutinative languages",
               "morphseg"};
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");

  LearnOptions learn;
  auto* learn_cmd =
      app.add_subcommand("learn-bpe", "learn a BPE merge table from a corpus");
  learn_cmd->add_option("-i,--input", learn.input, "corpus ('-' = stdin)")
      ->capture_default_str();
  learn_cmd->add_option("-o,--output", learn.output, "model file ('-' = stdout)")
      ->capture_default_str();
  learn_cmd->add_option("-k,--merges", learn.merges, "number of merge operations");
  learn_cmd->add_option("--preset", learn.preset,
                        "named merge count (tr-bpe, tr-bpe-sss, ug-bpe, ...)");
  learn_cmd->add_option("--min-frequency", learn.min_frequency,
                        "stop when the best pair is rarer than this")
      ->capture_default_str();
  learn_cmd->add_flag("--on-stems", learn.on_stems,
                      "input is analyzed; learn on stems only");
  learn_cmd->add_option("-d,--delimiter", learn.delimiter, "morpheme delimiter")
      ->capture_default_str();

  SegmentOptions segment;
  auto* segment_cmd = app.add_subcommand("segment", "segment a corpus");
  segment_cmd
      ->add_option("-s,--strategy", segment.strategy,
                   "raw, scs, sss, bpe, bpe-scs or bpe-sss")
      ->required();
  segment_cmd->add_option("-m,--model", segment.model, "BPE model file");
  segment_cmd->add_option("-i,--input", segment.input)->capture_default_str();
  segment_cmd->add_option("-o,--output", segment.output)->capture_default_str();
  segment_cmd->add_option("-d,--delimiter", segment.delimiter)
      ->capture_default_str();
  segment.markers.add_to(segment_cmd);
  segment_cmd->add_flag("--fail-fast", segment.fail_fast,
                        "stop at the first bad line");
  segment_cmd->add_option("--max-len", segment.max_len,
                          "drop output lines with more tokens (0 = off)")
      ->capture_default_str();

  DesegmentCliOptions deseg;
  auto* deseg_cmd =
      app.add_subcommand("desegment", "resolve markers back to surface words");
  deseg_cmd->add_option("-i,--input", deseg.input)->capture_default_str();
  deseg_cmd->add_option("-o,--output", deseg.output)->capture_default_str();
  deseg.markers.add_to(deseg_cmd);
  deseg_cmd->add_flag("--lenient", deseg.lenient,
                      "warn on malformed marker sequences instead of failing");

  StatsOptions stats;
  auto* stats_cmd = app.add_subcommand("stats", "corpus statistics");
  stats_cmd->add_option("inputs", stats.inputs, "corpus files ('-' = stdin)")
      ->capture_default_str();
  stats_cmd->add_flag("--analyzed", stats.analyzed,
                      "input is analyzed; also count stems and suffixes");
  stats_cmd->add_option("-d,--delimiter", stats.delimiter)->capture_default_str();
  stats_cmd->add_option("--format", stats.format)
      ->check(CLI::IsMember({"table", "jsonl"}))
      ->capture_default_str();
  stats_cmd->add_option("--records", stats.records,
                        "also write JSON lines to this file ('-' = stdout)");

  SweepOptions sweep;
  auto* sweep_cmd =
      app.add_subcommand("sweep", "vocabulary size for several merge counts");
  sweep_cmd->add_option("-i,--input", sweep.input)->capture_default_str();
  sweep_cmd->add_option("-s,--strategy", sweep.strategy)
      ->check(CLI::IsMember({"bpe", "bpe-scs", "bpe-sss"}))
      ->capture_default_str();
  sweep_cmd->add_option("-k,--merges", sweep.merges, "comma-separated counts")
      ->delimiter(',')
      ->required();
  sweep_cmd->add_option("--min-frequency", sweep.min_frequency)
      ->capture_default_str();
  sweep_cmd->add_option("-d,--delimiter", sweep.delimiter)->capture_default_str();
  sweep.markers.add_to(sweep_cmd);
  sweep_cmd->add_option("--format", sweep.format)
      ->check(CLI::IsMember({"table", "jsonl"}))
      ->capture_default_str();
  sweep_cmd->add_option("--records", sweep.records,
                        "also write JSON lines to this file ('-' = stdout)");

  ScoreOptions score;
  auto* score_cmd = app.add_subcommand("score", "BLEU or chrF3 of a translation");
  score_cmd->add_option("--metric", score.metric)
      ->check(CLI::IsMember({"bleu", "chrf3"}))
      ->required();
  score_cmd->add_option("--hyp", score.hyp, "hypothesis file")->required();
  score_cmd->add_option("--ref", score.ref, "reference file")->required();

  std::vector<const char*> argv{"morphseg"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0; every real parse failure is a usage error.
    return app.exit(e, out, err) == 0 ? kOk : kUsageError;
  }

  try {
    if (*learn_cmd) return cmd_learn_bpe(learn, learn_cmd, streams);
    if (*segment_cmd) return cmd_segment(segment, streams);
    if (*deseg_cmd) return cmd_desegment(deseg, streams);
    if (*stats_cmd) return cmd_stats(stats, streams);
    if (*sweep_cmd) return cmd_sweep(sweep, streams);
    if (*score_cmd) return cmd_score(score, streams);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kDataError;
  }
  return kUsageError;
}

}  // namespace morphseg::cli
