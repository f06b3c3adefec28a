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

// Segments one analyzed Turkish sentence with every strategy, using merge
// tables learned on a toy corpus, then checks the round trip.

#include <iostream>
#include <memory>
#include <string>

#include "morphseg/morphseg.hpp"

int main() {
  using namespace morphseg;

  const std::string analyzed =
      "küçük fagernes kasaba+sı+nda+yım , oslo+dan yaklaşık üç saat uzak+ta .";
  const AnalyzedSentence sentence = parse_analyzed_line(analyzed);

  // Toy training data: a few repetitions of the sentence are enough for
  // frequent pairs to merge.
  std::vector<AnalyzedSentence> corpus(3, sentence);
  const auto words = build_dictionary(
      std::vector<RawSentence>{canonical_surfaces(sentence)});
  const auto stems = build_stem_dictionary(corpus);
  auto word_model = std::make_shared<const BpeModel>(learn_bpe(words, 20, 1));
  auto stem_model = std::make_shared<const BpeModel>(learn_bpe(stems, 20, 1));

  const MarkerConfig markers;
  for (auto kind : {StrategyKind::SCS, StrategyKind::SSS, StrategyKind::BPE,
                    StrategyKind::BPE_SCS, StrategyKind::BPE_SSS}) {
    const Strategy strategy(
        kind, kind == StrategyKind::BPE ? word_model
              : uses_bpe(kind)          ? stem_model
                                        : nullptr,
        markers);
    const TokenList tokens =
        uses_analysis(kind) ? segment_sentence(strategy, sentence)
                            : segment_sentence(strategy, canonical_surfaces(sentence));
    const std::string line = render_line(tokens, markers);
    const std::string back = desegment_line(line, markers);
    std::cout << strategy_name(kind) << ": " << line << '\n';
    if (back != canonical_surfaces(sentence).to_line()) {
      std::cerr << "round trip failed: " << back << '\n';
      return 1;
    }
  }
  return 0;
}
