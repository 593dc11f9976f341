// Copyright 2026 The glyphbreak Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Writes a synthetic desk-scale experiment kit: LM training split,
// calibration splits, held-out evaluation splits and a matching misspelling
// list. Useful for trying the CLI without the GPT-2 output dataset.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "glyphbreak/corpus.hpp"
#include "glyphbreak/synthetic.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Generate synthetic desk corpora", "make_desk_corpus"};
  std::string out_dir = "desk";
  std::uint64_t seed = 1;
  std::size_t vocab = 800, words = 250, train = 2000, calibration = 300,
              eval = 500;
  app.add_option("--output-dir", out_dir);
  app.add_option("--seed", seed);
  app.add_option("--vocab", vocab);
  app.add_option("--words", words, "words per text");
  app.add_option("--train", train, "LM training texts");
  app.add_option("--calibration", calibration, "texts per calibration split");
  app.add_option("--eval", eval, "texts per evaluation split");
  CLI11_PARSE(app, argc, argv);

  using namespace glyphbreak;
  try {
    std::filesystem::create_directories(out_dir);
    const auto language = MakeSyntheticLanguage(vocab, seed);
    const auto path = [&](const char* name) {
      return (std::filesystem::path(out_dir) / name).string();
    };
    const auto neural = NeuralStyle();
    const auto human = HumanStyle();
    SaveCorpus(path("train.jsonl"),
               GenerateCorpus(language, train, words, neural,
                              DeriveSeed(seed, 1), Label::kNeural, "train"));
    SaveCorpus(path("calibration_neural.jsonl"),
               GenerateCorpus(language, calibration, words, neural,
                              DeriveSeed(seed, 2), Label::kNeural, ""));
    SaveCorpus(path("calibration_human.jsonl"),
               GenerateCorpus(language, calibration, words, human,
                              DeriveSeed(seed, 3), Label::kHuman, ""));
    SaveCorpus(path("neural.jsonl"),
               GenerateCorpus(language, eval, words, neural,
                              DeriveSeed(seed, 4), Label::kNeural, ""));
    SaveCorpus(path("human.jsonl"),
               GenerateCorpus(language, eval, words, human,
                              DeriveSeed(seed, 5), Label::kHuman, ""));
    std::ofstream list(path("misspellings.txt"));
    for (const auto& line :
         GenerateMisspellingLines(language, DeriveSeed(seed, 6))) {
      list << line << '\n';
    }
    std::cerr << "wrote desk corpora to " << out_dir << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
