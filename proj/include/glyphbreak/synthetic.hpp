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

// Synthetic desk-scale corpora. A SyntheticLanguage is a random first-order
// Markov source over pseudo-words whose letters follow English letter
// frequencies. "Neural" text samples each next word from only the top-k
// successors (as top-k decoding does); "human" text samples from the full
// successor distribution.

#ifndef GLYPHBREAK_SYNTHETIC_HPP_
#define GLYPHBREAK_SYNTHETIC_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "glyphbreak/corpus.hpp"
#include "glyphbreak/error.hpp"
#include "glyphbreak/rng.hpp"

namespace glyphbreak {

struct SyntheticLanguage {
  std::vector<std::string> words;
  // successors[w] ranks candidate next words for w, most likely first.
  std::vector<std::vector<std::uint32_t>> successors;
};

struct TextStyle {
  // Sample only from the first top_k ranked successors; 0 means all.
  std::size_t top_k = 0;
  // P(rank r) is proportional to (r + 1)^-zipf_exponent.
  double zipf_exponent = 1.0;
  // Chance of ignoring the successor list and drawing any word uniformly.
  double jump_probability = 0.0;
};

// top-k decoding over a peaked successor distribution.
inline TextStyle NeuralStyle() { return {40, 1.1, 0.0}; }
// The same source without truncation.
inline TextStyle HumanStyle() { return {0, 1.1, 0.0}; }

namespace internal {

// Relative frequencies of a..z in English text, in tenths of a percent.
inline constexpr std::array<int, 26> kLetterWeights = {
    82, 15, 28, 43, 127, 22, 20, 61, 70, 2, 8, 40, 24,
    67, 75, 19, 1,  60, 63,  91, 28, 10, 24, 2, 20, 1};

inline char DrawLetter(SplitMix64& rng) {
  static const int total = [] {
    int sum = 0;
    for (int w : kLetterWeights) sum += w;
    return sum;
  }();
  auto pick = static_cast<int>(rng.Below(static_cast<std::uint64_t>(total)));
  for (std::size_t i = 0; i < kLetterWeights.size(); ++i) {
    if (pick < kLetterWeights[i]) return static_cast<char>('a' + i);
    pick -= kLetterWeights[i];
  }
  return 'e';
}

inline std::vector<double> ZipfCdf(std::size_t n, double exponent) {
  std::vector<double> cdf(n);
  double sum = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    sum += std::pow(static_cast<double>(r + 1), -exponent);
    cdf[r] = sum;
  }
  for (auto& c : cdf) c /= sum;
  return cdf;
}

inline std::size_t DrawFromCdf(const std::vector<double>& cdf, SplitMix64& rng) {
  const double u = rng.Unit();
  const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
  return std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()),
                               cdf.size() - 1);
}

}  // namespace internal

// vocab_size distinct pseudo-words of 2 to 8 letters, each with a random
// ranking of up to successor_count successors.
inline SyntheticLanguage MakeSyntheticLanguage(std::size_t vocab_size,
                                               std::uint64_t seed,
                                               std::size_t successor_count = 200) {
  if (vocab_size < 2) throw InvalidArgument("vocabulary too small");
  SplitMix64 rng(seed);
  std::set<std::string> seen;
  SyntheticLanguage language;
  while (language.words.size() < vocab_size) {
    const auto length = 2 + static_cast<std::size_t>(rng.Below(4) + rng.Below(4));
    std::string word;
    for (std::size_t i = 0; i < length; ++i) word += internal::DrawLetter(rng);
    if (seen.insert(word).second) language.words.push_back(word);
  }
  const std::size_t keep = std::min(successor_count, vocab_size);
  language.successors.resize(vocab_size);
  for (auto& ranked : language.successors) {
    for (std::size_t pick : SampleWithoutReplacement(vocab_size, keep, rng)) {
      ranked.push_back(static_cast<std::uint32_t>(pick));
    }
    // SampleWithoutReplacement sorts; shuffle to get a random ranking.
    for (std::size_t i = ranked.size(); i > 1; --i) {
      std::swap(ranked[i - 1], ranked[static_cast<std::size_t>(rng.Below(i))]);
    }
  }
  return language;
}

// Sentences of 6 to 17 words, capitalized and ended with a period.
inline std::string GenerateText(const SyntheticLanguage& language,
                                std::size_t word_count, const TextStyle& style,
                                const std::vector<double>& cdf, SplitMix64& rng) {
  std::string text;
  auto current = static_cast<std::uint32_t>(rng.Below(language.words.size()));
  std::size_t sentence_left = 0;
  for (std::size_t i = 0; i < word_count; ++i) {
    if (i > 0) {
      if (style.jump_probability > 0.0 && rng.Unit() < style.jump_probability) {
        current = static_cast<std::uint32_t>(rng.Below(language.words.size()));
      } else {
        current = language.successors[current][internal::DrawFromCdf(cdf, rng)];
      }
    }
    std::string word = language.words[current];
    if (sentence_left == 0) {
      if (i > 0) text += ". ";
      sentence_left = 6 + static_cast<std::size_t>(rng.Below(12));
      word[0] = static_cast<char>(word[0] - 'a' + 'A');
    } else {
      text += ' ';
    }
    text += word;
    --sentence_left;
  }
  if (!text.empty()) text += '.';
  return text;
}

inline Corpus GenerateCorpus(const SyntheticLanguage& language,
                             std::size_t samples, std::size_t words_per_text,
                             const TextStyle& style, std::uint64_t seed,
                             Label label, std::string source) {
  const std::size_t ranks = style.top_k == 0
                                ? language.successors.front().size()
                                : std::min(style.top_k,
                                           language.successors.front().size());
  const auto cdf = internal::ZipfCdf(ranks, style.zipf_exponent);
  std::vector<std::string> texts;
  texts.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    SplitMix64 rng(DeriveSeed(seed, i));
    texts.push_back(GenerateText(language, words_per_text, style, cdf, rng));
  }
  return MakeCorpus(std::move(texts), label, std::move(source));
}

// "wrong->right" lines giving one or two plausible typos (adjacent swap,
// doubled letter, dropped letter) for every word of four or more letters.
inline std::vector<std::string> GenerateMisspellingLines(
    const SyntheticLanguage& language, std::uint64_t seed) {
  SplitMix64 rng(seed);
  const std::set<std::string> vocabulary(language.words.begin(),
                                         language.words.end());
  std::vector<std::string> lines;
  for (const auto& word : language.words) {
    if (word.size() < 4) continue;
    const auto variants = 1 + rng.Below(2);
    for (std::uint64_t v = 0; v < variants; ++v) {
      std::string wrong = word;
      const auto at = 1 + static_cast<std::size_t>(rng.Below(word.size() - 2));
      switch (rng.Below(3)) {
        case 0: std::swap(wrong[at], wrong[at + 1]); break;
        case 1: wrong.insert(wrong.begin() + static_cast<std::ptrdiff_t>(at), wrong[at]); break;
        default: wrong.erase(at, 1); break;
      }
      if (wrong != word && !vocabulary.count(wrong)) {
        lines.push_back(wrong + "->" + word);
      }
    }
  }
  return lines;
}

}  // namespace glyphbreak

#endif  // GLYPHBREAK_SYNTHETIC_HPP_
