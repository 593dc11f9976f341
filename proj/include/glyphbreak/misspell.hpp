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

// Human-like attack: swap a budgeted share of words for common human
// misspellings taken from a "wrong->right" list.

#ifndef GLYPHBREAK_MISSPELL_HPP_
#define GLYPHBREAK_MISSPELL_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glyphbreak/error.hpp"
#include "glyphbreak/homoglyph.hpp"
#include "glyphbreak/rng.hpp"
#include "glyphbreak/unicode.hpp"

namespace glyphbreak {

struct WordSpan {
  // Scalar-value indices, end exclusive.
  std::size_t start = 0;
  std::size_t end = 0;
  std::string surface;
};

inline bool IsApostrophe(Scalar c) { return c == U'\'' || c == U'\u2019'; }

// Maximal runs of letters. An apostrophe joins a run only when it sits
// between two letters; hyphens, digits and everything else delimit words.
inline std::vector<WordSpan> TokenizeWords(std::u32string_view scalars) {
  std::vector<WordSpan> spans;
  std::size_t i = 0;
  const std::size_t n = scalars.size();
  while (i < n) {
    if (!IsLetter(scalars[i])) {
      ++i;
      continue;
    }
    const std::size_t start = i;
    while (i < n) {
      if (IsLetter(scalars[i])) {
        ++i;
      } else if (IsApostrophe(scalars[i]) && i + 1 < n &&
                 IsLetter(scalars[i + 1])) {
        i += 2;
      } else {
        break;
      }
    }
    spans.push_back({start, i, EncodeUtf8(scalars.substr(start, i - start))});
  }
  return spans;
}

inline std::vector<WordSpan> TokenizeWords(std::string_view text) {
  return TokenizeWords(std::u32string_view(DecodeUtf8(text)));
}

// True when the whole string is exactly one word under TokenizeWords.
inline bool IsSingleWord(std::string_view s) {
  if (!IsValidUtf8(s)) return false;
  const auto scalars = DecodeUtf8(s);
  const auto spans = TokenizeWords(std::u32string_view(scalars));
  return spans.size() == 1 && spans[0].start == 0 &&
         spans[0].end == scalars.size();
}

// Reverse map from a case-folded correct word to its case-folded
// misspellings, each list sorted and free of duplicates.
class MisspellingDictionary {
 public:
  using Map = std::map<std::string, std::vector<std::string>>;

  // Both arguments must already be single words; they are case-folded here.
  void Add(std::string_view correction, std::string_view misspelling) {
    auto key = FoldCaseUtf8(correction);
    auto wrong = FoldCaseUtf8(misspelling);
    if (key == wrong) return;
    auto& list = entries_[key];
    const auto it = std::lower_bound(list.begin(), list.end(), wrong);
    if (it == list.end() || *it != wrong) list.insert(it, std::move(wrong));
  }

  // nullptr when the folded word has no listed misspellings.
  const std::vector<std::string>* Find(std::string_view folded_word) const {
    const auto it = entries_.find(std::string(folded_word));
    return it == entries_.end() ? nullptr : &it->second;
  }

  const Map& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  bool empty() const { return entries_.empty(); }

 private:
  Map entries_;
};

struct MisspellingParseResult {
  MisspellingDictionary dictionary;
  // Indices (0-based) of lines lacking "->".
  std::vector<std::size_t> malformed_lines;
  // Corrections that are not a single word, e.g. "alot->a lot".
  std::size_t skipped_multiword = 0;
  // Entries whose misspelling is not a single word.
  std::size_t skipped_invalid = 0;
};

// Parses "misspelling->correction[, correction]*" lines. Lines starting with
// '#' and blank lines are ignored. Lines without "->" are collected in
// malformed_lines, or raise MalformedEntry when strict is set.
inline MisspellingParseResult ParseMisspellingList(
    std::span<const std::string> lines, bool strict = false) {
  const auto trim = [](std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return std::string_view{};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
  };
  MisspellingParseResult result;
  for (std::size_t line_no = 0; line_no < lines.size(); ++line_no) {
    const auto line = trim(lines[line_no]);
    if (line.empty() || line.front() == '#') continue;
    const auto arrow = line.find("->");
    const auto wrong = arrow == std::string_view::npos
                           ? std::string_view{}
                           : trim(line.substr(0, arrow));
    if (arrow == std::string_view::npos || wrong.empty()) {
      if (strict) throw MalformedEntry(line_no);
      result.malformed_lines.push_back(line_no);
      continue;
    }
    if (!IsSingleWord(wrong)) {
      ++result.skipped_invalid;
      continue;
    }
    auto rest = line.substr(arrow + 2);
    while (true) {
      const auto comma = rest.find(',');
      const auto right = trim(rest.substr(0, comma));
      if (!right.empty()) {
        if (IsSingleWord(right)) {
          result.dictionary.Add(right, wrong);
        } else {
          ++result.skipped_multiword;
        }
      }
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
  }
  return result;
}

inline MisspellingParseResult LoadMisspellingList(const std::string& path,
                                                  bool strict = false) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open misspelling list: " + path);
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  return ParseMisspellingList(lines, strict);
}

enum class ShortfallPolicy { kStrict, kBestEffort };

struct MisspelledText {
  std::string text;
  // Indices into the input's word list, ascending.
  std::vector<std::size_t> replaced_words;
  std::size_t achieved_count = 0;
  std::size_t quota = 0;
  std::size_t eligible_count = 0;
};

// Copies the case pattern of original onto replacement: all lower, ALL CAPS
// and Titlecase are preserved; any other mix yields lower case.
inline std::u32string TransferCase(std::u32string_view original,
                                   std::u32string_view replacement) {
  bool any_upper = false, any_lower = false, rest_lower = true;
  bool first_upper = false, seen_letter = false;
  for (Scalar c : original) {
    if (!IsLetter(c)) continue;
    const bool upper = IsUpper(c);
    if (upper) any_upper = true;
    if (IsLower(c)) any_lower = true;
    if (!seen_letter) {
      first_upper = upper;
      seen_letter = true;
    } else if (upper) {
      rest_lower = false;
    }
  }
  std::u32string out(replacement);
  if (any_upper && !any_lower) {
    for (auto& c : out) c = ToUpper(c);
    return out;
  }
  for (auto& c : out) c = ToLower(c);
  if (first_upper && rest_lower) {
    for (auto& c : out) {
      if (IsLetter(c)) {
        c = ToUpper(c);
        break;
      }
    }
  }
  return out;
}

// Misspells min(quota, eligible) words, quota = ceil(fraction * words).
// Words are chosen uniformly without replacement, then each chosen word (in
// text order) draws a misspelling uniformly from its sorted list using the
// same generator.
inline MisspelledText ApplyMisspellings(std::string_view text,
                                        const MisspellingDictionary& dict,
                                        double fraction, std::uint64_t seed,
                                        ShortfallPolicy policy) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("misspelling fraction must lie in (0, 1]");
  }
  const auto scalars = DecodeUtf8(text);
  const auto words = TokenizeWords(std::u32string_view(scalars));

  std::vector<std::size_t> eligible;
  std::vector<const std::vector<std::string>*> lists;
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (const auto* list = dict.Find(FoldCaseUtf8(words[w].surface))) {
      eligible.push_back(w);
      lists.push_back(list);
    }
  }
  MisspelledText out;
  out.quota = ComputeQuota(words.size(), fraction);
  out.eligible_count = eligible.size();
  if (eligible.size() < out.quota && policy == ShortfallPolicy::kStrict) {
    throw InsufficientEligibleWords(eligible.size(), out.quota);
  }
  const std::size_t take = std::min(out.quota, eligible.size());

  SplitMix64 rng(seed);
  const auto picks = SampleWithoutReplacement(eligible.size(), take, rng);
  std::u32string result;
  result.reserve(scalars.size() + 8 * take);
  std::size_t cursor = 0;
  for (std::size_t pick : picks) {
    const auto& span = words[eligible[pick]];
    const auto& list = *lists[pick];
    const auto& wrong = list[static_cast<std::size_t>(rng.Below(list.size()))];
    result.append(scalars, cursor, span.start - cursor);
    result += TransferCase(
        std::u32string_view(scalars).substr(span.start, span.end - span.start),
        DecodeUtf8(wrong));
    cursor = span.end;
    out.replaced_words.push_back(eligible[pick]);
  }
  result.append(scalars, cursor, std::u32string::npos);
  out.text = EncodeUtf8(result);
  out.achieved_count = take;
  return out;
}

}  // namespace glyphbreak

#endif  // GLYPHBREAK_MISSPELL_HPP_
