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

// Non-human-like attack: swap characters for visually confusable Unicode
// homoglyphs, either under a character budget or exhaustively.

#ifndef GLYPHBREAK_HOMOGLYPH_HPP_
#define GLYPHBREAK_HOMOGLYPH_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "glyphbreak/error.hpp"
#include "glyphbreak/rng.hpp"
#include "glyphbreak/unicode.hpp"

namespace glyphbreak {

struct HomoglyphPair {
  Scalar source = 0;
  Scalar replacement = 0;

  friend bool operator==(const HomoglyphPair&, const HomoglyphPair&) = default;
};

inline std::string FormatPair(const HomoglyphPair& pair) {
  return FormatCodepoint(pair.source) + ">" + FormatCodepoint(pair.replacement);
}

// A set of pairs selected for one attack. Sources are pairwise distinct and
// each eligible character has exactly one replacement.
class PairSet {
 public:
  static PairSet Create(std::vector<HomoglyphPair> pairs) {
    if (pairs.empty()) throw InvalidArgument("homoglyph pair set is empty");
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      if (pairs[i].source == pairs[i].replacement) {
        throw InvalidArgument("homoglyph pair maps " +
                              FormatCodepoint(pairs[i].source) + " to itself");
      }
      for (std::size_t j = 0; j < i; ++j) {
        if (pairs[j].source == pairs[i].source) {
          throw InvalidArgument("two selected pairs share source " +
                                FormatCodepoint(pairs[i].source));
        }
      }
    }
    return PairSet(std::move(pairs));
  }

  const std::vector<HomoglyphPair>& pairs() const { return pairs_; }

  std::optional<Scalar> ReplacementFor(Scalar c) const {
    for (const auto& pair : pairs_) {
      if (pair.source == c) return pair.replacement;
    }
    return std::nullopt;
  }

  // "U+0065>U+0435,U+0061>U+0430"
  std::string Describe() const {
    std::string out;
    for (const auto& pair : pairs_) {
      if (!out.empty()) out += ',';
      out += FormatPair(pair);
    }
    return out;
  }

 private:
  explicit PairSet(std::vector<HomoglyphPair> pairs) : pairs_(std::move(pairs)) {}
  std::vector<HomoglyphPair> pairs_;
};

// A catalogue of available pairs. Unlike PairSet it may hold alternates for
// the same source; the first entry for a source is its primary pair.
class HomoglyphTable {
 public:
  HomoglyphTable() = default;
  explicit HomoglyphTable(std::vector<HomoglyphPair> pairs)
      : pairs_(std::move(pairs)) {
    for (const auto& pair : pairs_) {
      if (pair.source == pair.replacement) {
        throw InvalidArgument("homoglyph pair maps " +
                              FormatCodepoint(pair.source) + " to itself");
      }
    }
  }

  // Latin a, e, c, p to Cyrillic lookalikes, plus e to e-acute as an
  // alternate for e.
  static HomoglyphTable Default() {
    return HomoglyphTable({
        {U'a', U'\u0430'},
        {U'e', U'\u0435'},
        {U'e', U'\u00E9'},
        {U'c', U'\u0441'},
        {U'p', U'\u0440'},
    });
  }

  // One pair per line as "U+XXXX U+YYYY"; '#' starts a comment.
  static HomoglyphTable Parse(std::istream& in) {
    std::vector<HomoglyphPair> pairs;
    std::string line;
    for (std::size_t line_no = 1; std::getline(in, line); ++line_no) {
      if (const auto hash = line.find('#'); hash != std::string::npos) {
        line.erase(hash);
      }
      std::istringstream fields(line);
      std::string source, replacement, extra;
      if (!(fields >> source)) continue;
      if (!(fields >> replacement) || (fields >> extra)) {
        throw InvalidArgument("homoglyph table line " +
                              std::to_string(line_no) +
                              ": expected 'U+XXXX U+YYYY'");
      }
      try {
        pairs.push_back({ParseCodepoint(source), ParseCodepoint(replacement)});
      } catch (const InvalidArgument& e) {
        throw InvalidArgument("homoglyph table line " +
                              std::to_string(line_no) + ": " + e.what());
      }
    }
    return HomoglyphTable(std::move(pairs));
  }

  static HomoglyphTable Load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open homoglyph table: " + path);
    return Parse(in);
  }

  const std::vector<HomoglyphPair>& pairs() const { return pairs_; }

  std::optional<HomoglyphPair> Primary(Scalar source) const {
    for (const auto& pair : pairs_) {
      if (pair.source == source) return pair;
    }
    return std::nullopt;
  }

  bool Contains(const HomoglyphPair& pair) const {
    return std::find(pairs_.begin(), pairs_.end(), pair) != pairs_.end();
  }

  // Selects a pair set from a comma-separated selector list. A selector is
  // either a source ("e", "U+0065"), which picks that source's primary pair,
  // or an explicit "source:replacement" ("e:é", "e:U+00E9").
  PairSet Select(std::string_view selectors) const {
    std::vector<HomoglyphPair> chosen;
    std::size_t start = 0;
    while (start <= selectors.size()) {
      auto end = selectors.find(',', start);
      if (end == std::string_view::npos) end = selectors.size();
      const auto selector = Trim(selectors.substr(start, end - start));
      if (selector.empty()) {
        throw InvalidArgument("empty homoglyph selector in '" +
                              std::string(selectors) + "'");
      }
      const auto colon = selector.find(':');
      if (colon == std::string_view::npos) {
        const Scalar source = ParseCharacter(selector);
        const auto pair = Primary(source);
        if (!pair) {
          throw InvalidArgument("no homoglyph pair for source " +
                                FormatCodepoint(source));
        }
        chosen.push_back(*pair);
      } else {
        chosen.push_back({ParseCharacter(selector.substr(0, colon)),
                          ParseCharacter(selector.substr(colon + 1))});
      }
      start = end + 1;
    }
    return PairSet::Create(std::move(chosen));
  }

 private:
  static std::string_view Trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
      s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) {
      s.remove_suffix(1);
    }
    return s;
  }

  static Scalar ParseCharacter(std::string_view token) {
    if (token.size() > 2 && (token[0] == 'U' || token[0] == 'u') &&
        token[1] == '+') {
      return ParseCodepoint(token);
    }
    const auto scalars = DecodeUtf8(token);
    if (scalars.size() != 1) {
      throw InvalidArgument("homoglyph selector '" + std::string(token) +
                            "' is not a single character");
    }
    return scalars[0];
  }

  std::vector<HomoglyphPair> pairs_;
};

struct PerturbedText {
  std::string text;
  // Indices in scalar values, strictly increasing.
  std::vector<std::size_t> replaced_positions;
  std::size_t achieved_count = 0;
};

// ceil(fraction * char_count). Products within 1e-9 of an integer are
// treated as that integer: 0.07 * 100 gives 7, not 8.
inline std::size_t ComputeQuota(std::size_t char_count, double fraction) {
  if (!(fraction >= 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("fraction must lie in [0, 1]");
  }
  if (char_count == 0 || fraction == 0.0) return 0;
  const double product = fraction * static_cast<double>(char_count);
  const double nearest = std::round(product);
  if (std::fabs(product - nearest) <= 1e-9 * std::max(1.0, product)) {
    return static_cast<std::size_t>(nearest);
  }
  return static_cast<std::size_t>(std::ceil(product));
}

struct BudgetOptions {
  // Count only letters toward the quota base instead of every scalar value.
  bool count_letters_only = false;
};

inline std::vector<std::size_t> EligiblePositions(std::u32string_view scalars,
                                                  const PairSet& pairs) {
  std::vector<std::size_t> eligible;
  for (std::size_t i = 0; i < scalars.size(); ++i) {
    if (pairs.ReplacementFor(scalars[i])) eligible.push_back(i);
  }
  return eligible;
}

namespace internal {

inline PerturbedText Replace(std::u32string scalars, const PairSet& pairs,
                             std::vector<std::size_t> positions) {
  for (std::size_t position : positions) {
    scalars[position] = *pairs.ReplacementFor(scalars[position]);
  }
  PerturbedText out;
  out.text = EncodeUtf8(scalars);
  out.achieved_count = positions.size();
  out.replaced_positions = std::move(positions);
  return out;
}

}  // namespace internal

// Replaces exactly ComputeQuota(chars, fraction) eligible characters, chosen
// uniformly without replacement, or throws InsufficientTargets.
inline PerturbedText ApplyBudgeted(std::string_view text, const PairSet& pairs,
                                   double fraction, std::uint64_t seed,
                                   BudgetOptions options = {}) {
  if (!(fraction > 0.0 && fraction <= 1.0)) {
    throw InvalidArgument("homoglyph fraction must lie in (0, 1]");
  }
  auto scalars = DecodeUtf8(text);
  std::size_t base = scalars.size();
  if (options.count_letters_only) {
    base = static_cast<std::size_t>(
        std::count_if(scalars.begin(), scalars.end(), [](Scalar c) {
          return IsLetter(c);
        }));
  }
  const std::size_t quota = ComputeQuota(base, fraction);
  const auto eligible = EligiblePositions(scalars, pairs);
  if (eligible.size() < quota) {
    throw InsufficientTargets(eligible.size(), quota);
  }
  SplitMix64 rng(seed);
  std::vector<std::size_t> positions;
  positions.reserve(quota);
  for (std::size_t pick : SampleWithoutReplacement(eligible.size(), quota, rng)) {
    positions.push_back(eligible[pick]);
  }
  return internal::Replace(std::move(scalars), pairs, std::move(positions));
}

// Replaces every eligible character. Zero occurrences is a valid no-op.
inline PerturbedText ApplyExhaustive(std::string_view text,
                                     const PairSet& pairs) {
  auto scalars = DecodeUtf8(text);
  auto positions = EligiblePositions(scalars, pairs);
  return internal::Replace(std::move(scalars), pairs, std::move(positions));
}

}  // namespace glyphbreak

#endif  // GLYPHBREAK_HOMOGLYPH_HPP_
