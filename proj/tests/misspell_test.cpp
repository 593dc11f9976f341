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

#include "glyphbreak/misspell.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "gtest/gtest.h"
#include "support/random_text.hpp"

namespace glyphbreak {
namespace {

std::vector<std::string> Surfaces(const std::vector<WordSpan>& spans) {
  std::vector<std::string> out;
  for (const auto& s : spans) out.push_back(s.surface);
  return out;
}

TEST(MisspellingListTest, ShippedSample) {
  const auto result =
      LoadMisspellingList(GLYPHBREAK_DATA_DIR "/misspellings_sample.txt", true);
  EXPECT_EQ(result.skipped_multiword, 1u);
  EXPECT_TRUE(result.malformed_lines.empty());
  ASSERT_NE(result.dictionary.Find("the"), nullptr);
  EXPECT_EQ(*result.dictionary.Find("the"), std::vector<std::string>{"teh"});
  ASSERT_NE(result.dictionary.Find("witch"), nullptr);
  EXPECT_EQ(*result.dictionary.Find("witch"), std::vector<std::string>{"wich"});
}

TEST(TokenizeWordsTest, SplitsOnPunctuation) {
  const auto spans = TokenizeWords(std::string_view("Hello, world!"));
  EXPECT_EQ(Surfaces(spans), (std::vector<std::string>{"Hello", "world"}));
  EXPECT_EQ(spans[1].start, 7u);
  EXPECT_EQ(spans[1].end, 12u);
}

TEST(TokenizeWordsTest, Empty) {
  EXPECT_TRUE(TokenizeWords(std::string_view("")).empty());
}

TEST(TokenizeWordsTest, HyphensSplitApostrophesJoin) {
  EXPECT_EQ(Surfaces(TokenizeWords(std::string_view("e-mail isn't"))),
            (std::vector<std::string>{"e", "mail", "isn't"}));
  EXPECT_EQ(Surfaces(TokenizeWords(std::string_view("'tis the dogs' bone"))),
            (std::vector<std::string>{"tis", "the", "dogs", "bone"}));
  EXPECT_EQ(Surfaces(TokenizeWords(std::string_view("don\xE2\x80\x99t"))),
            (std::vector<std::string>{"don\xE2\x80\x99t"}));
}

TEST(TokenizeWordsTest, DigitsDelimitAndScriptsMix) {
  EXPECT_EQ(Surfaces(TokenizeWords(std::string_view("abc123def c\xD0\xB0t"))),
            (std::vector<std::string>{"abc", "def", "c\xD0\xB0t"}));
}

std::vector<std::string> Lines(std::initializer_list<const char*> lines) {
  return {lines.begin(), lines.end()};
}

TEST(ParseMisspellingListTest, SingleCorrection) {
  const auto r = ParseMisspellingList(Lines({"abandonned->abandoned"}));
  const auto* list = r.dictionary.Find("abandoned");
  ASSERT_NE(list, nullptr);
  EXPECT_EQ(*list, (std::vector<std::string>{"abandonned"}));
}

TEST(ParseMisspellingListTest, SeveralCorrections) {
  const auto r = ParseMisspellingList(Lines({"agina->again, angina"}));
  ASSERT_NE(r.dictionary.Find("again"), nullptr);
  ASSERT_NE(r.dictionary.Find("angina"), nullptr);
  EXPECT_EQ(r.dictionary.Find("again")->front(), "agina");
  EXPECT_EQ(r.dictionary.Find("angina")->front(), "agina");
}

TEST(ParseMisspellingListTest, MultiWordCorrectionSkipped) {
  const auto r = ParseMisspellingList(Lines({"alot->a lot"}));
  EXPECT_TRUE(r.dictionary.empty());
  EXPECT_EQ(r.skipped_multiword, 1u);
}

TEST(ParseMisspellingListTest, MalformedLinesCountedOrFatal) {
  const auto lines = Lines({"# comment", "", "nonsense", "teh->the"});
  const auto r = ParseMisspellingList(lines);
  EXPECT_EQ(r.malformed_lines, (std::vector<std::size_t>{2}));
  EXPECT_NE(r.dictionary.Find("the"), nullptr);
  try {
    ParseMisspellingList(lines, true);
    FAIL() << "expected MalformedEntry";
  } catch (const MalformedEntry& e) {
    EXPECT_EQ(e.line_no(), 2u);
  }
}

TEST(ParseMisspellingListTest, CaseFoldedSortedDeduplicated) {
  const auto r = ParseMisspellingList(
      Lines({"Zeh->The", "teh->the", "teh->the", "hte->the", "Amercia->America"}));
  EXPECT_EQ(*r.dictionary.Find("the"),
            (std::vector<std::string>{"hte", "teh", "zeh"}));
  EXPECT_EQ(*r.dictionary.Find("america"), (std::vector<std::string>{"amercia"}));
}

TEST(ParseMisspellingListTest, MisspellingMustBeOneWord) {
  const auto r = ParseMisspellingList(Lines({"e-mial->email", "a lot->alot"}));
  EXPECT_TRUE(r.dictionary.empty());
  EXPECT_EQ(r.skipped_invalid, 2u);
}

MisspellingDictionary Dict(std::initializer_list<const char*> lines) {
  return ParseMisspellingList(Lines(lines)).dictionary;
}

TEST(ApplyMisspellingsTest, ForcedWhenQuotaEqualsEligible) {
  const auto dict = Dict({"abandonned->abandoned", "agina->again"});
  const auto out = ApplyMisspellings("I was abandoned again.", dict, 0.5, 77,
                                     ShortfallPolicy::kStrict);
  EXPECT_EQ(out.text, "I was abandonned agina.");
  EXPECT_EQ(out.quota, 2u);
  EXPECT_EQ(out.achieved_count, 2u);
  EXPECT_EQ(out.replaced_words, (std::vector<std::size_t>{2, 3}));
}

TEST(ApplyMisspellingsTest, CasePatternTransfers) {
  const auto dict = Dict({"abandonned->abandoned"});
  const auto run = [&](const char* text) {
    return ApplyMisspellings(text, dict, 1.0, 1, ShortfallPolicy::kStrict).text;
  };
  EXPECT_EQ(run("ABANDONED"), "ABANDONNED");
  EXPECT_EQ(run("Abandoned"), "Abandonned");
  EXPECT_EQ(run("abandoned"), "abandonned");
  EXPECT_EQ(run("aBaNdoned"), "abandonned");
}

TEST(ApplyMisspellingsTest, StrictShortfallErrors) {
  const auto dict = Dict({"teh->the"});
  try {
    ApplyMisspellings("xyz qrs", dict, 0.05, 1, ShortfallPolicy::kStrict);
    FAIL() << "expected InsufficientEligibleWords";
  } catch (const InsufficientEligibleWords& e) {
    EXPECT_EQ(e.eligible(), 0u);
    EXPECT_EQ(e.quota(), 1u);
  }
}

TEST(ApplyMisspellingsTest, BestEffortReplacesAllEligible) {
  const auto dict = Dict({"teh->the"});
  const auto out = ApplyMisspellings("the cat and the dog", dict, 1.0, 5,
                                     ShortfallPolicy::kBestEffort);
  EXPECT_EQ(out.text, "teh cat and teh dog");
  EXPECT_EQ(out.quota, 5u);
  EXPECT_EQ(out.achieved_count, 2u);
}

TEST(ApplyMisspellingsTest, ChoosesAmongSeveralMisspellings) {
  const auto dict = Dict({"teh->the", "hte->the", "th->the"});
  std::set<std::string> seen;
  for (std::uint64_t seed = 0; seed < 64; ++seed) {
    seen.insert(ApplyMisspellings("the", dict, 1.0, seed,
                                  ShortfallPolicy::kStrict)
                    .text);
  }
  EXPECT_EQ(seen, (std::set<std::string>{"teh", "hte", "th"}));
}

TEST(ApplyMisspellingsPropertyTest, SubstitutionsComeFromTheList) {
  const std::vector<std::string> vocabulary = {
      "the", "their", "receive", "because", "which", "cat", "sat", "isn't",
      "mat", "believe", "separate", "definitely", "xylophone", "occurred"};
  const auto dict = Dict({"teh->the", "hte->the", "thier->their",
                          "recieve->receive", "becuase->because",
                          "wich->which", "beleive->believe",
                          "seperate->separate", "definately->definitely",
                          "occured->occurred", "isnt->isn't", "ocurred->occurred"});
  std::mt19937_64 gen(31);
  std::uniform_int_distribution<std::size_t> words(0, 60);
  std::uniform_real_distribution<double> frac(0.01, 1.0);
  for (int trial = 0; trial < 300; ++trial) {
    const auto text = testing::RandomSentence(gen, vocabulary, words(gen));
    const double fraction = frac(gen);
    const std::uint64_t seed = gen();
    const auto policy = trial % 2 ? ShortfallPolicy::kStrict
                                  : ShortfallPolicy::kBestEffort;
    const auto before = TokenizeWords(std::string_view(text));
    std::size_t eligible = 0;
    for (const auto& w : before) eligible += dict.Find(FoldCaseUtf8(w.surface)) != nullptr;
    const auto quota = ComputeQuota(before.size(), fraction);
    try {
      const auto out = ApplyMisspellings(text, dict, fraction, seed, policy);
      ASSERT_FALSE(policy == ShortfallPolicy::kStrict && eligible < quota);
      ASSERT_EQ(out.achieved_count, std::min(quota, eligible));
      const auto after = TokenizeWords(std::string_view(out.text));
      ASSERT_EQ(after.size(), before.size());
      std::size_t next = 0;
      for (std::size_t w = 0; w < before.size(); ++w) {
        if (next < out.replaced_words.size() && out.replaced_words[next] == w) {
          const auto* list = dict.Find(FoldCaseUtf8(before[w].surface));
          ASSERT_NE(list, nullptr);
          const auto folded = FoldCaseUtf8(after[w].surface);
          ASSERT_TRUE(std::binary_search(list->begin(), list->end(), folded))
              << folded;
          ++next;
        } else {
          ASSERT_EQ(after[w].surface, before[w].surface);
        }
      }
      ASSERT_EQ(next, out.replaced_words.size());
      // Everything between words is untouched.
      const auto in32 = DecodeUtf8(text);
      const auto out32 = DecodeUtf8(out.text);
      for (std::size_t w = 0; w <= before.size(); ++w) {
        const auto gap = [&](const std::u32string& s,
                             const std::vector<WordSpan>& spans) {
          const std::size_t from = w == 0 ? 0 : spans[w - 1].end;
          const std::size_t to = w == spans.size() ? s.size() : spans[w].start;
          return s.substr(from, to - from);
        };
        ASSERT_EQ(gap(in32, before), gap(out32, after));
      }
      ASSERT_EQ(ApplyMisspellings(text, dict, fraction, seed, policy).text,
                out.text);
    } catch (const InsufficientEligibleWords&) {
      ASSERT_EQ(policy, ShortfallPolicy::kStrict);
      ASSERT_LT(eligible, quota);
    }
  }
}

}  // namespace
}  // namespace glyphbreak
