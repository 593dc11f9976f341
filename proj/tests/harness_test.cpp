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

#include "glyphbreak/harness.hpp"

#include <atomic>
#include <sstream>

#include "glyphbreak/report.hpp"
#include "gtest/gtest.h"
#include "support/desk_kit.hpp"

namespace glyphbreak {
namespace {

using glyphbreak::testing::DeskKit;
using glyphbreak::testing::DeskKitSize;
using glyphbreak::testing::MakeDeskKit;

const DeskKit& SmallKit() {
  static const DeskKit kit =
      MakeDeskKit(DeskKitSize{300, 120, 300, 80, 60}, 17);
  return kit;
}

RunOptions Quiet(unsigned workers = 4) {
  RunOptions options;
  options.workers = workers;
  options.min_evaluated = 0;
  return options;
}

// Returns a fixed probability, or throws for texts containing a marker.
class StubDetector : public Detector {
 public:
  explicit StubDetector(std::string poison = "") : poison_(std::move(poison)) {}
  DetectorVerdict Classify(std::string_view text) const override {
    if (!poison_.empty() && text.find(poison_) != std::string_view::npos) {
      throw TransportError(503, "unavailable");
    }
    return MakeVerdict(text.find("\xD0") == std::string_view::npos ? 0.95 : 0.2);
  }
  nlohmann::json Describe() const override { return {{"type", "stub"}}; }

 private:
  std::string poison_;
};

TEST(ParallelForTest, VisitsEveryIndexOnce) {
  std::vector<std::atomic<int>> hits(1000);
  ParallelFor(hits.size(), 4, [&](std::size_t i) { ++hits[i]; });
  for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
}

TEST(ParallelForTest, RethrowsLowestFailingIndex) {
  try {
    ParallelFor(100, 4, [](std::size_t i) {
      if (i % 30 == 7) throw InvalidArgument("index " + std::to_string(i));
    });
    FAIL();
  } catch (const InvalidArgument& e) {
    EXPECT_STREQ(e.what(), "index 7");
  }
}

TEST(AggregatesTest, ExcludesSkippedSamples) {
  std::vector<SampleRecord> records = {
      {0, false, 1, 1, MakeVerdict(0.9), MakeVerdict(0.2)},
      {1, true, 0, 3, MakeVerdict(0.9), std::nullopt},
      {2, false, 1, 1, MakeVerdict(0.7), MakeVerdict(0.6)},
      {3, false, 1, 1, MakeVerdict(0.3), MakeVerdict(0.1)}};
  const auto a = Aggregates::From(records);
  EXPECT_EQ(a.evaluated_count, 3u);
  EXPECT_EQ(a.skipped_count, 1u);
  EXPECT_DOUBLE_EQ(a.recall_before, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(a.recall_after, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(a.avg_confidence_human_before, (0.1 + 0.3 + 0.7) / 3.0);
  EXPECT_DOUBLE_EQ(a.avg_confidence_human_after, (0.8 + 0.4 + 0.9) / 3.0);
}

TEST(RecallSlopeTest, LeastSquares) {
  SweepReport report;
  report.points = {{0.1, 0.9, 1, 0}, {0.2, std::nullopt, 0, 1}, {0.3, 0.5, 1, 0}};
  EXPECT_NEAR(*RecallSlope(report), -2.0, 1e-12);
  report.points.resize(1);
  EXPECT_FALSE(RecallSlope(report).has_value());
}

TEST(AttackConfigTest, Validation) {
  const auto pairs = HomoglyphTable::Default().Select("e");
  EXPECT_THROW(AttackConfig::HomoglyphBudgeted(pairs, 0.0), InvalidArgument);
  EXPECT_THROW(AttackConfig::HomoglyphBudgeted(pairs, 1.5), InvalidArgument);
  EXPECT_THROW(AttackConfig::Misspelling(nullptr), InvalidArgument);
  EXPECT_NO_THROW(AttackConfig::HomoglyphExhaustive(pairs).Validate());
}

TEST(RunAttackTest, EmptyWhenNoSampleHasTheSourceLetter) {
  const auto corpus = MakeCorpus({"xyz", "qrst uvw"}, Label::kNeural);
  const StubDetector detector;
  EXPECT_THROW(
      RunAttack("none", corpus, detector,
                AttackConfig::HomoglyphBudgeted(
                    HomoglyphTable::Default().Select("e"), 0.5),
                1, Quiet()),
      EmptyExperiment);
  EXPECT_THROW(RunBaseline(Corpus(), detector), EmptyExperiment);
}

TEST(RunAttackTest, ExhaustiveWithoutTargetsChangesNothing) {
  const auto& kit = SmallKit();
  std::vector<std::string> texts;
  for (const auto& s : kit.neural) {
    std::string t = s.text;
    for (char& c : t) {
      if (c == 'a' || c == 'e') c = 'o';
    }
    texts.push_back(t);
  }
  const auto corpus = MakeCorpus(texts, Label::kNeural);
  const auto report = RunExhaustive(corpus, *kit.detector,
                                    HomoglyphTable::Default().Select("e,a"), 3,
                                    Quiet());
  EXPECT_EQ(report.aggregates.recall_after, report.aggregates.recall_before);
  for (const auto& r : report.records) {
    EXPECT_EQ(r.achieved_count, 0u);
    EXPECT_EQ(r.after->prob_machine, r.before.prob_machine);
  }
}

TEST(RunAttackTest, AggregatesRecomputeFromSamples) {
  const auto& kit = SmallKit();
  const auto report = RunAttack(
      "pairs", kit.neural, *kit.detector,
      AttackConfig::HomoglyphBudgeted(HomoglyphTable::Default().Select("e,a"), 0.02),
      5, Quiet());
  const auto j = ToJson(report);
  std::vector<SampleRecord> rebuilt;
  for (const auto& s : j["samples"]) {
    SampleRecord r;
    r.skipped = s["skipped"].get<bool>();
    r.before = MakeVerdict(s["before"]["prob_machine"].get<double>());
    if (!s["after"].is_null()) {
      r.after = MakeVerdict(s["after"]["prob_machine"].get<double>());
    }
    rebuilt.push_back(r);
  }
  EXPECT_EQ(ToJson(Aggregates::From(rebuilt)), j["aggregates"]);
  EXPECT_EQ(j["samples"].size(), kit.neural.size());
}

TEST(RunAttackTest, WorkerCountDoesNotChangeResults) {
  const auto& kit = SmallKit();
  const auto pair_sets = std::vector<PairSet>{
      HomoglyphTable::Default().Select("e,a"), HomoglyphTable::Default().Select("c")};
  const auto one = RunPairComparison(kit.neural, *kit.detector, pair_sets, 0.015,
                                     9, Quiet(1));
  const auto four = RunPairComparison(kit.neural, *kit.detector, pair_sets, 0.015,
                                      9, Quiet(4));
  ASSERT_EQ(one.size(), four.size());
  for (std::size_t i = 0; i < one.size(); ++i) {
    EXPECT_EQ(ToJson(one[i]).dump(), ToJson(four[i]).dump());
  }
  std::ostringstream csv_one, csv_four;
  WriteCsv(csv_one, one);
  WriteCsv(csv_four, four);
  EXPECT_EQ(csv_one.str(), csv_four.str());
}

// Exhaustive replacement covers a superset of any budgeted replacement's
// positions. Under a unigram model that makes every sample's feature, and so
// recall, no higher. The order-2 kit is checked too.
TEST(RunAttackTest, ExhaustiveRecallAtMostBudgeted) {
  const auto& kit = SmallKit();
  const auto unigram = std::make_shared<const NgramLM>(NgramLM::Train(kit.train, 1, 1.0));
  const RankDetector unigram_detector(unigram, 10, {0.5, 20.0});
  const auto table = HomoglyphTable::Default();
  for (const char* selector : {"e", "a", "e,a"}) {
    const auto pairs = table.Select(selector);
    for (const Detector* detector :
         {static_cast<const Detector*>(&unigram_detector),
          static_cast<const Detector*>(kit.detector.get())}) {
      const auto exhaustive = RunExhaustive(kit.neural, *detector, pairs, 1, Quiet());
      for (double fraction : {0.005, 0.015, 0.03}) {
        const auto budgeted = RunAttack(
            "budgeted", kit.neural, *detector,
            AttackConfig::HomoglyphBudgeted(pairs, fraction), 1, Quiet());
        ASSERT_EQ(budgeted.aggregates.skipped_count, 0u);
        EXPECT_LE(exhaustive.aggregates.recall_after,
                  budgeted.aggregates.recall_after)
            << selector << " at " << fraction;
      }
    }
  }
}

TEST(RunSweepTest, SinglePointMatchesPairComparison) {
  const auto& kit = SmallKit();
  const auto pairs = HomoglyphTable::Default().Select("e,a");
  const auto sweep = RunSweep(kit.neural, *kit.detector, pairs, {0.015}, 4, Quiet());
  const auto comparison =
      RunPairComparison(kit.neural, *kit.detector, {pairs}, 0.015, 4, Quiet());
  ASSERT_EQ(sweep.points.size(), 1u);
  EXPECT_EQ(*sweep.points[0].recall, comparison[0].aggregates.recall_after);
  EXPECT_EQ(sweep.points[0].evaluated_count,
            comparison[0].aggregates.evaluated_count);
}

TEST(RunSweepTest, LeavesGapsForFullySkippedPoints) {
  // Texts with a single "e" among 200 characters.
  std::string text(199, 'x');
  text += 'e';
  const auto corpus = MakeCorpus({text, text}, Label::kNeural);
  const StubDetector detector;
  const auto sweep = RunSweep(corpus, detector, HomoglyphTable::Default().Select("e"),
                              {0.001, 0.01}, 1, Quiet());
  ASSERT_EQ(sweep.points.size(), 2u);
  EXPECT_TRUE(sweep.points[0].recall.has_value());
  EXPECT_FALSE(sweep.points[1].recall.has_value());
  EXPECT_EQ(sweep.points[1].skipped_count, 2u);
  std::ostringstream csv;
  WriteCsv(csv, sweep);
  EXPECT_EQ(csv.str(),
            "fraction,recall,evaluated,skipped\n"
            "0.001000,0.000000,2,0\n"
            "0.010000,,0,2\n");
}

TEST(RunSweepTest, RejectsBadGrids) {
  const StubDetector detector;
  const auto corpus = MakeCorpus({"e"}, Label::kNeural);
  const auto pairs = HomoglyphTable::Default().Select("e");
  EXPECT_THROW(RunSweep(corpus, detector, pairs, {}, 1), InvalidArgument);
  EXPECT_THROW(RunSweep(corpus, detector, pairs, {0.2, 0.1}, 1), InvalidArgument);
  EXPECT_THROW(RunSweep(corpus, detector, pairs, {0.0}, 1), InvalidArgument);
}

TEST(RunTransferTest, NoOpAttackPreservesBuckets) {
  const auto& kit = SmallKit();
  const auto report = RunTransfer(
      kit.human, *kit.detector,
      AttackConfig::HomoglyphExhaustive(PairSet::Create({{U'q', U'\u051B'}})),
      20, 3, Quiet());
  EXPECT_EQ(report.before, report.after);
  EXPECT_EQ(report.unscored_count, 0u);
  EXPECT_EQ(report.sample_ids.size(), 20u);
  EXPECT_TRUE(std::is_sorted(report.sample_ids.begin(), report.sample_ids.end()));
}

TEST(RunTransferTest, FailuresAreUnscored) {
  const auto corpus =
      MakeCorpus({"keep calm", "poison pill", "see here", "poison ivy"},
                 Label::kNeural);
  const StubDetector detector("poison");
  const auto report =
      RunTransfer(corpus, detector,
                  AttackConfig::HomoglyphExhaustive(
                      HomoglyphTable::Default().Select("e")),
                  4, 1, Quiet());
  EXPECT_EQ(report.unscored_count, 2u);
  EXPECT_EQ(report.before.at(Bucket::kMachinePP), 2u);
  EXPECT_EQ(report.after.at(Bucket::kHumanP), 2u);
  std::ostringstream csv;
  WriteCsv(csv, report);
  EXPECT_EQ(csv.str(),
            "bucket,before,after\nMachine++,2,0\nMachine+,0,0\nHuman+,0,2\n"
            "Human++,0,0\nUnscored,2,2\n");
}

TEST(RunTransferTest, SampleLargerThanCorpus) {
  const auto corpus = MakeCorpus({"a", "b"}, Label::kNeural);
  const StubDetector detector;
  EXPECT_THROW(RunTransfer(corpus, detector,
                           AttackConfig::HomoglyphExhaustive(
                               HomoglyphTable::Default().Select("e")),
                           3, 1),
               NotEnoughSamples);
}

TEST(RunRankAnalysisTest, NoReplacementsGiveEqualMeans) {
  const auto& kit = SmallKit();
  const auto report = RunRankAnalysis(
      *kit.lm, kit.neural, kit.human,
      AttackConfig::HomoglyphExhaustive(PairSet::Create({{U'q', U'\u051B'}})), 10,
      2);
  EXPECT_EQ(report.attacked_mean, report.neural_mean);
  EXPECT_EQ(report.attacked_tokens, report.neural_tokens);
  EXPECT_EQ(report.neural_ids.size(), 10u);
}

TEST(RunRankAnalysisTest, AttackRaisesMeanRank) {
  const auto& kit = SmallKit();
  const auto report = RunRankAnalysis(
      *kit.lm, kit.neural, kit.human,
      AttackConfig::HomoglyphExhaustive(HomoglyphTable::Default().Select("e,a")),
      20, 2);
  EXPECT_LT(report.neural_mean, report.human_mean);
  EXPECT_LT(report.human_mean, report.attacked_mean);
}

TEST(RunMisspellingTest, BestEffortEvaluatesEverySample) {
  const auto& kit = SmallKit();
  const auto report = RunMisspelling(kit.neural, *kit.detector, kit.dictionary,
                                     0.05, 6, ShortfallPolicy::kBestEffort, Quiet());
  EXPECT_EQ(report.aggregates.evaluated_count, kit.neural.size());
  EXPECT_EQ(report.aggregates.skipped_count, 0u);
}

TEST(RunMisspellingTest, StrictSkipsShortfalls) {
  MisspellingDictionary dictionary;
  dictionary.Add("cat", "kat");
  const auto corpus =
      MakeCorpus({"cat dog bird fish", "dog bird fish eel"}, Label::kNeural);
  const StubDetector detector;
  const auto report = RunMisspelling(
      corpus, detector, std::make_shared<const MisspellingDictionary>(dictionary),
      0.25, 1, ShortfallPolicy::kStrict, Quiet());
  EXPECT_EQ(report.aggregates.evaluated_count, 1u);
  EXPECT_EQ(report.aggregates.skipped_count, 1u);
  EXPECT_TRUE(report.records[1].skipped);
}

TEST(WarningTest, SmallExperimentsWarn) {
  std::ostringstream log;
  RunOptions options;
  options.log = &log;
  options.min_evaluated = 10;
  const StubDetector detector;
  RunExhaustive(MakeCorpus({"see"}, Label::kNeural), detector,
                HomoglyphTable::Default().Select("e"), 1, options);
  EXPECT_NE(log.str().find("warning"), std::string::npos);
}

}  // namespace
}  // namespace glyphbreak
