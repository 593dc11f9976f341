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

// Experiment runners: attack every sample of a corpus, score it before and
// after with a black-box detector and aggregate recall and confidence.
//
// Each sample's attack seed is DeriveSeed(master_seed, sample id). Reports do
// not depend on evaluation order or on the number of worker threads.

#ifndef GLYPHBREAK_HARNESS_HPP_
#define GLYPHBREAK_HARNESS_HPP_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "json.hpp"

#include "glyphbreak/corpus.hpp"
#include "glyphbreak/detector.hpp"
#include "glyphbreak/error.hpp"
#include "glyphbreak/homoglyph.hpp"
#include "glyphbreak/misspell.hpp"
#include "glyphbreak/ngram.hpp"
#include "glyphbreak/rng.hpp"

namespace glyphbreak {

inline constexpr double kDefaultHomoglyphFraction = 0.015;
inline constexpr double kDefaultMisspellingFraction = 0.05;
inline constexpr std::size_t kDefaultTransferSamples = 20;
inline constexpr std::size_t kDefaultRankSamples = 50;
inline constexpr std::size_t kDefaultMinEvaluated = 2500;

inline const std::vector<double>& DefaultSweepFractions() {
  static const std::vector<double> grid = {0.0025, 0.005, 0.0075, 0.01, 0.015,
                                           0.02,   0.03,  0.04,   0.05};
  return grid;
}

enum class AttackKind { kHomoglyphBudgeted, kHomoglyphExhaustive, kMisspelling };

inline std::string_view AttackKindName(AttackKind kind) {
  switch (kind) {
    case AttackKind::kHomoglyphBudgeted: return "homoglyph-budgeted";
    case AttackKind::kHomoglyphExhaustive: return "homoglyph-exhaustive";
    case AttackKind::kMisspelling: return "misspelling";
  }
  return "?";
}

struct AttackConfig {
  AttackKind kind = AttackKind::kHomoglyphExhaustive;
  std::optional<PairSet> pairs;
  std::shared_ptr<const MisspellingDictionary> dictionary;
  double fraction = 1.0;
  ShortfallPolicy policy = ShortfallPolicy::kStrict;
  bool count_letters_only = false;

  static AttackConfig HomoglyphBudgeted(PairSet pairs,
                                        double fraction = kDefaultHomoglyphFraction,
                                        bool count_letters_only = false) {
    AttackConfig config;
    config.kind = AttackKind::kHomoglyphBudgeted;
    config.pairs = std::move(pairs);
    config.fraction = fraction;
    config.count_letters_only = count_letters_only;
    config.Validate();
    return config;
  }

  static AttackConfig HomoglyphExhaustive(PairSet pairs) {
    AttackConfig config;
    config.kind = AttackKind::kHomoglyphExhaustive;
    config.pairs = std::move(pairs);
    return config;
  }

  static AttackConfig Misspelling(
      std::shared_ptr<const MisspellingDictionary> dictionary,
      double fraction = kDefaultMisspellingFraction,
      ShortfallPolicy policy = ShortfallPolicy::kStrict) {
    AttackConfig config;
    config.kind = AttackKind::kMisspelling;
    config.dictionary = std::move(dictionary);
    config.fraction = fraction;
    config.policy = policy;
    config.Validate();
    return config;
  }

  void Validate() const {
    if (kind == AttackKind::kMisspelling) {
      if (!dictionary) throw InvalidArgument("misspelling attack needs a dictionary");
    } else if (!pairs) {
      throw InvalidArgument("homoglyph attack needs a pair set");
    }
    if (kind != AttackKind::kHomoglyphExhaustive &&
        !(fraction > 0.0 && fraction <= 1.0)) {
      throw InvalidArgument("attack fraction must lie in (0, 1]");
    }
  }

  nlohmann::json ToJson() const {
    nlohmann::json j = {{"kind", AttackKindName(kind)}};
    if (pairs) j["pairs"] = pairs->Describe();
    if (kind != AttackKind::kHomoglyphExhaustive) j["fraction"] = fraction;
    if (kind == AttackKind::kHomoglyphBudgeted) {
      j["count_letters_only"] = count_letters_only;
    }
    if (kind == AttackKind::kMisspelling) {
      j["policy"] = policy == ShortfallPolicy::kStrict ? "strict" : "best-effort";
      j["dictionary_entries"] = dictionary->size();
    }
    return j;
  }
};

struct AttackOutcome {
  bool skipped = false;
  std::string text;
  std::size_t achieved_count = 0;
  std::size_t quota = 0;
};

// Runs one attack on one text. A sample that cannot meet its quota comes
// back with skipped set instead of an exception.
inline AttackOutcome ApplyAttack(const AttackConfig& config,
                                 std::string_view text, std::uint64_t seed) {
  AttackOutcome out;
  switch (config.kind) {
    case AttackKind::kHomoglyphBudgeted:
      try {
        auto perturbed = ApplyBudgeted(text, *config.pairs, config.fraction, seed,
                                       {config.count_letters_only});
        out.text = std::move(perturbed.text);
        out.achieved_count = out.quota = perturbed.achieved_count;
      } catch (const InsufficientTargets& e) {
        out.skipped = true;
        out.quota = e.quota();
        out.achieved_count = 0;
      }
      break;
    case AttackKind::kHomoglyphExhaustive: {
      auto perturbed = ApplyExhaustive(text, *config.pairs);
      out.text = std::move(perturbed.text);
      out.achieved_count = out.quota = perturbed.achieved_count;
      break;
    }
    case AttackKind::kMisspelling:
      try {
        auto misspelled = ApplyMisspellings(text, *config.dictionary,
                                            config.fraction, seed, config.policy);
        out.text = std::move(misspelled.text);
        out.achieved_count = misspelled.achieved_count;
        out.quota = misspelled.quota;
      } catch (const InsufficientEligibleWords& e) {
        out.skipped = true;
        out.quota = e.quota();
      }
      break;
  }
  return out;
}

struct RunOptions {
  // Concurrent classifications; results never depend on it.
  unsigned workers = 4;
  // Reports that evaluate fewer samples log a warning.
  std::size_t min_evaluated = kDefaultMinEvaluated;
  std::ostream* log = nullptr;
};

// Calls fn(i) for i in [0, n) on up to `workers` threads. If any call throws,
// the exception of the lowest failing index is rethrown.
inline void ParallelFor(std::size_t n, unsigned workers,
                        const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const std::size_t threads = std::clamp<std::size_t>(workers, 1, n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<std::size_t> next{0};
  const auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  if (threads == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(work);
  }
  for (const auto& error : errors) {
    if (error) std::rethrow_exception(error);
  }
}

struct SampleRecord {
  std::size_t id = 0;
  bool skipped = false;
  std::size_t achieved_count = 0;
  std::size_t quota = 0;
  DetectorVerdict before;
  std::optional<DetectorVerdict> after;
};

struct Aggregates {
  std::size_t evaluated_count = 0;
  std::size_t skipped_count = 0;
  double recall_before = 0.0;
  double recall_after = 0.0;
  double avg_confidence_human_before = 0.0;
  double avg_confidence_human_after = 0.0;

  // Skipped samples are excluded from every ratio.
  static Aggregates From(const std::vector<SampleRecord>& records) {
    Aggregates a;
    std::size_t machine_before = 0, machine_after = 0;
    double human_before = 0.0, human_after = 0.0;
    for (const auto& r : records) {
      if (r.skipped || !r.after) {
        ++a.skipped_count;
        continue;
      }
      ++a.evaluated_count;
      machine_before += r.before.label == VerdictLabel::kMachine;
      machine_after += r.after->label == VerdictLabel::kMachine;
      human_before += 1.0 - r.before.prob_machine;
      human_after += 1.0 - r.after->prob_machine;
    }
    if (a.evaluated_count > 0) {
      const auto n = static_cast<double>(a.evaluated_count);
      a.recall_before = static_cast<double>(machine_before) / n;
      a.recall_after = static_cast<double>(machine_after) / n;
      a.avg_confidence_human_before = human_before / n;
      a.avg_confidence_human_after = human_after / n;
    }
    return a;
  }
};

struct ExperimentReport {
  std::string name;
  nlohmann::json config;
  std::vector<SampleRecord> records;
  Aggregates aggregates;
};

struct SweepPoint {
  double fraction = 0.0;
  // Empty when every sample was skipped at this fraction.
  std::optional<double> recall;
  std::size_t evaluated_count = 0;
  std::size_t skipped_count = 0;
};

struct SweepReport {
  std::vector<SweepPoint> points;
  nlohmann::json config;
};

// Least-squares slope of recall against fraction over the non-empty points.
inline std::optional<double> RecallSlope(const SweepReport& report) {
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  std::size_t n = 0;
  for (const auto& p : report.points) {
    if (!p.recall) continue;
    sx += p.fraction;
    sy += *p.recall;
    sxx += p.fraction * p.fraction;
    sxy += p.fraction * *p.recall;
    ++n;
  }
  const double denominator = static_cast<double>(n) * sxx - sx * sx;
  if (n < 2 || denominator == 0.0) return std::nullopt;
  return (static_cast<double>(n) * sxy - sx * sy) / denominator;
}

struct TransferRecord {
  std::size_t id = 0;
  std::optional<Bucket> before;
  std::optional<Bucket> after;
  double prob_before = 0.0;
  double prob_after = 0.0;
  // Empty for scored samples; "skipped" or the error text otherwise.
  std::string unscored_reason;
};

struct BucketReport {
  std::vector<std::size_t> sample_ids;
  std::map<Bucket, std::size_t> before;
  std::map<Bucket, std::size_t> after;
  std::size_t unscored_count = 0;
  std::vector<TransferRecord> records;
  nlohmann::json config;
};

struct RankReport {
  double human_mean = 0.0;
  double neural_mean = 0.0;
  double attacked_mean = 0.0;
  std::size_t human_tokens = 0;
  std::size_t neural_tokens = 0;
  std::size_t attacked_tokens = 0;
  std::vector<std::size_t> human_ids;
  std::vector<std::size_t> neural_ids;
  std::size_t attacked_skipped = 0;
  nlohmann::json config;
};

namespace internal {

inline void WarnIfSmall(const RunOptions& options, const std::string& name,
                        std::size_t evaluated) {
  if (options.log != nullptr && evaluated < options.min_evaluated) {
    *options.log << "warning: experiment '" << name << "' evaluated "
                 << evaluated << " samples (minimum " << options.min_evaluated
                 << ")\n";
  }
}

inline std::vector<DetectorVerdict> ClassifyAll(const Corpus& corpus,
                                                const Detector& detector,
                                                const RunOptions& options) {
  std::vector<DetectorVerdict> verdicts(corpus.size());
  ParallelFor(corpus.size(), options.workers, [&](std::size_t i) {
    verdicts[i] = detector.Classify(corpus[i].text);
  });
  return verdicts;
}

inline ExperimentReport RunAttackWithBaseline(
    std::string name, const Corpus& corpus, const Detector& detector,
    const AttackConfig& attack, std::uint64_t master_seed,
    const std::vector<DetectorVerdict>& baseline, const RunOptions& options) {
  attack.Validate();
  ExperimentReport report;
  report.name = std::move(name);
  report.config = {{"attack", attack.ToJson()},
                   {"master_seed", master_seed},
                   {"detector", detector.Describe()},
                   {"corpus", corpus.source()},
                   {"corpus_size", corpus.size()}};
  report.records.resize(corpus.size());
  ParallelFor(corpus.size(), options.workers, [&](std::size_t i) {
    const auto& sample = corpus[i];
    auto& record = report.records[i];
    record.id = sample.id;
    record.before = baseline[i];
    const auto outcome =
        ApplyAttack(attack, sample.text, DeriveSeed(master_seed, sample.id));
    record.skipped = outcome.skipped;
    record.achieved_count = outcome.achieved_count;
    record.quota = outcome.quota;
    if (!outcome.skipped) record.after = detector.Classify(outcome.text);
  });
  report.aggregates = Aggregates::From(report.records);
  if (report.aggregates.evaluated_count == 0) throw EmptyExperiment(report.name);
  WarnIfSmall(options, report.name, report.aggregates.evaluated_count);
  return report;
}

}  // namespace internal

// Unattacked verdicts; recall_after equals recall_before.
inline ExperimentReport RunBaseline(const Corpus& corpus,
                                    const Detector& detector,
                                    const RunOptions& options = {}) {
  if (corpus.empty()) throw EmptyExperiment("baseline");
  const auto verdicts = internal::ClassifyAll(corpus, detector, options);
  ExperimentReport report;
  report.name = "baseline";
  report.config = {{"attack", nullptr},
                   {"detector", detector.Describe()},
                   {"corpus", corpus.source()},
                   {"corpus_size", corpus.size()}};
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    report.records.push_back({corpus[i].id, false, 0, 0, verdicts[i], verdicts[i]});
  }
  report.aggregates = Aggregates::From(report.records);
  return report;
}

inline ExperimentReport RunAttack(std::string name, const Corpus& corpus,
                                  const Detector& detector,
                                  const AttackConfig& attack,
                                  std::uint64_t master_seed,
                                  const RunOptions& options = {}) {
  const auto baseline = internal::ClassifyAll(corpus, detector, options);
  return internal::RunAttackWithBaseline(std::move(name), corpus, detector,
                                         attack, master_seed, baseline, options);
}

// One report per pair set, in the order given, all under the same budget.
inline std::vector<ExperimentReport> RunPairComparison(
    const Corpus& corpus, const Detector& detector,
    const std::vector<PairSet>& pair_sets, double fraction,
    std::uint64_t master_seed, const RunOptions& options = {}) {
  if (pair_sets.empty()) throw InvalidArgument("no homoglyph pair sets given");
  const auto baseline = internal::ClassifyAll(corpus, detector, options);
  std::vector<ExperimentReport> reports;
  for (const auto& pairs : pair_sets) {
    reports.push_back(internal::RunAttackWithBaseline(
        "pairs " + pairs.Describe(), corpus, detector,
        AttackConfig::HomoglyphBudgeted(pairs, fraction), master_seed, baseline,
        options));
  }
  return reports;
}

inline ExperimentReport RunExhaustive(const Corpus& corpus,
                                      const Detector& detector,
                                      const PairSet& pairs,
                                      std::uint64_t master_seed,
                                      const RunOptions& options = {}) {
  return RunAttack("exhaustive " + pairs.Describe(), corpus, detector,
                   AttackConfig::HomoglyphExhaustive(pairs), master_seed,
                   options);
}

inline ExperimentReport RunMisspelling(
    const Corpus& corpus, const Detector& detector,
    std::shared_ptr<const MisspellingDictionary> dictionary, double fraction,
    std::uint64_t master_seed, ShortfallPolicy policy,
    const RunOptions& options = {}) {
  return RunAttack("misspelling", corpus, detector,
                   AttackConfig::Misspelling(std::move(dictionary), fraction,
                                             policy),
                   master_seed, options);
}

inline SweepReport RunSweep(const Corpus& corpus, const Detector& detector,
                            const PairSet& pairs,
                            const std::vector<double>& fractions,
                            std::uint64_t master_seed,
                            const RunOptions& options = {},
                            bool count_letters_only = false) {
  if (fractions.empty()) throw InvalidArgument("sweep needs at least one fraction");
  for (std::size_t i = 0; i < fractions.size(); ++i) {
    if (!(fractions[i] > 0.0 && fractions[i] <= 1.0)) {
      throw InvalidArgument("sweep fractions must lie in (0, 1]");
    }
    if (i > 0 && !(fractions[i] > fractions[i - 1])) {
      throw InvalidArgument("sweep fractions must be strictly increasing");
    }
  }
  const auto baseline = internal::ClassifyAll(corpus, detector, options);
  SweepReport report;
  report.config = {{"pairs", pairs.Describe()},
                   {"fractions", fractions},
                   {"count_letters_only", count_letters_only},
                   {"master_seed", master_seed},
                   {"detector", detector.Describe()},
                   {"corpus", corpus.source()},
                   {"corpus_size", corpus.size()}};
  for (double fraction : fractions) {
    SweepPoint point;
    point.fraction = fraction;
    try {
      const auto experiment = internal::RunAttackWithBaseline(
          "sweep", corpus, detector,
          AttackConfig::HomoglyphBudgeted(pairs, fraction, count_letters_only),
          master_seed, baseline, options);
      point.recall = experiment.aggregates.recall_after;
      point.evaluated_count = experiment.aggregates.evaluated_count;
      point.skipped_count = experiment.aggregates.skipped_count;
    } catch (const EmptyExperiment&) {
      point.skipped_count = corpus.size();
    }
    report.points.push_back(point);
  }
  return report;
}

// Buckets verdicts before and after the attack on n sampled texts. Samples
// whose classification fails (e.g. a remote transport error) or whose attack
// is skipped are recorded as unscored and left out of both tallies.
inline BucketReport RunTransfer(const Corpus& corpus, const Detector& detector,
                                const AttackConfig& attack, std::size_t n,
                                std::uint64_t master_seed,
                                const RunOptions& options = {}) {
  attack.Validate();
  const Corpus chosen = Subsample(corpus, n, master_seed);
  BucketReport report;
  report.config = {{"attack", attack.ToJson()},
                   {"samples", n},
                   {"master_seed", master_seed},
                   {"detector", detector.Describe()},
                   {"corpus", corpus.source()}};
  report.records.resize(chosen.size());
  ParallelFor(chosen.size(), options.workers, [&](std::size_t i) {
    const auto& sample = chosen[i];
    auto& record = report.records[i];
    record.id = sample.id;
    const auto outcome =
        ApplyAttack(attack, sample.text, DeriveSeed(master_seed, sample.id));
    if (outcome.skipped) {
      record.unscored_reason = "skipped";
      return;
    }
    try {
      const auto before = detector.Classify(sample.text);
      const auto after = detector.Classify(outcome.text);
      record.prob_before = before.prob_machine;
      record.prob_after = after.prob_machine;
      record.before = Bucketize(before);
      record.after = Bucketize(after);
    } catch (const TransportError& e) {
      record.unscored_reason = e.what();
    } catch (const ProtocolError& e) {
      record.unscored_reason = e.what();
    } catch (const ChecksumMismatch& e) {
      record.unscored_reason = e.what();
    }
  });
  for (Bucket bucket : kAllBuckets) {
    report.before[bucket] = 0;
    report.after[bucket] = 0;
  }
  for (const auto& record : report.records) {
    report.sample_ids.push_back(record.id);
    if (!record.before || !record.after) {
      ++report.unscored_count;
      continue;
    }
    ++report.before[*record.before];
    ++report.after[*record.after];
  }
  return report;
}

// Pooled mean ranks of n sampled human texts, n sampled neural texts and the
// same neural texts after the attack. Attacks that skip a sample drop it
// from the attacked pool only.
inline RankReport RunRankAnalysis(const NgramLM& lm, const Corpus& neural,
                                  const Corpus& human,
                                  const AttackConfig& attack, std::size_t n,
                                  std::uint64_t master_seed) {
  attack.Validate();
  const Corpus neural_chosen = Subsample(neural, n, master_seed);
  const Corpus human_chosen = Subsample(human, n, master_seed);
  RankReport report;
  report.config = {{"attack", attack.ToJson()},
                   {"samples", n},
                   {"master_seed", master_seed},
                   {"lm_order", lm.order()},
                   {"lm_smoothing_k", lm.smoothing_k()},
                   {"lm_vocabulary", lm.vocab_size()},
                   {"neural_corpus", neural.source()},
                   {"human_corpus", human.source()}};
  std::vector<std::string> attacked;
  for (const auto& sample : neural_chosen) {
    report.neural_ids.push_back(sample.id);
    auto outcome =
        ApplyAttack(attack, sample.text, DeriveSeed(master_seed, sample.id));
    if (outcome.skipped) {
      ++report.attacked_skipped;
    } else {
      attacked.push_back(std::move(outcome.text));
    }
  }
  for (const auto& sample : human_chosen) report.human_ids.push_back(sample.id);
  const auto pooled = [&](const Corpus& corpus, std::size_t& tokens) {
    double mean = MeanRank(lm, corpus);
    tokens = 0;
    for (const auto& sample : corpus) tokens += LmTokens(sample.text).size();
    return mean;
  };
  report.neural_mean = pooled(neural_chosen, report.neural_tokens);
  report.human_mean = pooled(human_chosen, report.human_tokens);
  if (attacked.empty()) throw EmptyExperiment("rank analysis (attacked)");
  report.attacked_mean =
      pooled(MakeCorpus(std::move(attacked), Label::kNeural, "attacked"),
             report.attacked_tokens);
  return report;
}

}  // namespace glyphbreak

#endif  // GLYPHBREAK_HARNESS_HPP_
