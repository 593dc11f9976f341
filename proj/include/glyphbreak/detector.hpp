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

#ifndef GLYPHBREAK_DETECTOR_HPP_
#define GLYPHBREAK_DETECTOR_HPP_

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "glyphbreak/corpus.hpp"
#include "glyphbreak/error.hpp"
#include "glyphbreak/ngram.hpp"

namespace glyphbreak {

enum class VerdictLabel { kMachine, kHuman };

struct DetectorVerdict {
  double prob_machine = 0.0;
  VerdictLabel label = VerdictLabel::kHuman;
};

// label is Machine iff prob_machine >= 0.5.
inline DetectorVerdict MakeVerdict(double prob_machine) {
  if (!(prob_machine >= 0.0 && prob_machine <= 1.0)) {
    throw InvalidArgument("prob_machine outside [0, 1]");
  }
  return {prob_machine, prob_machine >= 0.5 ? VerdictLabel::kMachine
                                            : VerdictLabel::kHuman};
}

// Black-box neural-text detector. Implementations must be safe to call
// concurrently from several threads.
class Detector {
 public:
  virtual ~Detector() = default;
  virtual DetectorVerdict Classify(std::string_view text) const = 0;
  // Short description echoed into reports.
  virtual nlohmann::json Describe() const = 0;
};

// Share of tokens whose rank is at most k_top; 0 for texts without tokens.
inline double FractionTopK(std::span<const std::size_t> ranks,
                           std::size_t k_top) {
  if (ranks.empty()) return 0.0;
  const auto hits = std::count_if(ranks.begin(), ranks.end(),
                                  [k_top](std::size_t r) { return r <= k_top; });
  return static_cast<double>(hits) / static_cast<double>(ranks.size());
}

inline double FractionTopK(const NgramLM& lm, std::string_view text,
                           std::size_t k_top) {
  if (k_top < 1) throw InvalidArgument("k_top must be at least 1");
  return FractionTopK(lm.TokenRanks(text).ranks, k_top);
}

struct LogisticMap {
  double threshold = 0.5;
  double slope = 1.0;

  // Exactly 0.5 at the threshold; strictly increasing for slope > 0.
  double operator()(double feature) const {
    return 1.0 / (1.0 + std::exp(-slope * (feature - threshold)));
  }
};

// Rank-histogram proxy detector: feature = FractionTopK, mapped through a
// calibrated logistic curve.
class RankDetector : public Detector {
 public:
  static constexpr int kFormatVersion = 1;

  RankDetector(std::shared_ptr<const NgramLM> lm, std::size_t k_top,
               LogisticMap map, double balanced_accuracy = 0.0)
      : lm_(std::move(lm)),
        k_top_(k_top),
        map_(map),
        balanced_accuracy_(balanced_accuracy) {
    if (!lm_) throw InvalidArgument("rank detector needs a language model");
    if (k_top_ < 1) throw InvalidArgument("k_top must be at least 1");
    if (!(map_.slope > 0.0)) throw InvalidArgument("slope must be positive");
  }

  double Feature(std::string_view text) const {
    return FractionTopK(*lm_, text, k_top_);
  }

  double ProbabilityForFeature(double feature) const { return map_(feature); }

  DetectorVerdict Classify(std::string_view text) const override {
    return MakeVerdict(map_(Feature(text)));
  }

  nlohmann::json Describe() const override {
    return {{"type", "rank-proxy"},
            {"k_top", k_top_},
            {"threshold", map_.threshold},
            {"slope", map_.slope}};
  }

  const NgramLM& lm() const { return *lm_; }
  std::size_t k_top() const { return k_top_; }
  double threshold() const { return map_.threshold; }
  double slope() const { return map_.slope; }
  double balanced_accuracy() const { return balanced_accuracy_; }

  // Parameters only; the model is stored separately.
  nlohmann::json ToJson() const {
    return {{"format", "glyphbreak-rank-detector"},
            {"version", kFormatVersion},
            {"k_top", k_top_},
            {"threshold", map_.threshold},
            {"slope", map_.slope},
            {"balanced_accuracy", balanced_accuracy_}};
  }

  static RankDetector FromJson(const nlohmann::json& j,
                               std::shared_ptr<const NgramLM> lm) {
    try {
      if (j.at("format") != "glyphbreak-rank-detector" ||
          j.at("version").get<int>() != kFormatVersion) {
        throw InvalidArgument("not a version 1 rank detector file");
      }
      return RankDetector(std::move(lm), j.at("k_top").get<std::size_t>(),
                          {j.at("threshold").get<double>(),
                           j.at("slope").get<double>()},
                          j.value("balanced_accuracy", 0.0));
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed detector file: ") +
                            e.what());
    }
  }

  void Save(const std::string& path) const {
    std::ofstream out(path);
    if (!out) throw IoError("cannot write detector: " + path);
    out << ToJson().dump(2) << '\n';
  }

  static RankDetector Load(const std::string& path,
                           std::shared_ptr<const NgramLM> lm) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open detector: " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("malformed detector file " + path + ": " +
                            e.what());
    }
    return FromJson(j, std::move(lm));
  }

 private:
  std::shared_ptr<const NgramLM> lm_;
  std::size_t k_top_;
  LogisticMap map_;
  double balanced_accuracy_;
};

struct ThresholdChoice {
  double threshold = 0.5;
  double balanced_accuracy = 0.0;
};

inline double BalancedAccuracy(std::span<const double> machine,
                               std::span<const double> human,
                               double threshold) {
  const auto tp = std::count_if(machine.begin(), machine.end(),
                                [&](double f) { return f >= threshold; });
  const auto tn = std::count_if(human.begin(), human.end(),
                                [&](double f) { return f < threshold; });
  return 0.5 * (static_cast<double>(tp) / static_cast<double>(machine.size()) +
                static_cast<double>(tn) / static_cast<double>(human.size()));
}

// Scans every midpoint between consecutive distinct observed feature values
// and keeps the one with the highest balanced accuracy (lowest on ties).
inline ThresholdChoice ChooseThreshold(std::span<const double> machine,
                                       std::span<const double> human) {
  if (machine.empty() || human.empty()) throw EmptyCorpus();
  std::vector<double> values(machine.begin(), machine.end());
  values.insert(values.end(), human.begin(), human.end());
  std::sort(values.begin(), values.end());
  values.erase(std::unique(values.begin(), values.end()), values.end());
  if (values.size() < 2) throw DegenerateCalibration();
  ThresholdChoice best{0.0, -1.0};
  for (std::size_t i = 0; i + 1 < values.size(); ++i) {
    const double candidate = 0.5 * (values[i] + values[i + 1]);
    const double score = BalancedAccuracy(machine, human, candidate);
    if (score > best.balanced_accuracy) best = {candidate, score};
  }
  return best;
}

inline constexpr double kMinSlope = 1e-3;
inline constexpr double kMaxSlope = 100.0;

// Maximum-likelihood slope of sigma(slope * (f - threshold)) with the
// threshold held fixed, clamped to [kMinSlope, kMaxSlope]. The
// log-likelihood is concave in the slope; its derivative is bisected.
inline double FitSlope(std::span<const double> machine,
                       std::span<const double> human, double threshold) {
  const auto gradient = [&](double slope) {
    const LogisticMap map{threshold, slope};
    double g = 0.0;
    for (double f : machine) g += (1.0 - map(f)) * (f - threshold);
    for (double f : human) g += (0.0 - map(f)) * (f - threshold);
    return g;
  };
  if (gradient(kMinSlope) <= 0.0) return kMinSlope;
  if (gradient(kMaxSlope) >= 0.0) return kMaxSlope;
  double lo = kMinSlope, hi = kMaxSlope;
  for (int i = 0; i < 200 && hi - lo > 1e-9; ++i) {
    const double mid = 0.5 * (lo + hi);
    (gradient(mid) > 0.0 ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

inline RankDetector Calibrate(std::shared_ptr<const NgramLM> lm,
                              std::size_t k_top, const Corpus& machine_corpus,
                              const Corpus& human_corpus) {
  if (!lm) throw InvalidArgument("calibration needs a language model");
  if (machine_corpus.empty() || human_corpus.empty()) throw EmptyCorpus();
  const auto features = [&](const Corpus& corpus) {
    std::vector<double> out;
    out.reserve(corpus.size());
    for (const auto& sample : corpus) {
      out.push_back(FractionTopK(*lm, sample.text, k_top));
    }
    return out;
  };
  const auto machine = features(machine_corpus);
  const auto human = features(human_corpus);
  const auto choice = ChooseThreshold(machine, human);
  const double slope = FitSlope(machine, human, choice.threshold);
  return RankDetector(std::move(lm), k_top, {choice.threshold, slope},
                      choice.balanced_accuracy);
}

// Four-way verdict mirroring the GROVER demo's messages. Cutoffs 0.9 / 0.5 /
// 0.1 are this library's convention.
enum class Bucket { kMachinePP, kMachineP, kHumanP, kHumanPP };

inline constexpr std::array<Bucket, 4> kAllBuckets = {
    Bucket::kMachinePP, Bucket::kMachineP, Bucket::kHumanP, Bucket::kHumanPP};

inline Bucket Bucketize(const DetectorVerdict& verdict) {
  const double p = verdict.prob_machine;
  if (p >= 0.9) return Bucket::kMachinePP;
  if (p >= 0.5) return Bucket::kMachineP;
  if (p > 0.1) return Bucket::kHumanP;
  return Bucket::kHumanPP;
}

inline std::string_view BucketName(Bucket bucket) {
  switch (bucket) {
    case Bucket::kMachinePP: return "Machine++";
    case Bucket::kMachineP: return "Machine+";
    case Bucket::kHumanP: return "Human+";
    case Bucket::kHumanPP: return "Human++";
  }
  return "?";
}

}  // namespace glyphbreak

#endif  // GLYPHBREAK_DETECTOR_HPP_
