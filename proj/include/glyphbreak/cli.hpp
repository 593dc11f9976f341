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

// Command-line front end. Dispatch() is the whole program minus process
// plumbing and takes its streams as arguments.
//
// Exit status: 0 success, 1 runtime error, 2 usage error, 3 invalid
// configuration.

#ifndef GLYPHBREAK_CLI_HPP_
#define GLYPHBREAK_CLI_HPP_

#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "glyphbreak/corpus.hpp"
#include "glyphbreak/detector.hpp"
#include "glyphbreak/error.hpp"
#include "glyphbreak/harness.hpp"
#include "glyphbreak/homoglyph.hpp"
#include "glyphbreak/misspell.hpp"
#include "glyphbreak/ngram.hpp"
#include "glyphbreak/remote.hpp"
#include "glyphbreak/report.hpp"

namespace glyphbreak::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitValidation = 3;

inline constexpr const char* kDetectorUrlEnv = "GLYPHBREAK_DETECTOR_URL";

struct AttackParams {
  std::string kind = "homoglyph";  // homoglyph | misspelling
  std::optional<std::string> pairs;
  bool exhaustive = false;
  std::optional<double> fraction;
  std::string policy = "strict";  // strict | best-effort
  bool count_letters_only = false;
};

// JSON config keys are exactly these field names; flags override them.
struct RunConfig {
  std::optional<std::string> train_corpus;
  std::optional<std::string> neural_corpus;
  std::optional<std::string> human_corpus;
  std::optional<std::string> dictionary;
  std::optional<std::string> homoglyph_table;
  std::optional<std::string> lm;
  std::string detector = "proxy";  // proxy | remote
  std::optional<std::string> detector_file;
  std::optional<std::string> detector_url;
  AttackParams attack;
  std::optional<std::uint64_t> seed;
  std::string output_dir = ".";
  unsigned workers = 4;
  std::optional<std::size_t> samples;
  std::vector<double> fractions = DefaultSweepFractions();
  std::vector<std::string> pair_sets = {"e,a", "e", "e:U+00E9", "a,c",
                                        "a",   "c", "p"};
  double homoglyph_fraction = kDefaultHomoglyphFraction;
  std::string exhaustive_pairs = "e,a";
  double misspelling_fraction = kDefaultMisspellingFraction;
  std::size_t min_evaluated = kDefaultMinEvaluated;
  int order = 2;
  double smoothing_k = 1.0;
  std::size_t k_top = 10;
  std::optional<std::string> input;
  std::optional<std::string> out;
};

namespace internal {

template <typename T>
void Read(const nlohmann::json& j, const char* key, T& field) {
  if (j.contains(key) && !j[key].is_null()) field = j[key].get<T>();
}

template <typename T>
void Read(const nlohmann::json& j, const char* key, std::optional<T>& field) {
  if (j.contains(key) && !j[key].is_null()) field = j[key].get<T>();
}

template <typename T>
nlohmann::json Opt(const std::optional<T>& v) {
  return v ? nlohmann::json(*v) : nlohmann::json();
}

}  // namespace internal

inline RunConfig ConfigFromJson(const nlohmann::json& j) {
  if (!j.is_object()) throw ValidationError("config must be a JSON object");
  static const std::vector<std::string> kKnown = {
      "train_corpus", "neural_corpus", "human_corpus", "dictionary",
      "homoglyph_table", "lm", "detector", "detector_file", "detector_url",
      "attack", "seed", "output_dir", "workers", "samples", "fractions",
      "pair_sets", "homoglyph_fraction", "exhaustive_pairs",
      "misspelling_fraction", "min_evaluated", "order", "smoothing_k", "k_top",
      "input", "out"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      throw ValidationError("unknown config key '" + key + "'");
    }
  }
  RunConfig c;
  try {
    using internal::Read;
    Read(j, "train_corpus", c.train_corpus);
    Read(j, "neural_corpus", c.neural_corpus);
    Read(j, "human_corpus", c.human_corpus);
    Read(j, "dictionary", c.dictionary);
    Read(j, "homoglyph_table", c.homoglyph_table);
    Read(j, "lm", c.lm);
    Read(j, "detector", c.detector);
    Read(j, "detector_file", c.detector_file);
    Read(j, "detector_url", c.detector_url);
    if (j.contains("attack")) {
      const auto& a = j["attack"];
      Read(a, "kind", c.attack.kind);
      Read(a, "pairs", c.attack.pairs);
      Read(a, "exhaustive", c.attack.exhaustive);
      Read(a, "fraction", c.attack.fraction);
      Read(a, "policy", c.attack.policy);
      Read(a, "count_letters_only", c.attack.count_letters_only);
    }
    Read(j, "seed", c.seed);
    Read(j, "output_dir", c.output_dir);
    Read(j, "workers", c.workers);
    Read(j, "samples", c.samples);
    Read(j, "fractions", c.fractions);
    Read(j, "pair_sets", c.pair_sets);
    Read(j, "homoglyph_fraction", c.homoglyph_fraction);
    Read(j, "exhaustive_pairs", c.exhaustive_pairs);
    Read(j, "misspelling_fraction", c.misspelling_fraction);
    Read(j, "min_evaluated", c.min_evaluated);
    Read(j, "order", c.order);
    Read(j, "smoothing_k", c.smoothing_k);
    Read(j, "k_top", c.k_top);
    Read(j, "input", c.input);
    Read(j, "out", c.out);
  } catch (const nlohmann::json::exception& e) {
    throw ValidationError(std::string("bad config value: ") + e.what());
  }
  return c;
}

inline nlohmann::json ConfigToJson(const RunConfig& c) {
  using internal::Opt;
  return {{"train_corpus", Opt(c.train_corpus)},
          {"neural_corpus", Opt(c.neural_corpus)},
          {"human_corpus", Opt(c.human_corpus)},
          {"dictionary", Opt(c.dictionary)},
          {"homoglyph_table", Opt(c.homoglyph_table)},
          {"lm", Opt(c.lm)},
          {"detector", c.detector},
          {"detector_file", Opt(c.detector_file)},
          {"detector_url", Opt(c.detector_url)},
          {"attack",
           {{"kind", c.attack.kind},
            {"pairs", Opt(c.attack.pairs)},
            {"exhaustive", c.attack.exhaustive},
            {"fraction", Opt(c.attack.fraction)},
            {"policy", c.attack.policy},
            {"count_letters_only", c.attack.count_letters_only}}},
          {"seed", Opt(c.seed)},
          {"output_dir", c.output_dir},
          {"workers", c.workers},
          {"samples", Opt(c.samples)},
          {"fractions", c.fractions},
          {"pair_sets", c.pair_sets},
          {"homoglyph_fraction", c.homoglyph_fraction},
          {"exhaustive_pairs", c.exhaustive_pairs},
          {"misspelling_fraction", c.misspelling_fraction},
          {"min_evaluated", c.min_evaluated},
          {"order", c.order},
          {"smoothing_k", c.smoothing_k},
          {"k_top", c.k_top},
          {"input", Opt(c.input)},
          {"out", Opt(c.out)}};
}

namespace internal {

// Command-line overrides. Each value is applied only if its flag was given.
struct Flags {
  std::string config_path;
  RunConfig values;
  std::string fractions_list;
  std::vector<std::string> pair_sets;
};

inline void RequirePath(const std::optional<std::string>& path,
                        const char* name) {
  if (!path) throw ValidationError(std::string("missing required ") + name);
  if (!std::filesystem::exists(*path)) {
    throw ValidationError(std::string(name) + " does not exist: " + *path);
  }
}

inline void RequireOptionalPath(const std::optional<std::string>& path,
                                const char* name) {
  if (path) RequirePath(path, name);
}

inline std::uint64_t RequireSeed(const RunConfig& c) {
  if (!c.seed) {
    throw ValidationError("a --seed is required; there is no clock-based default");
  }
  return *c.seed;
}

inline std::vector<double> ParseFractionList(const std::string& list) {
  std::vector<double> out;
  std::stringstream stream(list);
  for (std::string item; std::getline(stream, item, ',');) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ValidationError("bad fraction '" + item + "'");
    }
  }
  return out;
}

inline HomoglyphTable LoadTable(const RunConfig& c) {
  return c.homoglyph_table ? HomoglyphTable::Load(*c.homoglyph_table)
                           : HomoglyphTable::Default();
}

inline ShortfallPolicy ParsePolicy(const std::string& policy) {
  if (policy == "strict") return ShortfallPolicy::kStrict;
  if (policy == "best-effort") return ShortfallPolicy::kBestEffort;
  throw ValidationError("policy must be 'strict' or 'best-effort'");
}

inline std::shared_ptr<const MisspellingDictionary> LoadDictionary(
    const RunConfig& c, std::ostream& err) {
  RequirePath(c.dictionary, "dictionary");
  auto parsed = LoadMisspellingList(*c.dictionary);
  if (!parsed.malformed_lines.empty() || parsed.skipped_multiword > 0 ||
      parsed.skipped_invalid > 0) {
    err << "dictionary: " << parsed.dictionary.size() << " words, "
        << parsed.malformed_lines.size() << " malformed lines, "
        << parsed.skipped_multiword << " multi-word corrections skipped, "
        << parsed.skipped_invalid << " invalid misspellings skipped\n";
  }
  return std::make_shared<const MisspellingDictionary>(
      std::move(parsed.dictionary));
}

inline bool IsMisspellingKind(const std::string& kind) {
  if (kind == "misspelling" || kind == "misspell") return true;
  if (kind == "homoglyph") return false;
  throw ValidationError("attack kind must be 'homoglyph' or 'misspelling'");
}

// Builds the harness attack from the "attack" section. Homoglyph pairs
// default to default_pairs.
inline AttackConfig BuildAttack(const RunConfig& c,
                                const std::string& default_pairs,
                                bool default_exhaustive, std::ostream& err) {
  const auto& a = c.attack;
  if (a.fraction && !(*a.fraction > 0.0 && *a.fraction <= 1.0)) {
    throw ValidationError("attack fraction must lie in (0, 1]");
  }
  if (IsMisspellingKind(a.kind)) {
    return AttackConfig::Misspelling(LoadDictionary(c, err),
                                     a.fraction.value_or(kDefaultMisspellingFraction),
                                     ParsePolicy(a.policy));
  }
  const auto pairs = LoadTable(c).Select(a.pairs.value_or(default_pairs));
  if (a.exhaustive || (default_exhaustive && !a.fraction)) {
    return AttackConfig::HomoglyphExhaustive(pairs);
  }
  return AttackConfig::HomoglyphBudgeted(
      pairs, a.fraction.value_or(kDefaultHomoglyphFraction),
      a.count_letters_only);
}

struct LoadedDetector {
  std::shared_ptr<const NgramLM> lm;
  std::unique_ptr<Detector> detector;
};

inline LoadedDetector BuildDetector(const RunConfig& c) {
  LoadedDetector loaded;
  if (c.detector == "remote") {
    auto url = c.detector_url;
    if (!url) {
      if (const char* env = std::getenv(kDetectorUrlEnv); env && *env) url = env;
    }
    if (!url) {
      throw ValidationError(std::string("remote detector needs --detector-url or ") +
                            kDetectorUrlEnv);
    }
    try {
      loaded.detector = std::make_unique<RemoteDetector>(*url);
    } catch (const InvalidArgument& e) {
      throw ValidationError(e.what());
    }
    return loaded;
  }
  if (c.detector != "proxy") {
    throw ValidationError("detector must be 'proxy' or 'remote'");
  }
  RequirePath(c.lm, "lm");
  RequirePath(c.detector_file, "detector_file");
  loaded.lm = std::make_shared<const NgramLM>(NgramLM::Load(*c.lm));
  loaded.detector = std::make_unique<RankDetector>(
      RankDetector::Load(*c.detector_file, loaded.lm));
  return loaded;
}

inline RunOptions MakeRunOptions(const RunConfig& c, std::ostream& err) {
  RunOptions options;
  options.workers = c.workers == 0 ? 1 : c.workers;
  options.min_evaluated = c.min_evaluated;
  options.log = &err;
  return options;
}

inline std::filesystem::path OutputDir(const RunConfig& c) {
  std::filesystem::path dir(c.output_dir);
  std::filesystem::create_directories(dir);
  return dir;
}

inline void WriteFile(const std::filesystem::path& path,
                      const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << contents;
  if (!out) throw IoError("write failed: " + path.string());
}

inline void WriteReport(const RunConfig& c, const std::string& stem,
                        nlohmann::json report, const std::string& csv,
                        std::ostream& err) {
  const auto dir = OutputDir(c);
  report["run_config"] = ConfigToJson(c);
  WriteFile(dir / (stem + ".json"), report.dump(2) + "\n");
  WriteFile(dir / (stem + ".csv"), csv);
  err << "wrote " << (dir / (stem + ".json")).string() << " and "
      << (dir / (stem + ".csv")).string() << "\n";
}

inline std::string ReadAll(std::istream& in) {
  return std::string(std::istreambuf_iterator<char>(in),
                     std::istreambuf_iterator<char>());
}

inline int RunAttackCommand(const RunConfig& c, std::istream& in,
                            std::ostream& out, std::ostream& err) {
  RequireOptionalPath(c.input, "input");
  RequireOptionalPath(c.homoglyph_table, "homoglyph_table");
  const bool misspelling = IsMisspellingKind(c.attack.kind);
  if (misspelling || !c.attack.exhaustive) RequireSeed(c);
  const auto attack = BuildAttack(c, "e,a", false, err);

  std::string text;
  if (c.input) {
    std::ifstream file(*c.input, std::ios::binary);
    if (!file) throw IoError("cannot open input: " + *c.input);
    text = ReadAll(file);
  } else {
    text = ReadAll(in);
  }
  if (!IsValidUtf8(text)) throw InvalidArgument("input is not valid UTF-8");
  const auto outcome = ApplyAttack(attack, text, c.seed.value_or(0));
  if (outcome.skipped) {
    err << "error: attack cannot meet its quota of " << outcome.quota
        << "; sample would be discarded\n";
    return kExitRuntime;
  }
  out << outcome.text;
  out.flush();
  err << "replaced " << outcome.achieved_count << " ("
      << AttackKindName(attack.kind) << ")\n";
  return kExitOk;
}

inline int RunTrainLm(const RunConfig& c, std::ostream& err) {
  RequirePath(c.train_corpus, "train_corpus");
  if (c.order < 1) throw ValidationError("order must be at least 1");
  if (!(c.smoothing_k > 0.0)) throw ValidationError("smoothing_k must be positive");
  const auto corpus = LoadCorpus(*c.train_corpus, Label::kNeural);
  const auto lm = NgramLM::Train(corpus, c.order, c.smoothing_k);
  const std::string path =
      c.out.value_or((OutputDir(c) / "lm.json").string());
  lm.Save(path);
  err << "trained order-" << lm.order() << " model on " << corpus.size()
      << " samples, vocabulary " << lm.vocab_size() << ", wrote " << path
      << "\n";
  return kExitOk;
}

inline int RunCalibrate(const RunConfig& c, std::ostream& err) {
  RequirePath(c.lm, "lm");
  RequirePath(c.neural_corpus, "neural_corpus");
  RequirePath(c.human_corpus, "human_corpus");
  if (c.k_top < 1) throw ValidationError("k_top must be at least 1");
  auto lm = std::make_shared<const NgramLM>(NgramLM::Load(*c.lm));
  const auto detector =
      Calibrate(lm, c.k_top, LoadCorpus(*c.neural_corpus, Label::kNeural),
                LoadCorpus(*c.human_corpus, Label::kHuman));
  const std::string path =
      c.out.value_or((OutputDir(c) / "detector.json").string());
  detector.Save(path);
  err << "threshold " << detector.threshold() << ", slope "
      << detector.slope() << ", balanced accuracy "
      << detector.balanced_accuracy() << ", wrote " << path << "\n";
  return kExitOk;
}

inline int RunEval(const RunConfig& c, std::ostream& err) {
  RequirePath(c.neural_corpus, "neural_corpus");
  RequireOptionalPath(c.homoglyph_table, "homoglyph_table");
  const auto seed = RequireSeed(c);
  const auto corpus = LoadCorpus(*c.neural_corpus, Label::kNeural);
  const auto loaded = BuildDetector(c);
  const auto options = MakeRunOptions(c, err);
  const auto table = LoadTable(c);

  std::vector<PairSet> pair_sets;
  for (const auto& selector : c.pair_sets) pair_sets.push_back(table.Select(selector));
  const auto exhaustive = table.Select(c.exhaustive_pairs);

  std::vector<ExperimentReport> reports;
  reports.push_back(RunBaseline(corpus, *loaded.detector, options));
  for (const auto& pairs : pair_sets) {
    try {
      auto r = RunPairComparison(corpus, *loaded.detector, {pairs},
                                 c.homoglyph_fraction, seed, options);
      reports.push_back(std::move(r.front()));
    } catch (const EmptyExperiment& e) {
      err << "warning: " << e.what() << "\n";
    }
  }
  reports.push_back(
      RunExhaustive(corpus, *loaded.detector, exhaustive, seed, options));
  if (c.dictionary) {
    try {
      reports.push_back(RunMisspelling(corpus, *loaded.detector,
                                       LoadDictionary(c, err),
                                       c.misspelling_fraction, seed,
                                       ParsePolicy(c.attack.policy), options));
    } catch (const EmptyExperiment& e) {
      err << "warning: " << e.what() << "\n";
    }
  }
  nlohmann::json all = nlohmann::json::array();
  for (const auto& r : reports) all.push_back(ToJson(r));
  std::ostringstream csv;
  WriteCsv(csv, reports);
  WriteReport(c, "eval", {{"experiments", std::move(all)}}, csv.str(), err);
  return kExitOk;
}

inline int RunSweepCommand(const RunConfig& c, std::ostream& err) {
  RequirePath(c.neural_corpus, "neural_corpus");
  RequireOptionalPath(c.homoglyph_table, "homoglyph_table");
  const auto seed = RequireSeed(c);
  const auto corpus = LoadCorpus(*c.neural_corpus, Label::kNeural);
  const auto loaded = BuildDetector(c);
  const auto pairs = LoadTable(c).Select(c.attack.pairs.value_or("e"));
  const auto report =
      RunSweep(corpus, *loaded.detector, pairs, c.fractions, seed,
               MakeRunOptions(c, err), c.attack.count_letters_only);
  std::ostringstream csv;
  WriteCsv(csv, report);
  WriteReport(c, "sweep", ToJson(report), csv.str(), err);
  return kExitOk;
}

inline int RunTransferCommand(const RunConfig& c, std::ostream& err) {
  RequirePath(c.neural_corpus, "neural_corpus");
  RequireOptionalPath(c.homoglyph_table, "homoglyph_table");
  const auto seed = RequireSeed(c);
  const auto corpus = LoadCorpus(*c.neural_corpus, Label::kNeural);
  const auto loaded = BuildDetector(c);
  const auto attack = BuildAttack(c, "e,a", true, err);
  const auto report =
      RunTransfer(corpus, *loaded.detector, attack,
                  c.samples.value_or(kDefaultTransferSamples), seed,
                  MakeRunOptions(c, err));
  std::ostringstream csv;
  WriteCsv(csv, report);
  WriteReport(c, "transfer", ToJson(report), csv.str(), err);
  return kExitOk;
}

inline int RunRanksCommand(const RunConfig& c, std::ostream& err) {
  RequirePath(c.lm, "lm");
  RequirePath(c.neural_corpus, "neural_corpus");
  RequirePath(c.human_corpus, "human_corpus");
  RequireOptionalPath(c.homoglyph_table, "homoglyph_table");
  const auto seed = RequireSeed(c);
  const auto lm = NgramLM::Load(*c.lm);
  const auto attack = BuildAttack(c, "e,a", true, err);
  const auto report = RunRankAnalysis(
      lm, LoadCorpus(*c.neural_corpus, Label::kNeural),
      LoadCorpus(*c.human_corpus, Label::kHuman), attack,
      c.samples.value_or(kDefaultRankSamples), seed);
  std::ostringstream csv;
  WriteCsv(csv, report);
  WriteReport(c, "ranks", ToJson(report), csv.str(), err);
  return kExitOk;
}

}  // namespace internal

inline int Dispatch(const std::vector<std::string>& args, std::istream& in,
                    std::ostream& out, std::ostream& err) {
  CLI::App app{"Homoglyph and misspelling attacks on neural-text detectors",
               "glyphbreak"};
  app.require_subcommand(1, 1);
  internal::Flags flags;
  auto& v = flags.values;

  struct Sub {
    CLI::App* app;
    std::string name;
  };
  std::vector<Sub> subs;
  const auto add = [&](const char* name, const char* description) {
    auto* sub = app.add_subcommand(name, description);
    sub->add_option("--config", flags.config_path, "JSON run config")
        ->check(CLI::ExistingFile);
    sub->add_option("--seed", v.seed, "64-bit master seed");
    sub->add_option("--output-dir", v.output_dir, "report directory");
    subs.push_back({sub, name});
    return sub;
  };
  const auto add_attack = [&](CLI::App* sub) {
    sub->add_option("--kind", v.attack.kind, "homoglyph | misspelling");
    sub->add_option("--pairs", v.attack.pairs,
                    "homoglyph selectors, e.g. e,a or e:U+00E9");
    sub->add_flag("--exhaustive", v.attack.exhaustive,
                  "replace every occurrence");
    sub->add_option("--fraction", v.attack.fraction, "replacement budget");
    sub->add_option("--policy", v.attack.policy, "strict | best-effort");
    sub->add_flag("--count-letters-only", v.attack.count_letters_only,
                  "budget counts letters only");
    sub->add_option("--dictionary", v.dictionary, "misspelling list");
    sub->add_option("--homoglyph-table", v.homoglyph_table,
                    "homoglyph table file");
  };
  const auto add_detector = [&](CLI::App* sub) {
    sub->add_option("--detector", v.detector, "proxy | remote");
    sub->add_option("--detector-file", v.detector_file,
                    "calibrated proxy detector");
    sub->add_option("--detector-url", v.detector_url, "remote detector URL");
    sub->add_option("--lm", v.lm, "n-gram model");
    sub->add_option("--workers", v.workers, "concurrent classifications");
    sub->add_option("--min-evaluated", v.min_evaluated,
                    "warn below this many evaluated samples");
  };

  auto* attack = add("attack", "perturb text from a file or stdin");
  add_attack(attack);
  attack->add_option("--input", v.input, "input text file (default stdin)");

  auto* train = add("train-lm", "train the n-gram model");
  train->add_option("--train-corpus", v.train_corpus, "JSONL corpus");
  train->add_option("--order", v.order, "n-gram order");
  train->add_option("--smoothing-k", v.smoothing_k, "add-k constant");
  train->add_option("--out", v.out, "model path");

  auto* calibrate = add("calibrate", "calibrate the rank proxy detector");
  calibrate->add_option("--lm", v.lm, "n-gram model");
  calibrate->add_option("--neural-corpus", v.neural_corpus, "machine texts");
  calibrate->add_option("--human-corpus", v.human_corpus, "human texts");
  calibrate->add_option("--k-top", v.k_top, "rank cutoff");
  calibrate->add_option("--out", v.out, "detector path");

  auto* eval = add("eval", "baseline, pair comparison, exhaustive, misspelling");
  add_detector(eval);
  eval->add_option("--neural-corpus", v.neural_corpus, "neural texts");
  eval->add_option("--pair-sets", flags.pair_sets, "pair sets to compare");
  eval->add_option("--homoglyph-fraction", v.homoglyph_fraction,
                   "budget for the pair comparison");
  eval->add_option("--exhaustive-pairs", v.exhaustive_pairs,
                   "pairs for the exhaustive attack");
  eval->add_option("--misspelling-fraction", v.misspelling_fraction,
                   "share of words to misspell");
  eval->add_option("--dictionary", v.dictionary, "misspelling list");
  eval->add_option("--policy", v.attack.policy, "strict | best-effort");
  eval->add_option("--homoglyph-table", v.homoglyph_table,
                   "homoglyph table file");

  auto* sweep = add("sweep", "recall against replacement budget");
  add_detector(sweep);
  sweep->add_option("--neural-corpus", v.neural_corpus, "neural texts");
  sweep->add_option("--pairs", v.attack.pairs, "homoglyph selectors");
  sweep->add_option("--fractions", flags.fractions_list,
                    "comma-separated budgets");
  sweep->add_flag("--count-letters-only", v.attack.count_letters_only,
                  "budget counts letters only");
  sweep->add_option("--homoglyph-table", v.homoglyph_table,
                    "homoglyph table file");

  auto* transfer = add("transfer", "bucketed verdicts before and after");
  add_detector(transfer);
  add_attack(transfer);
  transfer->add_option("--neural-corpus", v.neural_corpus, "neural texts");
  transfer->add_option("--samples", v.samples, "sample count");

  auto* ranks = add("ranks", "mean token ranks: human, neural, attacked");
  add_attack(ranks);
  ranks->add_option("--lm", v.lm, "n-gram model");
  ranks->add_option("--neural-corpus", v.neural_corpus, "neural texts");
  ranks->add_option("--human-corpus", v.human_corpus, "human texts");
  ranks->add_option("--samples", v.samples, "sample count");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  const Sub* active = nullptr;
  for (const auto& sub : subs) {
    if (sub.app->parsed()) active = &sub;
  }
  if (active == nullptr) {
    err << app.help();
    return kExitUsage;
  }

  // Start from the config file, then let every flag that was given win.
  RunConfig config;
  try {
    if (!flags.config_path.empty()) {
      std::ifstream file(flags.config_path);
      nlohmann::json j;
      try {
        file >> j;
      } catch (const nlohmann::json::exception& e) {
        throw ValidationError("config is not valid JSON: " +
                              std::string(e.what()));
      }
      config = ConfigFromJson(j);
    }
    const auto given = [&](const char* flag) {
      return active->app->get_option_no_throw(flag) != nullptr &&
             active->app->count(flag) > 0;
    };
    if (given("--seed")) config.seed = v.seed;
    if (given("--output-dir")) config.output_dir = v.output_dir;
    if (given("--kind")) config.attack.kind = v.attack.kind;
    if (given("--pairs")) config.attack.pairs = v.attack.pairs;
    if (given("--exhaustive")) config.attack.exhaustive = v.attack.exhaustive;
    if (given("--fraction")) config.attack.fraction = v.attack.fraction;
    if (given("--policy")) config.attack.policy = v.attack.policy;
    if (given("--count-letters-only")) {
      config.attack.count_letters_only = v.attack.count_letters_only;
    }
    if (given("--dictionary")) config.dictionary = v.dictionary;
    if (given("--homoglyph-table")) config.homoglyph_table = v.homoglyph_table;
    if (given("--input")) config.input = v.input;
    if (given("--train-corpus")) config.train_corpus = v.train_corpus;
    if (given("--order")) config.order = v.order;
    if (given("--smoothing-k")) config.smoothing_k = v.smoothing_k;
    if (given("--out")) config.out = v.out;
    if (given("--lm")) config.lm = v.lm;
    if (given("--neural-corpus")) config.neural_corpus = v.neural_corpus;
    if (given("--human-corpus")) config.human_corpus = v.human_corpus;
    if (given("--k-top")) config.k_top = v.k_top;
    if (given("--detector")) config.detector = v.detector;
    if (given("--detector-file")) config.detector_file = v.detector_file;
    if (given("--detector-url")) {
      config.detector_url = v.detector_url;
      if (!given("--detector")) config.detector = "remote";
    }
    if (given("--workers")) config.workers = v.workers;
    if (given("--min-evaluated")) config.min_evaluated = v.min_evaluated;
    if (given("--pair-sets")) config.pair_sets = flags.pair_sets;
    if (given("--homoglyph-fraction")) {
      config.homoglyph_fraction = v.homoglyph_fraction;
    }
    if (given("--exhaustive-pairs")) config.exhaustive_pairs = v.exhaustive_pairs;
    if (given("--misspelling-fraction")) {
      config.misspelling_fraction = v.misspelling_fraction;
    }
    if (given("--fractions")) {
      config.fractions = internal::ParseFractionList(flags.fractions_list);
    }
    if (given("--samples")) config.samples = v.samples;

    const auto& name = active->name;
    if (name == "attack") return internal::RunAttackCommand(config, in, out, err);
    if (name == "train-lm") return internal::RunTrainLm(config, err);
    if (name == "calibrate") return internal::RunCalibrate(config, err);
    if (name == "eval") return internal::RunEval(config, err);
    if (name == "sweep") return internal::RunSweepCommand(config, err);
    if (name == "transfer") return internal::RunTransferCommand(config, err);
    if (name == "ranks") return internal::RunRanksCommand(config, err);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InvalidArgument& e) {
    // Bad selectors, fractions or table files are configuration problems.
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  err << app.help();
  return kExitUsage;
}

}  // namespace glyphbreak::cli

#endif  // GLYPHBREAK_CLI_HPP_
