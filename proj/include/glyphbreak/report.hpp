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

// JSON (full per-sample detail) and CSV (aggregates) serialization of
// harness reports. Column names are stable:
//
//   experiments: experiment,attack,pairs,fraction,evaluated,skipped,
//                recall_before,recall_after,avg_confidence_human_before,
//                avg_confidence_human_after
//   sweep:       fraction,recall,evaluated,skipped
//   transfer:    bucket,before,after
//   ranks:       category,mean_rank,tokens,samples

#ifndef GLYPHBREAK_REPORT_HPP_
#define GLYPHBREAK_REPORT_HPP_

#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

#include "json.hpp"

#include "glyphbreak/detector.hpp"
#include "glyphbreak/harness.hpp"

namespace glyphbreak {

inline std::string FormatFixed(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.6f", value);
  return buffer;
}

namespace internal {

inline nlohmann::json VerdictJson(const DetectorVerdict& v) {
  return {{"prob_machine", v.prob_machine},
          {"label", v.label == VerdictLabel::kMachine ? "machine" : "human"}};
}

inline std::string CsvField(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + '"';
}

}  // namespace internal

inline nlohmann::json ToJson(const Aggregates& a) {
  return {{"evaluated_count", a.evaluated_count},
          {"skipped_count", a.skipped_count},
          {"recall_before", a.recall_before},
          {"recall_after", a.recall_after},
          {"avg_confidence_human_before", a.avg_confidence_human_before},
          {"avg_confidence_human_after", a.avg_confidence_human_after}};
}

inline nlohmann::json ToJson(const ExperimentReport& report) {
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& r : report.records) {
    nlohmann::json s = {{"id", r.id},
                        {"skipped", r.skipped},
                        {"achieved_count", r.achieved_count},
                        {"quota", r.quota},
                        {"before", internal::VerdictJson(r.before)}};
    s["after"] = r.after ? internal::VerdictJson(*r.after) : nlohmann::json();
    samples.push_back(std::move(s));
  }
  return {{"experiment", report.name},
          {"config", report.config},
          {"aggregates", ToJson(report.aggregates)},
          {"samples", std::move(samples)}};
}

inline nlohmann::json ToJson(const SweepReport& report) {
  nlohmann::json points = nlohmann::json::array();
  for (const auto& p : report.points) {
    points.push_back({{"fraction", p.fraction},
                      {"recall", p.recall ? nlohmann::json(*p.recall)
                                          : nlohmann::json()},
                      {"evaluated_count", p.evaluated_count},
                      {"skipped_count", p.skipped_count}});
  }
  const auto slope = RecallSlope(report);
  return {{"experiment", "sweep"},
          {"config", report.config},
          {"points", std::move(points)},
          {"recall_slope", slope ? nlohmann::json(*slope) : nlohmann::json()}};
}

inline nlohmann::json ToJson(const BucketReport& report) {
  nlohmann::json before, after;
  for (Bucket bucket : kAllBuckets) {
    const std::string name(BucketName(bucket));
    before[name] = report.before.at(bucket);
    after[name] = report.after.at(bucket);
  }
  nlohmann::json samples = nlohmann::json::array();
  for (const auto& r : report.records) {
    nlohmann::json s = {{"id", r.id}};
    if (r.before && r.after) {
      s["before"] = {{"bucket", BucketName(*r.before)},
                     {"prob_machine", r.prob_before}};
      s["after"] = {{"bucket", BucketName(*r.after)},
                    {"prob_machine", r.prob_after}};
    } else {
      s["unscored"] = r.unscored_reason;
    }
    samples.push_back(std::move(s));
  }
  return {{"experiment", "transfer"},
          {"config", report.config},
          {"sample_ids", report.sample_ids},
          {"before", before},
          {"after", after},
          {"unscored_count", report.unscored_count},
          {"samples", std::move(samples)}};
}

inline nlohmann::json ToJson(const RankReport& report) {
  return {{"experiment", "ranks"},
          {"config", report.config},
          {"mean_rank",
           {{"human", report.human_mean},
            {"neural", report.neural_mean},
            {"attacked_neural", report.attacked_mean}}},
          {"tokens",
           {{"human", report.human_tokens},
            {"neural", report.neural_tokens},
            {"attacked_neural", report.attacked_tokens}}},
          {"human_ids", report.human_ids},
          {"neural_ids", report.neural_ids},
          {"attacked_skipped", report.attacked_skipped}};
}

inline void WriteExperimentCsvHeader(std::ostream& out) {
  out << "experiment,attack,pairs,fraction,evaluated,skipped,recall_before,"
         "recall_after,avg_confidence_human_before,avg_confidence_human_after\n";
}

inline void WriteExperimentCsvRow(std::ostream& out,
                                  const ExperimentReport& report) {
  const auto& config = report.config;
  const auto& attack = config.contains("attack") ? config["attack"]
                                                 : nlohmann::json();
  const auto text = [&](const char* key) -> std::string {
    return attack.is_object() && attack.contains(key) && attack[key].is_string()
               ? attack[key].get<std::string>()
               : std::string();
  };
  const std::string fraction =
      attack.is_object() && attack.contains("fraction")
          ? FormatFixed(attack["fraction"].get<double>())
          : std::string();
  const auto& a = report.aggregates;
  out << internal::CsvField(report.name) << ',' << text("kind") << ','
      << internal::CsvField(text("pairs")) << ',' << fraction << ','
      << a.evaluated_count << ',' << a.skipped_count << ','
      << FormatFixed(a.recall_before) << ',' << FormatFixed(a.recall_after)
      << ',' << FormatFixed(a.avg_confidence_human_before) << ','
      << FormatFixed(a.avg_confidence_human_after) << '\n';
}

inline void WriteCsv(std::ostream& out,
                     const std::vector<ExperimentReport>& reports) {
  WriteExperimentCsvHeader(out);
  for (const auto& report : reports) WriteExperimentCsvRow(out, report);
}

// Empty recall cells mark fractions at which every sample was skipped.
inline void WriteCsv(std::ostream& out, const SweepReport& report) {
  out << "fraction,recall,evaluated,skipped\n";
  for (const auto& p : report.points) {
    out << FormatFixed(p.fraction) << ','
        << (p.recall ? FormatFixed(*p.recall) : std::string()) << ','
        << p.evaluated_count << ',' << p.skipped_count << '\n';
  }
}

inline void WriteCsv(std::ostream& out, const BucketReport& report) {
  out << "bucket,before,after\n";
  for (Bucket bucket : kAllBuckets) {
    out << BucketName(bucket) << ',' << report.before.at(bucket) << ','
        << report.after.at(bucket) << '\n';
  }
  out << "Unscored," << report.unscored_count << ',' << report.unscored_count
      << '\n';
}

inline void WriteCsv(std::ostream& out, const RankReport& report) {
  out << "category,mean_rank,tokens,samples\n";
  out << "human," << FormatFixed(report.human_mean) << ','
      << report.human_tokens << ',' << report.human_ids.size() << '\n';
  out << "neural," << FormatFixed(report.neural_mean) << ','
      << report.neural_tokens << ',' << report.neural_ids.size() << '\n';
  out << "attacked_neural," << FormatFixed(report.attacked_mean) << ','
      << report.attacked_tokens << ','
      << report.neural_ids.size() - report.attacked_skipped << '\n';
}

}  // namespace glyphbreak

#endif  // GLYPHBREAK_REPORT_HPP_
