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

#ifndef GLYPHBREAK_CORPUS_HPP_
#define GLYPHBREAK_CORPUS_HPP_

#include <cstddef>
#include <cstdint>
#include <fstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "glyphbreak/error.hpp"
#include "glyphbreak/rng.hpp"

namespace glyphbreak {

enum class Label { kNeural, kHuman };

inline std::string_view LabelName(Label label) {
  return label == Label::kNeural ? "neural" : "human";
}

struct TextSample {
  // 0-based line number in the source file.
  std::size_t id = 0;
  std::string text;
  Label label = Label::kNeural;
};

// Immutable after construction; samples are kept in source line order.
class Corpus {
 public:
  Corpus() = default;
  Corpus(std::vector<TextSample> samples, Label label, std::string source)
      : samples_(std::move(samples)), label_(label), source_(std::move(source)) {}

  const std::vector<TextSample>& samples() const { return samples_; }
  Label label() const { return label_; }
  const std::string& source() const { return source_; }
  std::size_t size() const { return samples_.size(); }
  bool empty() const { return samples_.empty(); }
  const TextSample& operator[](std::size_t i) const { return samples_[i]; }

  auto begin() const { return samples_.begin(); }
  auto end() const { return samples_.end(); }

 private:
  std::vector<TextSample> samples_;
  Label label_ = Label::kNeural;
  std::string source_;
};

// Builds a corpus from in-memory texts with ids 0..n-1.
inline Corpus MakeCorpus(std::vector<std::string> texts, Label label,
                         std::string source = "<memory>") {
  std::vector<TextSample> samples;
  samples.reserve(texts.size());
  for (std::size_t i = 0; i < texts.size(); ++i) {
    samples.push_back({i, std::move(texts[i]), label});
  }
  return Corpus(std::move(samples), label, std::move(source));
}

// Reads JSONL in the GPT-2 output-dataset convention: one object per line
// with a string field "text"; all other fields are ignored and blank lines
// are skipped. Invalid UTF-8 is reported as a malformed line.
inline Corpus ParseCorpus(std::istream& in, Label label, std::string source) {
  std::vector<TextSample> samples;
  std::string line;
  for (std::size_t line_no = 0; std::getline(in, line); ++line_no) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    nlohmann::json record;
    try {
      record = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw MalformedLine(line_no, e.what());
    }
    if (!record.is_object()) throw MalformedLine(line_no, "not an object");
    const auto it = record.find("text");
    if (it == record.end() || !it->is_string()) {
      throw MalformedLine(line_no, "missing string field 'text'");
    }
    samples.push_back({line_no, it->get<std::string>(), label});
  }
  if (in.bad()) throw IoError("read failed: " + source);
  return Corpus(std::move(samples), label, std::move(source));
}

inline Corpus LoadCorpus(const std::string& path, Label label) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open corpus file: " + path);
  return ParseCorpus(in, label, path);
}

inline void WriteCorpus(std::ostream& out, const Corpus& corpus) {
  for (const auto& sample : corpus) {
    nlohmann::json record = {{"text", sample.text}};
    out << record.dump() << '\n';
  }
}

inline void SaveCorpus(const std::string& path, const Corpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write corpus file: " + path);
  WriteCorpus(out, corpus);
  if (!out) throw IoError("write failed: " + path);
}

// n distinct samples chosen uniformly without replacement, returned in
// ascending id order.
inline Corpus Subsample(const Corpus& corpus, std::size_t n,
                        std::uint64_t seed) {
  if (n > corpus.size()) throw NotEnoughSamples(n, corpus.size());
  SplitMix64 rng(seed);
  std::vector<TextSample> chosen;
  chosen.reserve(n);
  for (std::size_t index : SampleWithoutReplacement(corpus.size(), n, rng)) {
    chosen.push_back(corpus[index]);
  }
  return Corpus(std::move(chosen), corpus.label(), corpus.source());
}

}  // namespace glyphbreak

#endif  // GLYPHBREAK_CORPUS_HPP_
