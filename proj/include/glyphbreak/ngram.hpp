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

// Word-level add-k smoothed n-gram model used to rank each token of a text
// by how strongly the model predicted it.
//
//   P(w | ctx) = (count(ctx, w) + k) / (count(ctx) + k * (|V| + 1))
//
// The "+ 1" is the reserved unknown-word sentinel. Ranks are 1-based over
// the vocabulary sorted by descending probability, ties broken by ascending
// byte order of the token; tokens outside the vocabulary rank |V| + 1.

#ifndef GLYPHBREAK_NGRAM_HPP_
#define GLYPHBREAK_NGRAM_HPP_

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"

#include "glyphbreak/corpus.hpp"
#include "glyphbreak/error.hpp"
#include "glyphbreak/misspell.hpp"
#include "glyphbreak/unicode.hpp"

namespace glyphbreak {

using TokenId = std::uint32_t;

// Lower-cased words, the unit every model trains on and scores.
inline std::vector<std::string> LmTokens(std::string_view text) {
  const auto scalars = DecodeUtf8(text);
  std::vector<std::string> tokens;
  for (const auto& span : TokenizeWords(std::u32string_view(scalars))) {
    tokens.push_back(EncodeUtf8(
        ToLower(std::u32string_view(scalars).substr(span.start,
                                                    span.end - span.start))));
  }
  return tokens;
}

struct RankSequence {
  std::vector<std::size_t> ranks;
  std::size_t token_count() const { return ranks.size(); }
};

class NgramLM {
 public:
  static constexpr int kFormatVersion = 1;

  static NgramLM Train(const Corpus& corpus, int order, double smoothing_k) {
    if (corpus.empty()) throw EmptyCorpus();
    if (order < 1) throw InvalidArgument("n-gram order must be at least 1");
    if (!(smoothing_k > 0.0)) {
      throw InvalidArgument("smoothing k must be positive");
    }
    std::vector<std::vector<std::string>> documents;
    documents.reserve(corpus.size());
    std::vector<std::string> vocabulary;
    for (const auto& sample : corpus) {
      documents.push_back(LmTokens(sample.text));
      vocabulary.insert(vocabulary.end(), documents.back().begin(),
                        documents.back().end());
    }
    std::sort(vocabulary.begin(), vocabulary.end());
    vocabulary.erase(std::unique(vocabulary.begin(), vocabulary.end()),
                     vocabulary.end());

    NgramLM lm(order, smoothing_k, std::move(vocabulary));
    std::unordered_map<Context, std::unordered_map<TokenId, std::uint64_t>,
                       ContextHash>
        raw;
    for (const auto& document : documents) {
      const auto ids = lm.Encode(document);
      Context context(static_cast<std::size_t>(order - 1), lm.bos());
      for (TokenId id : ids) {
        ++raw[context][id];
        lm.Shift(context, id);
      }
    }
    for (auto& [context, counts] : raw) {
      ContextStats stats;
      for (const auto& [id, count] : counts) {
        stats.total += count;
        stats.continuations.emplace_back(id, count);
      }
      std::sort(stats.continuations.begin(), stats.continuations.end());
      lm.contexts_.emplace(context, std::move(stats));
    }
    return lm;
  }

  int order() const { return order_; }
  double smoothing_k() const { return smoothing_k_; }
  const std::vector<std::string>& vocabulary() const { return vocabulary_; }
  std::size_t vocab_size() const { return vocabulary_.size(); }
  TokenId unk() const { return static_cast<TokenId>(vocabulary_.size()); }
  TokenId bos() const { return static_cast<TokenId>(vocabulary_.size() + 1); }

  std::optional<TokenId> Lookup(std::string_view token) const {
    const auto it =
        std::lower_bound(vocabulary_.begin(), vocabulary_.end(), token);
    if (it == vocabulary_.end() || *it != token) return std::nullopt;
    return static_cast<TokenId>(it - vocabulary_.begin());
  }

  // Out-of-vocabulary tokens map to unk().
  std::vector<TokenId> Encode(std::span<const std::string> tokens) const {
    std::vector<TokenId> ids;
    ids.reserve(tokens.size());
    for (const auto& token : tokens) ids.push_back(Lookup(token).value_or(unk()));
    return ids;
  }

  // Count of (context, token); context must hold order() - 1 ids.
  std::uint64_t Count(std::span<const TokenId> context, TokenId token) const {
    return CountIn(Find(context), token);
  }

  std::uint64_t ContextCount(std::span<const TokenId> context) const {
    const auto* stats = Find(context);
    return stats == nullptr ? 0 : stats->total;
  }

  // P(token | context) for token in [0, |V|]; |V| is the unknown sentinel.
  double Probability(std::span<const TokenId> context, TokenId token) const {
    const double denominator =
        static_cast<double>(ContextCount(context)) +
        smoothing_k_ * static_cast<double>(vocabulary_.size() + 1);
    return (static_cast<double>(Count(context, token)) + smoothing_k_) /
           denominator;
  }

  // 1-based rank of an in-vocabulary token; unk() ranks |V| + 1.
  std::size_t Rank(std::span<const TokenId> context, TokenId token) const {
    if (token >= unk()) return vocabulary_.size() + 1;
    const auto* stats = Find(context);
    const std::uint64_t own = CountIn(stats, token);
    std::size_t ahead = 0;
    std::size_t observed_below = 0;
    if (stats != nullptr) {
      for (const auto& [id, count] : stats->continuations) {
        if (id < token) ++observed_below;
        if (count > own || (count == own && id < token)) ++ahead;
      }
    }
    if (own == 0) {
      // Unobserved continuations share the smallest probability; those with
      // smaller ids come first.
      ahead += token - observed_below;
    }
    return ahead + 1;
  }

  RankSequence TokenRanks(std::string_view text) const {
    const auto tokens = LmTokens(text);
    const auto ids = Encode(tokens);
    RankSequence out;
    out.ranks.reserve(ids.size());
    Context context(static_cast<std::size_t>(order_ - 1), bos());
    for (TokenId id : ids) {
      out.ranks.push_back(Rank(context, id));
      Shift(context, id);
    }
    return out;
  }

  nlohmann::json ToJson() const {
    std::vector<std::pair<const Context*, const ContextStats*>> ordered;
    ordered.reserve(contexts_.size());
    for (const auto& [context, stats] : contexts_) {
      ordered.emplace_back(&context, &stats);
    }
    std::sort(ordered.begin(), ordered.end(),
              [](const auto& a, const auto& b) { return *a.first < *b.first; });
    nlohmann::json contexts = nlohmann::json::array();
    for (const auto& [context, stats] : ordered) {
      nlohmann::json counts = nlohmann::json::array();
      for (const auto& [id, count] : stats->continuations) {
        counts.push_back({id, count});
      }
      contexts.push_back({{"context", *context}, {"counts", counts}});
    }
    return {{"format", "glyphbreak-ngram"},
            {"version", kFormatVersion},
            {"order", order_},
            {"smoothing_k", smoothing_k_},
            {"vocabulary", vocabulary_},
            {"contexts", contexts}};
  }

  static NgramLM FromJson(const nlohmann::json& j) {
    try {
      if (j.at("format") != "glyphbreak-ngram") {
        throw InvalidArgument("not a glyphbreak n-gram model");
      }
      if (j.at("version").get<int>() != kFormatVersion) {
        throw InvalidArgument("unsupported n-gram model version");
      }
      auto vocabulary = j.at("vocabulary").get<std::vector<std::string>>();
      if (!std::is_sorted(vocabulary.begin(), vocabulary.end()) ||
          std::adjacent_find(vocabulary.begin(), vocabulary.end()) !=
              vocabulary.end()) {
        throw InvalidArgument("model vocabulary is not sorted and unique");
      }
      const int order = j.at("order").get<int>();
      const double k = j.at("smoothing_k").get<double>();
      if (order < 1 || !(k > 0.0)) {
        throw InvalidArgument("model has invalid order or smoothing k");
      }
      NgramLM lm(order, k, std::move(vocabulary));
      for (const auto& entry : j.at("contexts")) {
        auto context = entry.at("context").get<Context>();
        if (context.size() != static_cast<std::size_t>(order - 1)) {
          throw InvalidArgument("model context has wrong length");
        }
        ContextStats stats;
        for (const auto& pair : entry.at("counts")) {
          const auto id = pair.at(0).get<TokenId>();
          const auto count = pair.at(1).get<std::uint64_t>();
          if (id >= lm.unk()) throw InvalidArgument("model token id out of range");
          stats.continuations.emplace_back(id, count);
          stats.total += count;
        }
        std::sort(stats.continuations.begin(), stats.continuations.end());
        lm.contexts_.emplace(std::move(context), std::move(stats));
      }
      return lm;
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument(std::string("malformed n-gram model: ") + e.what());
    }
  }

  void Save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write model: " + path);
    out << ToJson().dump() << '\n';
    if (!out) throw IoError("write failed: " + path);
  }

  static NgramLM Load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open model: " + path);
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw InvalidArgument("malformed n-gram model " + path + ": " + e.what());
    }
    return FromJson(j);
  }

 private:
  using Context = std::vector<TokenId>;

  struct ContextHash {
    std::size_t operator()(const Context& context) const {
      std::uint64_t h = 0xCBF29CE484222325ULL;
      for (TokenId id : context) h = SplitMix64::Mix(h ^ id);
      return static_cast<std::size_t>(h);
    }
  };

  struct ContextStats {
    std::uint64_t total = 0;
    // Sorted by token id.
    std::vector<std::pair<TokenId, std::uint64_t>> continuations;
  };

  NgramLM(int order, double smoothing_k, std::vector<std::string> vocabulary)
      : order_(order),
        smoothing_k_(smoothing_k),
        vocabulary_(std::move(vocabulary)) {}

  const ContextStats* Find(std::span<const TokenId> context) const {
    const auto it = contexts_.find(Context(context.begin(), context.end()));
    return it == contexts_.end() ? nullptr : &it->second;
  }

  static std::uint64_t CountIn(const ContextStats* stats, TokenId token) {
    if (stats == nullptr) return 0;
    const auto it = std::lower_bound(
        stats->continuations.begin(), stats->continuations.end(),
        std::pair<TokenId, std::uint64_t>{token, 0});
    return it != stats->continuations.end() && it->first == token ? it->second
                                                                   : 0;
  }

  void Shift(Context& context, TokenId id) const {
    if (context.empty()) return;
    std::rotate(context.begin(), context.begin() + 1, context.end());
    context.back() = id;
  }

  int order_ = 1;
  double smoothing_k_ = 1.0;
  std::vector<std::string> vocabulary_;
  std::unordered_map<Context, ContextStats, ContextHash> contexts_;
};

// Token-weighted mean of all ranks pooled across the corpus.
inline double MeanRank(const NgramLM& lm, const Corpus& corpus) {
  if (corpus.empty()) throw EmptyCorpus();
  std::uint64_t sum = 0;
  std::uint64_t count = 0;
  for (const auto& sample : corpus) {
    for (std::size_t rank : lm.TokenRanks(sample.text).ranks) {
      sum += rank;
      ++count;
    }
  }
  if (count == 0) throw NoTokens();
  return static_cast<double>(sum) / static_cast<double>(count);
}

}  // namespace glyphbreak

#endif  // GLYPHBREAK_NGRAM_HPP_
