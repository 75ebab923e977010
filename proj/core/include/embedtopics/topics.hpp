// Copyright 2026 The embedtopics Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef EMBEDTOPICS_TOPICS_HPP
#define EMBEDTOPICS_TOPICS_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "embedtopics/clustering.hpp"
#include "embedtopics/corpus.hpp"
#include "embedtopics/embeddings.hpp"
#include "embedtopics/weighting.hpp"

namespace embedtopics {

/// "none" means the proximity ranking is reported as is.
enum class RerankScheme { kNone, kTf, kTfIdf, kTfDf };

std::string_view to_string(RerankScheme scheme);
/// Accepts "none", "tf", "tf_idf", "tf_df".
RerankScheme parse_rerank_scheme(std::string_view name);
std::optional<WeightScheme> weight_scheme_for(RerankScheme scheme);

struct Topic {
  std::size_t cluster_id = 0;
  std::vector<std::string> words;
  /// Best first. Proximity rankings store squared distance (km, kd; lower is
  /// better), cosine (sk) or log density (gmm); reranked topics store the
  /// rerank weight.
  std::vector<double> scores;
  RerankScheme rerank_scheme = RerankScheme::kNone;
};

struct Provenance {
  std::string embedding;
  ClusterKind algorithm = ClusterKind::kKMeans;
  WeightScheme weighting = WeightScheme::kUniform;
  RerankScheme reranking = RerankScheme::kNone;
  std::uint64_t seed = 0;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

struct TopicSet {
  std::vector<Topic> topics;
  Provenance provenance;
};

/// Proximity-ranked candidates of one cluster, best first, capped at
/// `limit`. Hard clusterings rank the cluster's members; gmm ranks the whole
/// vocabulary by component density. Ties keep row order.
struct RankedCandidates {
  std::vector<std::size_t> rows;
  std::vector<double> scores;
};

RankedCandidates rank_candidates(const ClusterModel& model, const EmbeddingTable& table,
                                 std::size_t cluster, std::size_t limit);

/// Top-J words per cluster by the algorithm's own proximity criterion.
TopicSet extract_top_j(const ClusterModel& model, const EmbeddingTable& table,
                       const Vocabulary& vocab, std::size_t top_j, Provenance provenance);

/// Takes each cluster's top `window` proximity candidates, orders them by
/// descending weight (ties keep proximity order) and keeps the first `top_j`.
/// Throws kInvalidArgument if window < top_j or sizes disagree.
TopicSet rerank(const TopicSet& topics, const ClusterModel& model, const EmbeddingTable& table,
                const Vocabulary& vocab, const WeightVector& weights, std::size_t window = 100,
                std::size_t top_j = 10);

struct JaccardResult {
  std::vector<double> per_topic;
  double mean = 0.0;
};

/// Word-set Jaccard per cluster id. Throws kMismatchedK unless both sets
/// hold the same cluster ids.
JaccardResult jaccard(const TopicSet& a, const TopicSet& b);

void write_topics_json(std::ostream& out, const TopicSet& topics);
TopicSet read_topics_json(std::istream& in);
/// One topic per line, words separated by single spaces.
void write_topics_text(std::ostream& out, const TopicSet& topics);

void save_topics(const std::filesystem::path& json_path, const std::filesystem::path& text_path,
                 const TopicSet& topics);
TopicSet load_topics(const std::filesystem::path& json_path);

}  // namespace embedtopics

#endif  // EMBEDTOPICS_TOPICS_HPP
