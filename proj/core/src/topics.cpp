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

#include "embedtopics/topics.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

#include "embedtopics/error.hpp"
#include "text.hpp"

namespace embedtopics {

namespace {

using nlohmann::json;

// Orders `rows` by score (ascending when `lower_is_better`), ties by row
// index, and truncates to `limit`.
RankedCandidates order_candidates(std::vector<std::size_t> rows, const std::vector<double>& score_of,
                                  bool lower_is_better, std::size_t limit) {
  auto better = [&](std::size_t a, std::size_t b) {
    const double sa = score_of[a];
    const double sb = score_of[b];
    if (sa != sb) return lower_is_better ? sa < sb : sa > sb;
    return a < b;
  };
  const std::size_t keep = std::min(limit, rows.size());
  std::partial_sort(rows.begin(), rows.begin() + static_cast<std::ptrdiff_t>(keep), rows.end(), better);
  rows.resize(keep);
  RankedCandidates out;
  out.scores.reserve(keep);
  for (std::size_t r : rows) out.scores.push_back(score_of[r]);
  out.rows = std::move(rows);
  return out;
}

}  // namespace

std::string_view to_string(RerankScheme scheme) {
  switch (scheme) {
    case RerankScheme::kNone: return "none";
    case RerankScheme::kTf: return "tf";
    case RerankScheme::kTfIdf: return "tf_idf";
    case RerankScheme::kTfDf: return "tf_df";
  }
  return "none";
}

RerankScheme parse_rerank_scheme(std::string_view name) {
  if (name == "none") return RerankScheme::kNone;
  if (name == "tf") return RerankScheme::kTf;
  if (name == "tf_idf" || name == "tfidf") return RerankScheme::kTfIdf;
  if (name == "tf_df" || name == "tfdf") return RerankScheme::kTfDf;
  throw Error(ErrorCode::kInvalidArgument, "unknown rerank scheme '" + std::string(name) + "'");
}

std::optional<WeightScheme> weight_scheme_for(RerankScheme scheme) {
  switch (scheme) {
    case RerankScheme::kNone: return std::nullopt;
    case RerankScheme::kTf: return WeightScheme::kTf;
    case RerankScheme::kTfIdf: return WeightScheme::kTfIdf;
    case RerankScheme::kTfDf: return WeightScheme::kTfDf;
  }
  return std::nullopt;
}

RankedCandidates rank_candidates(const ClusterModel& model, const EmbeddingTable& table,
                                 std::size_t cluster, std::size_t limit) {
  const auto n = table.rows();
  if (cluster >= model.k) {
    throw Error(ErrorCode::kInvalidArgument, "no cluster " + std::to_string(cluster));
  }
  if (model.labels.size() != n || table.dim() != static_cast<std::size_t>(model.centroids.cols())) {
    throw Error(ErrorCode::kDimensionMismatch, "model was not fitted on this embedding table");
  }
  const auto c = static_cast<Eigen::Index>(cluster);
  std::vector<double> score(n, 0.0);

  if (model.kind == ClusterKind::kGmm) {
    if (!model.gmm) throw Error(ErrorCode::kInvalidArgument, "gmm model without parameters");
    const Eigen::VectorXd density = gmm_component_log_density(*model.gmm, cluster, table.vectors);
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) score[i] = density(static_cast<Eigen::Index>(i));
    return order_candidates(std::move(rows), score, false, limit);
  }

  std::vector<std::size_t> members;
  for (std::size_t i = 0; i < n; ++i) {
    if (model.labels[i] == static_cast<std::int32_t>(cluster)) members.push_back(i);
  }
  const Eigen::RowVectorXd centroid = model.centroids.row(c);
  if (model.kind == ClusterKind::kSpherical) {
    const double cn = centroid.norm();
    for (std::size_t i : members) {
      const auto row = table.vectors.row(static_cast<Eigen::Index>(i));
      const double denom = cn * row.norm();
      score[i] = denom > 0.0 ? row.dot(centroid) / denom : 0.0;
    }
    return order_candidates(std::move(members), score, false, limit);
  }
  for (std::size_t i : members) {
    score[i] = (table.vectors.row(static_cast<Eigen::Index>(i)) - centroid).squaredNorm();
  }
  return order_candidates(std::move(members), score, true, limit);
}

TopicSet extract_top_j(const ClusterModel& model, const EmbeddingTable& table,
                       const Vocabulary& vocab, std::size_t top_j, Provenance provenance) {
  if (vocab.size() != table.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "vocabulary and embedding table differ in size");
  }
  if (top_j == 0) throw Error(ErrorCode::kInvalidArgument, "top_j must be at least 1");
  TopicSet out;
  out.provenance = std::move(provenance);
  out.topics.reserve(model.k);
  for (std::size_t c = 0; c < model.k; ++c) {
    const RankedCandidates ranked = rank_candidates(model, table, c, top_j);
    Topic topic;
    topic.cluster_id = c;
    for (std::size_t r : ranked.rows) topic.words.push_back(vocab.type(r));
    topic.scores = ranked.scores;
    out.topics.push_back(std::move(topic));
  }
  return out;
}

TopicSet rerank(const TopicSet& topics, const ClusterModel& model, const EmbeddingTable& table,
                const Vocabulary& vocab, const WeightVector& weights, std::size_t window,
                std::size_t top_j) {
  if (top_j == 0 || window < top_j) {
    throw Error(ErrorCode::kInvalidArgument, "rerank window " + std::to_string(window) +
                                                 " must be at least top_j " + std::to_string(top_j));
  }
  if (weights.size() != table.rows() || vocab.size() != table.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "weights, vocabulary and table differ in size");
  }
  RerankScheme scheme = RerankScheme::kNone;
  switch (weights.scheme) {
    case WeightScheme::kUniform: scheme = RerankScheme::kNone; break;
    case WeightScheme::kTf: scheme = RerankScheme::kTf; break;
    case WeightScheme::kTfIdf: scheme = RerankScheme::kTfIdf; break;
    case WeightScheme::kTfDf: scheme = RerankScheme::kTfDf; break;
  }

  TopicSet out;
  out.provenance = topics.provenance;
  out.provenance.reranking = scheme;
  for (const Topic& source : topics.topics) {
    const RankedCandidates ranked = rank_candidates(model, table, source.cluster_id, window);
    std::vector<std::size_t> order(ranked.rows.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
      return weights.weights[ranked.rows[a]] > weights.weights[ranked.rows[b]];
    });
    order.resize(std::min(top_j, order.size()));
    Topic topic;
    topic.cluster_id = source.cluster_id;
    topic.rerank_scheme = scheme;
    for (std::size_t p : order) {
      topic.words.push_back(vocab.type(ranked.rows[p]));
      topic.scores.push_back(weights.weights[ranked.rows[p]]);
    }
    out.topics.push_back(std::move(topic));
  }
  return out;
}

JaccardResult jaccard(const TopicSet& a, const TopicSet& b) {
  auto ids = [](const TopicSet& s) {
    std::vector<std::size_t> v;
    for (const auto& t : s.topics) v.push_back(t.cluster_id);
    std::sort(v.begin(), v.end());
    return v;
  };
  if (ids(a) != ids(b)) {
    throw Error(ErrorCode::kMismatchedK, "topic sets hold different clusters (" +
                                             std::to_string(a.topics.size()) + " vs " +
                                             std::to_string(b.topics.size()) + " topics)");
  }
  JaccardResult out;
  for (const Topic& ta : a.topics) {
    const auto it = std::find_if(b.topics.begin(), b.topics.end(),
                                 [&](const Topic& t) { return t.cluster_id == ta.cluster_id; });
    const std::set<std::string> sa(ta.words.begin(), ta.words.end());
    const std::set<std::string> sb(it->words.begin(), it->words.end());
    std::size_t shared = 0;
    for (const auto& w : sa) shared += sb.count(w);
    const std::size_t united = sa.size() + sb.size() - shared;
    out.per_topic.push_back(united == 0 ? 1.0 : static_cast<double>(shared) / static_cast<double>(united));
  }
  if (!out.per_topic.empty()) {
    out.mean = std::accumulate(out.per_topic.begin(), out.per_topic.end(), 0.0) /
               static_cast<double>(out.per_topic.size());
  }
  return out;
}

void write_topics_json(std::ostream& out, const TopicSet& topics) {
  json j;
  j["provenance"] = {{"embedding", topics.provenance.embedding},
                     {"algorithm", to_string(topics.provenance.algorithm)},
                     {"weighting", to_string(topics.provenance.weighting)},
                     {"reranking", to_string(topics.provenance.reranking)},
                     {"seed", topics.provenance.seed}};
  json list = json::array();
  for (const Topic& t : topics.topics) {
    list.push_back({{"cluster_id", t.cluster_id},
                    {"rerank_scheme", to_string(t.rerank_scheme)},
                    {"words", t.words},
                    {"scores", t.scores}});
  }
  j["topics"] = std::move(list);
  out << j.dump(1) << '\n';
}

TopicSet read_topics_json(std::istream& in) {
  try {
    const json j = json::parse(in);
    TopicSet out;
    const json& p = j.at("provenance");
    out.provenance.embedding = p.at("embedding").get<std::string>();
    out.provenance.algorithm = parse_cluster_kind(p.at("algorithm").get<std::string>());
    out.provenance.weighting = parse_weight_scheme(p.at("weighting").get<std::string>());
    out.provenance.reranking = parse_rerank_scheme(p.at("reranking").get<std::string>());
    out.provenance.seed = p.at("seed").get<std::uint64_t>();
    for (const json& t : j.at("topics")) {
      Topic topic;
      topic.cluster_id = t.at("cluster_id").get<std::size_t>();
      topic.rerank_scheme = parse_rerank_scheme(t.at("rerank_scheme").get<std::string>());
      topic.words = t.at("words").get<std::vector<std::string>>();
      topic.scores = t.at("scores").get<std::vector<double>>();
      if (topic.words.size() != topic.scores.size()) {
        throw Error(ErrorCode::kFormatError, "topic " + std::to_string(topic.cluster_id) +
                                                 " has mismatched words and scores");
      }
      out.topics.push_back(std::move(topic));
    }
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::kFormatError, std::string("topics json: ") + e.what());
  }
}

void write_topics_text(std::ostream& out, const TopicSet& topics) {
  for (const Topic& t : topics.topics) {
    for (std::size_t i = 0; i < t.words.size(); ++i) {
      if (i > 0) out << ' ';
      out << t.words[i];
    }
    out << '\n';
  }
}

void save_topics(const std::filesystem::path& json_path, const std::filesystem::path& text_path,
                 const TopicSet& topics) {
  std::ostringstream js;
  write_topics_json(js, topics);
  detail::write_file(json_path, js.str());
  std::ostringstream txt;
  write_topics_text(txt, topics);
  detail::write_file(text_path, txt.str());
}

TopicSet load_topics(const std::filesystem::path& json_path) {
  std::istringstream in(detail::read_file(json_path));
  try {
    return read_topics_json(in);
  } catch (const Error& e) {
    throw e.with_context(json_path.string());
  }
}

}  // namespace embedtopics
