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

#ifndef EMBEDTOPICS_PIPELINE_HPP
#define EMBEDTOPICS_PIPELINE_HPP

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "embedtopics/clustering.hpp"
#include "embedtopics/corpus.hpp"
#include "embedtopics/embeddings.hpp"
#include "embedtopics/evaluation.hpp"
#include "embedtopics/topics.hpp"
#include "embedtopics/weighting.hpp"

namespace embedtopics {

enum class CorpusFormat { k20Newsgroups, kLines };

std::string_view to_string(CorpusFormat format);
/// Accepts "20ng" and "lines".
CorpusFormat parse_corpus_format(std::string_view name);

/// Everything a run depends on. Output files are a pure function of this
/// struct and the input files.
struct RunConfig {
  std::filesystem::path corpus_path;
  CorpusFormat corpus_format = CorpusFormat::k20Newsgroups;
  std::filesystem::path split_path;      ///< lines format only
  std::filesystem::path stopwords_path;  ///< empty: built-in list
  std::uint64_t min_df = 5;

  std::filesystem::path embedding_path;
  EmbeddingFormat embedding_format = EmbeddingFormat::kGloveText;
  std::string embedding_name;  ///< empty: file stem

  ClusterKind algorithm = ClusterKind::kKMeans;
  std::size_t k = 20;
  std::size_t top_j = 10;
  WeightScheme weighting = WeightScheme::kUniform;
  RerankScheme reranking = RerankScheme::kNone;
  std::size_t rerank_window = 100;
  std::optional<std::size_t> pca_dim;
  std::vector<std::uint64_t> seeds = {0, 1, 2, 3, 4};
  std::size_t npmi_window = 10;  ///< 0: whole document
  std::size_t max_iter = 300;
  std::optional<double> tol;

  std::filesystem::path output_dir = "out";

  /// Throws kInvalidArgument when an invariant (k >= 1, J >= 1,
  /// window >= J, seeds nonempty, ...) does not hold.
  void validate() const;
};

/// Applies `key = value` settings. Keys are the long CLI flag names with
/// dashes or underscores (corpus, corpus-format, split, stopwords, min-df,
/// embeddings, embedding-format, embedding-name, algorithm, k, top-j,
/// weighting, reranking, window, pca-dim, seeds, npmi-window, max-iter,
/// tol, output). Unknown keys throw kInvalidArgument.
void apply_setting(RunConfig& config, std::string_view key, std::string_view value);

/// Config file grammar: one `key = value` per line; blank lines and lines
/// starting with `#` are ignored; whitespace around key and value is
/// trimmed. Later lines override earlier ones.
RunConfig load_config(const std::filesystem::path& path, RunConfig base = {});

/// Shared, content-keyed intermediates. A cache may be reused across runs
/// and sweep cells; a hit returns exactly what a miss would compute.
class PipelineCache {
 public:
  struct CorpusData {
    std::vector<Document> train;
    std::vector<Document> test;
    Vocabulary vocab;
    DocTermFrequencies per_doc_tf;
  };

  const CorpusData& corpus(const RunConfig& config);
  const LoadedEmbeddings& embeddings(const RunConfig& config);
  const CooccurrenceIndex& index(const RunConfig& config);

  std::size_t hits() const noexcept { return hits_; }
  std::size_t misses() const noexcept { return misses_; }

  /// Content hashes of the inputs, stable across processes.
  std::string corpus_key(const RunConfig& config);
  std::string embedding_key(const RunConfig& config);

 private:
  std::map<std::string, std::unique_ptr<CorpusData>> corpora_;
  std::map<std::string, std::unique_ptr<LoadedEmbeddings>> embeddings_;
  std::map<std::string, std::unique_ptr<CooccurrenceIndex>> indexes_;
  std::map<std::string, std::string> file_hashes_;
  std::size_t hits_ = 0;
  std::size_t misses_ = 0;

  std::string hash_path(const std::filesystem::path& path);
};

/// Inputs shared by every seed of a run: the working vocabulary's table
/// (PCA-reduced and, for sk, row-normalized), the clustering weights and the
/// optional rerank weights. Writes vocab.tsv, working_vocab.tsv,
/// weights.tsv (and rerank_weights.tsv, cache/pca-<dim>.txt when used)
/// under config.output_dir.
struct PreparedInputs {
  const PipelineCache::CorpusData* corpus = nullptr;
  const LoadedEmbeddings* loaded = nullptr;
  EmbeddingTable table;
  WeightVector weights;
  std::optional<WeightVector> rerank_weights;

  const Vocabulary& vocab() const { return loaded->vocab; }
};

PreparedInputs prepare_inputs(const RunConfig& config, PipelineCache& cache);

/// Proximity topics of one fitted model, plus the reranked set when the
/// config asks for reranking (otherwise both members are equal).
struct SeedTopics {
  TopicSet proximity;
  TopicSet final_topics;
};

SeedTopics topics_for_model(const RunConfig& config, const PreparedInputs& inputs,
                            const ClusterModel& model);

struct RunResult {
  NpmiReport report;
  std::vector<TopicSet> topic_sets;
  /// Topics before reranking, one per seed (equal to topic_sets when
  /// reranking is none).
  std::vector<TopicSet> proximity_topic_sets;
  std::size_t working_vocab_size = 0;
  std::size_t dim = 0;
  double coverage = 0.0;
};

/// corpus -> vocabulary -> embeddings (-> pca) -> weights -> fit -> top-J
/// (-> rerank) -> NPMI, for every seed. Writes under config.output_dir:
/// vocab.tsv, weights.tsv, models/<seed>.json, topics/<seed>.json,
/// topics/<seed>.txt, report.json, results.csv, manifest.json, and the
/// reduced table in cache/ when PCA is used. Errors are rethrown with the
/// failing stage attached as context.
RunResult run(const RunConfig& config, PipelineCache& cache);
RunResult run(const RunConfig& config);

enum class SweepAxis { kPcaDims, kAlgorithms, kWeightSchemes, kRerankSchemes };

std::string_view to_string(SweepAxis axis);
/// Accepts "pca_dims", "algorithms", "weight_schemes", "rerank_schemes".
SweepAxis parse_sweep_axis(std::string_view name);

struct SweepCell {
  std::string value;
  std::optional<NpmiReport> report;
  std::string error;  ///< "<ErrorName>: message" when the cell failed
};

/// One run() per value, each in <output_dir>/<axis>-<value>/, sharing
/// `cache`. Failed cells are recorded and the sweep continues. Writes
/// <output_dir>/sweep.csv and returns its rows.
std::vector<SweepCell> sweep(const RunConfig& base, SweepAxis axis,
                             const std::vector<std::string>& values, PipelineCache& cache);

std::string sweep_csv_header();
std::string sweep_csv_row(const RunConfig& base, SweepAxis axis, const SweepCell& cell);

}  // namespace embedtopics

#endif  // EMBEDTOPICS_PIPELINE_HPP
