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

#ifndef EMBEDTOPICS_EMBEDDINGS_HPP
#define EMBEDTOPICS_EMBEDDINGS_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "embedtopics/corpus.hpp"

namespace embedtopics {

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

enum class EmbeddingFormat { kWord2VecText, kWord2VecBinary, kGloveText };

std::string_view to_string(EmbeddingFormat format);
/// Accepts "word2vec_text", "word2vec_binary", "glove_text".
EmbeddingFormat parse_embedding_format(std::string_view name);

/// Vocabulary-aligned embedding matrix. Row i belongs to vocabulary type i.
struct EmbeddingTable {
  RowMatrix vectors;
  double coverage = 0.0;
  std::string source_name;

  std::size_t rows() const noexcept { return static_cast<std::size_t>(vectors.rows()); }
  std::size_t dim() const noexcept { return static_cast<std::size_t>(vectors.cols()); }
};

struct LoadedEmbeddings {
  EmbeddingTable table;
  Vocabulary vocab;  ///< input vocabulary minus types without a usable vector
};

/// Streams an embedding file and keeps the rows whose word is a vocabulary
/// type (exact, case-sensitive match; first occurrence wins). Types without
/// a vector, or whose vector is all zeros, are dropped from the returned
/// vocabulary. Every line of the file is validated, not only the kept ones:
/// malformed numbers raise kFormatError with the line (text) or byte offset
/// (binary), rows of the wrong width raise kDimensionMismatch.
///
/// glove_text lines with more than dim+1 fields are multi-word keys. They are
/// skipped, since no preprocessed type contains whitespace.
LoadedEmbeddings load_embeddings(const std::filesystem::path& path, EmbeddingFormat format,
                                 const Vocabulary& vocab, std::string source_name = {});

/// Writes word2vec text format with shortest round-trip float formatting.
void save_word2vec_text(const std::filesystem::path& path, const EmbeddingTable& table,
                        const Vocabulary& vocab);

/// Scales each row to unit Euclidean norm. Throws kZeroVector on a zero row.
EmbeddingTable normalize_rows(const EmbeddingTable& table);

/// Principal axes of the mean-centered table, strongest first. Each axis is
/// sign-fixed so that its largest-magnitude coordinate is positive.
struct PcaModel {
  Eigen::RowVectorXd mean;
  Eigen::MatrixXd components;          ///< dim x kept, orthonormal columns
  Eigen::VectorXd explained_variance;  ///< per kept component, divisor n-1
  double total_variance = 0.0;
};

/// Fits `target_dim` components through a thin SVD of the centered data.
/// Throws kInvalidArgument unless 1 <= target_dim <= dim and kRankDeficient
/// if fewer than target_dim singular values are numerically nonzero.
PcaModel pca_fit(const EmbeddingTable& table, std::size_t target_dim);

/// Projects the centered rows onto the fitted components.
EmbeddingTable pca_transform(const PcaModel& model, const EmbeddingTable& table);

EmbeddingTable pca_reduce(const EmbeddingTable& table, std::size_t target_dim);

/// JSON sidecar written next to extracted contextual embeddings.
struct EmbeddingSidecar {
  std::string model;
  std::string layer;
  std::string strategy;
  double coverage = 0.0;
  std::optional<std::size_t> dim;
};

EmbeddingSidecar load_sidecar(const std::filesystem::path& path);
/// `<embedding path>.json` when present.
std::optional<EmbeddingSidecar> find_sidecar(const std::filesystem::path& embedding_path);

}  // namespace embedtopics

#endif  // EMBEDTOPICS_EMBEDDINGS_HPP
