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

#ifndef EMBEDTOPICS_WEIGHTING_HPP
#define EMBEDTOPICS_WEIGHTING_HPP

#include <filesystem>
#include <string_view>
#include <vector>

#include "embedtopics/corpus.hpp"

namespace embedtopics {

enum class WeightScheme { kUniform, kTf, kTfIdf, kTfDf };

std::string_view to_string(WeightScheme scheme);
/// Accepts "uniform", "tf", "tf_idf", "tf_df".
WeightScheme parse_weight_scheme(std::string_view name);

/// Nonnegative per-type scores aligned with a vocabulary.
struct WeightVector {
  WeightScheme scheme = WeightScheme::kUniform;
  std::vector<double> weights;

  std::size_t size() const noexcept { return weights.size(); }
};

WeightVector uniform_weights(std::size_t n);

/// term_freq[t] / total_tokens. total_tokens is the corpus total, so after
/// out-of-vocabulary filtering the weights are not renormalized.
WeightVector tf_weights(const Vocabulary& vocab);

/// tf[t] * doc_freq[t] / num_docs.
WeightVector tf_df_weights(const Vocabulary& vocab);

/// sum_d tf_{t,d} * ln(num_docs / (doc_freq[t] + 1)), clamped at zero.
/// Per-document entries whose type is not in `vocab` are ignored.
WeightVector tf_idf_weights(const Vocabulary& vocab, const DocTermFrequencies& per_doc_tf);

/// Dispatches on `scheme`; `per_doc_tf` is only read for tf_idf.
WeightVector compute_weights(WeightScheme scheme, const Vocabulary& vocab,
                             const DocTermFrequencies& per_doc_tf);

/// `type\tweight` per line, shortest round-trip formatting.
void save_weights(const std::filesystem::path& path, const WeightVector& weights,
                  const Vocabulary& vocab);

}  // namespace embedtopics

#endif  // EMBEDTOPICS_WEIGHTING_HPP
