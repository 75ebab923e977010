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

#include "embedtopics/weighting.hpp"

#include <cmath>

#include "embedtopics/error.hpp"
#include "text.hpp"

namespace embedtopics {

std::string_view to_string(WeightScheme scheme) {
  switch (scheme) {
    case WeightScheme::kUniform: return "uniform";
    case WeightScheme::kTf: return "tf";
    case WeightScheme::kTfIdf: return "tf_idf";
    case WeightScheme::kTfDf: return "tf_df";
  }
  return "unknown";
}

WeightScheme parse_weight_scheme(std::string_view name) {
  if (name == "uniform" || name == "none") return WeightScheme::kUniform;
  if (name == "tf") return WeightScheme::kTf;
  if (name == "tf_idf" || name == "tfidf") return WeightScheme::kTfIdf;
  if (name == "tf_df" || name == "tfdf") return WeightScheme::kTfDf;
  throw Error(ErrorCode::kInvalidArgument, "unknown weight scheme '" + std::string(name) + "'");
}

WeightVector uniform_weights(std::size_t n) {
  return WeightVector{WeightScheme::kUniform, std::vector<double>(n, 1.0)};
}

WeightVector tf_weights(const Vocabulary& vocab) {
  if (vocab.total_tokens() == 0) {
    throw Error(ErrorCode::kInvalidArgument, "tf weights need total_tokens > 0");
  }
  WeightVector out{WeightScheme::kTf, std::vector<double>(vocab.size())};
  const auto total = static_cast<double>(vocab.total_tokens());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out.weights[i] = static_cast<double>(vocab.term_freq()[i]) / total;
  }
  return out;
}

WeightVector tf_df_weights(const Vocabulary& vocab) {
  if (vocab.num_docs() == 0) throw Error(ErrorCode::kInvalidArgument, "tf_df weights need num_docs > 0");
  WeightVector out = tf_weights(vocab);
  out.scheme = WeightScheme::kTfDf;
  const auto num_docs = static_cast<double>(vocab.num_docs());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out.weights[i] *= static_cast<double>(vocab.doc_freq()[i]) / num_docs;
  }
  return out;
}

WeightVector tf_idf_weights(const Vocabulary& vocab, const DocTermFrequencies& per_doc_tf) {
  if (vocab.num_docs() == 0) throw Error(ErrorCode::kInvalidArgument, "tf_idf weights need num_docs > 0");

  // Map the per-document index space onto this vocabulary once.
  std::vector<std::ptrdiff_t> remap(per_doc_tf.types.size(), -1);
  for (std::size_t i = 0; i < per_doc_tf.types.size(); ++i) {
    if (const auto idx = vocab.find(per_doc_tf.types[i])) remap[i] = static_cast<std::ptrdiff_t>(*idx);
  }
  std::vector<double> tf_sum(vocab.size(), 0.0);
  for (const auto& doc : per_doc_tf.docs) {
    for (const auto& [idx, tf] : doc) {
      if (idx < remap.size() && remap[idx] >= 0) tf_sum[static_cast<std::size_t>(remap[idx])] += tf;
    }
  }

  WeightVector out{WeightScheme::kTfIdf, std::vector<double>(vocab.size())};
  const auto num_docs = static_cast<double>(vocab.num_docs());
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    const double idf = std::log(num_docs / (static_cast<double>(vocab.doc_freq()[i]) + 1.0));
    // The idf factor is shared by every document, so the sum factors.
    out.weights[i] = std::max(0.0, tf_sum[i] * idf);
  }
  return out;
}

WeightVector compute_weights(WeightScheme scheme, const Vocabulary& vocab,
                             const DocTermFrequencies& per_doc_tf) {
  switch (scheme) {
    case WeightScheme::kUniform: return uniform_weights(vocab.size());
    case WeightScheme::kTf: return tf_weights(vocab);
    case WeightScheme::kTfIdf: return tf_idf_weights(vocab, per_doc_tf);
    case WeightScheme::kTfDf: return tf_df_weights(vocab);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown weight scheme");
}

void save_weights(const std::filesystem::path& path, const WeightVector& weights,
                  const Vocabulary& vocab) {
  if (weights.size() != vocab.size()) {
    throw Error(ErrorCode::kInvalidArgument, "weights and vocabulary differ in size");
  }
  std::string out;
  for (std::size_t i = 0; i < vocab.size(); ++i) {
    out += vocab.types()[i];
    out += '\t';
    out += detail::format_double(weights.weights[i]);
    out += '\n';
  }
  detail::write_file(path, out);
}

}  // namespace embedtopics
