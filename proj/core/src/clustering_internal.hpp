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

#ifndef EMBEDTOPICS_SRC_CLUSTERING_INTERNAL_HPP
#define EMBEDTOPICS_SRC_CLUSTERING_INTERNAL_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "embedtopics/clustering.hpp"
#include "random.hpp"

namespace embedtopics::detail {

/// Validates weights (finite, nonnegative, some positive, matching length)
/// and divides them by their maximum. Empty input yields unit weights.
std::vector<double> canonical_weights(std::span<const double> weights, std::size_t n);

/// Checks 1 <= k <= n and k <= number of distinct rows.
void check_cluster_count(const RowMatrix& data, std::size_t k);

/// Row indices in lexicographic order of row contents. Sampling walks the
/// data in this order so the chosen points do not depend on row order.
std::vector<std::size_t> canonical_row_order(const RowMatrix& data);

/// Weighted k-means++ seeding: the first center with probability
/// proportional to w_i, later ones proportional to w_i * D(x_i)^2. Falls
/// back to D^2 alone when the weighted mass vanishes.
std::vector<std::size_t> kmeanspp_seeds(const RowMatrix& data, std::span<const double> w,
                                        std::size_t k, Rng& rng);

double mean_feature_variance(const RowMatrix& data);

inline double squared_distance(const RowMatrix& a, Eigen::Index i, const RowMatrix& b,
                               Eigen::Index j) {
  return (a.row(i) - b.row(j)).squaredNorm();
}

/// Lloyd iterations from given initial centroids; used directly by gmm
/// initialization.
ClusterModel run_lloyd(const RowMatrix& data, std::span<const double> w, RowMatrix centroids,
                       std::size_t max_iter, double shift_threshold, bool pin_iterations);

}  // namespace embedtopics::detail

#endif  // EMBEDTOPICS_SRC_CLUSTERING_INTERNAL_HPP
