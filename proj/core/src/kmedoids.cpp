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

#include <algorithm>
#include <cmath>
#include <limits>

#include "clustering_internal.hpp"
#include "embedtopics/clustering.hpp"
#include "embedtopics/error.hpp"

namespace embedtopics {

namespace {

constexpr Eigen::Index kCandidateBlock = 256;

struct MedoidAssignment {
  std::vector<std::int32_t> labels;
  std::vector<double> distance;
};

void assign_to_medoids(const RowMatrix& data, const std::vector<std::size_t>& medoids,
                       MedoidAssignment& out) {
  const Eigen::Index n = data.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    std::size_t best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (std::size_t c = 0; c < medoids.size(); ++c) {
      const double d = detail::squared_distance(data, i, data, static_cast<Eigen::Index>(medoids[c]));
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    out.labels[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(best);
    out.distance[static_cast<std::size_t>(i)] = std::sqrt(best_d);
  }
}

double weighted_cost(std::span<const double> w, const std::vector<double>& distance) {
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) total += w[i] * distance[i];
  return total;
}

// Member minimizing the weighted sum of Euclidean distances to the other
// members. The current medoid is kept unless a candidate is strictly better.
std::size_t best_exemplar(const RowMatrix& data, std::span<const double> w,
                          const std::vector<std::size_t>& members, std::size_t current) {
  const auto s = static_cast<Eigen::Index>(members.size());
  RowMatrix block(s, data.cols());
  Eigen::VectorXd member_w(s);
  for (Eigen::Index r = 0; r < s; ++r) {
    block.row(r) = data.row(static_cast<Eigen::Index>(members[static_cast<std::size_t>(r)]));
    member_w(r) = w[members[static_cast<std::size_t>(r)]];
  }
  const Eigen::VectorXd sq = block.rowwise().squaredNorm();

  std::vector<double> cost(members.size());
  for (Eigen::Index start = 0; start < s; start += kCandidateBlock) {
    const Eigen::Index len = std::min(kCandidateBlock, s - start);
    const Eigen::MatrixXd gram = block.middleRows(start, len) * block.transpose();
    for (Eigen::Index a = 0; a < len; ++a) {
      double total = 0.0;
      for (Eigen::Index b = 0; b < s; ++b) {
        const double d2 = sq(start + a) - 2.0 * gram(a, b) + sq(b);
        total += member_w(b) * std::sqrt(std::max(0.0, d2));
      }
      cost[static_cast<std::size_t>(start + a)] = total;
    }
  }

  const auto current_pos = static_cast<std::size_t>(
      std::find(members.begin(), members.end(), current) - members.begin());
  std::size_t best = current_pos;
  double best_cost = current_pos < cost.size() ? cost[current_pos] : std::numeric_limits<double>::infinity();
  const double slack = 1e-12 * std::max(1.0, std::abs(best_cost));
  for (std::size_t p = 0; p < cost.size(); ++p) {
    if (cost[p] < best_cost - (best == current_pos ? slack : 0.0)) {
      best_cost = cost[p];
      best = p;
    }
  }
  return members[best];
}

}  // namespace

ClusterModel fit_kmedoids(const RowMatrix& data, std::span<const double> weights,
                          const FitOptions& options) {
  detail::check_cluster_count(data, options.k);
  const auto n = static_cast<std::size_t>(data.rows());
  const std::vector<double> w = detail::canonical_weights(weights, n);
  detail::Rng rng(options.seed);

  ClusterModel model;
  model.kind = ClusterKind::kKMedoids;
  model.k = options.k;
  model.seed = options.seed;
  model.medoids = detail::kmeanspp_seeds(data, w, options.k, rng);

  MedoidAssignment a{std::vector<std::int32_t>(n), std::vector<double>(n)};
  bool changed = true;
  for (std::size_t it = 0; it < options.max_iter; ++it) {
    assign_to_medoids(data, model.medoids, a);
    model.objective_trace.push_back(weighted_cost(w, a.distance));

    std::vector<std::vector<std::size_t>> members(options.k);
    for (std::size_t i = 0; i < n; ++i) members[static_cast<std::size_t>(a.labels[i])].push_back(i);

    std::vector<std::size_t> next = model.medoids;
    for (std::size_t c = 0; c < options.k; ++c) {
      if (!members[c].empty()) next[c] = best_exemplar(data, w, members[c], model.medoids[c]);
    }
    for (std::size_t c = 0; c < options.k; ++c) {
      if (!members[c].empty()) continue;
      // Duplicate exemplars can leave a medoid without members; move it to
      // the worst-fit point of a cluster that can spare one.
      std::size_t worst = n;
      std::size_t worst_raw = n;
      double worst_cost = 0.0;
      double worst_dist = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const auto owner = static_cast<std::size_t>(a.labels[i]);
        if (members[owner].size() < 2 || std::find(next.begin(), next.end(), i) != next.end()) continue;
        if (w[i] * a.distance[i] > worst_cost) {
          worst_cost = w[i] * a.distance[i];
          worst = i;
        }
        if (a.distance[i] > worst_dist) {
          worst_dist = a.distance[i];
          worst_raw = i;
        }
      }
      if (worst == n) worst = worst_raw;
      if (worst == n) throw Error(ErrorCode::kDegenerateInput, "cannot reseed empty medoid cluster");
      next[c] = worst;
    }
    changed = next != model.medoids;
    model.medoids = std::move(next);
    model.iterations_run = it + 1;
    if (!changed && !options.pin_iterations) {
      model.converged = true;
      break;
    }
  }
  if (changed || options.pin_iterations) {
    assign_to_medoids(data, model.medoids, a);
    model.objective_trace.push_back(weighted_cost(w, a.distance));
  }

  model.centroids.resize(static_cast<Eigen::Index>(options.k), data.cols());
  for (std::size_t c = 0; c < options.k; ++c) {
    model.centroids.row(static_cast<Eigen::Index>(c)) = data.row(static_cast<Eigen::Index>(model.medoids[c]));
  }
  model.labels = std::move(a.labels);
  return model;
}

}  // namespace embedtopics
