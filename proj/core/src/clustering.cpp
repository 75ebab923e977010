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

#include "embedtopics/clustering.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "clustering_internal.hpp"
#include "embedtopics/error.hpp"

namespace embedtopics {

namespace detail {

std::vector<double> canonical_weights(std::span<const double> weights, std::size_t n) {
  if (weights.empty()) return std::vector<double>(n, 1.0);
  if (weights.size() != n) {
    throw Error(ErrorCode::kInvalidArgument, "weights have " + std::to_string(weights.size()) +
                                                 " entries for " + std::to_string(n) + " rows");
  }
  double max_w = 0.0;
  for (const double w : weights) {
    if (!std::isfinite(w) || w < 0.0) {
      throw Error(ErrorCode::kInvalidArgument, "weights must be finite and nonnegative");
    }
    max_w = std::max(max_w, w);
  }
  if (max_w <= 0.0) throw Error(ErrorCode::kInvalidArgument, "at least one weight must be positive");
  std::vector<double> out(weights.begin(), weights.end());
  for (double& w : out) w /= max_w;
  return out;
}

std::vector<std::size_t> canonical_row_order(const RowMatrix& data) {
  std::vector<std::size_t> order(static_cast<std::size_t>(data.rows()));
  std::iota(order.begin(), order.end(), std::size_t{0});
  const auto m = data.cols();
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    const double* ra = data.row(static_cast<Eigen::Index>(a)).data();
    const double* rb = data.row(static_cast<Eigen::Index>(b)).data();
    for (Eigen::Index j = 0; j < m; ++j) {
      if (ra[j] < rb[j]) return true;
      if (rb[j] < ra[j]) return false;
    }
    return a < b;
  });
  return order;
}

void check_cluster_count(const RowMatrix& data, std::size_t k) {
  const auto n = static_cast<std::size_t>(data.rows());
  if (n == 0 || data.cols() == 0) throw Error(ErrorCode::kInvalidArgument, "empty data matrix");
  if (!data.allFinite()) throw Error(ErrorCode::kInvalidArgument, "data contains NaN or infinity");
  if (k < 1) throw Error(ErrorCode::kInvalidArgument, "k must be at least 1");
  if (k > n) {
    throw Error(ErrorCode::kInvalidArgument,
                "k = " + std::to_string(k) + " exceeds row count " + std::to_string(n));
  }
  const std::size_t distinct = count_distinct_rows(data);
  if (k > distinct) {
    throw Error(ErrorCode::kDegenerateInput, "k = " + std::to_string(k) + " exceeds the " +
                                                 std::to_string(distinct) + " distinct rows");
  }
}

std::vector<std::size_t> kmeanspp_seeds(const RowMatrix& data, std::span<const double> w,
                                        std::size_t k, Rng& rng) {
  const std::vector<std::size_t> order = canonical_row_order(data);
  const std::size_t n = order.size();
  std::vector<double> mass(n);
  for (std::size_t p = 0; p < n; ++p) mass[p] = w[order[p]];

  std::vector<std::size_t> seeds;
  seeds.reserve(k);
  std::size_t pos = rng.sample(mass);
  seeds.push_back(order[pos]);

  std::vector<double> closest(n);
  const auto first = static_cast<Eigen::Index>(seeds.back());
  for (std::size_t i = 0; i < n; ++i) {
    closest[i] = squared_distance(data, static_cast<Eigen::Index>(i), data, first);
  }
  while (seeds.size() < k) {
    for (std::size_t p = 0; p < n; ++p) mass[p] = w[order[p]] * closest[order[p]];
    pos = rng.sample(mass);
    if (pos == n) {
      // Every positively weighted point already coincides with a seed.
      for (std::size_t p = 0; p < n; ++p) mass[p] = closest[order[p]];
      pos = rng.sample(mass);
    }
    if (pos == n) throw Error(ErrorCode::kDegenerateInput, "not enough distinct rows to seed");
    const std::size_t seed = order[pos];
    seeds.push_back(seed);
    for (std::size_t i = 0; i < n; ++i) {
      closest[i] = std::min(closest[i], squared_distance(data, static_cast<Eigen::Index>(i), data,
                                                         static_cast<Eigen::Index>(seed)));
    }
  }
  return seeds;
}

double mean_feature_variance(const RowMatrix& data) {
  if (data.rows() == 0) return 0.0;
  const Eigen::RowVectorXd mean = data.colwise().mean();
  return (data.rowwise() - mean).array().square().colwise().sum().mean() /
         static_cast<double>(data.rows());
}

namespace {

struct Assignment {
  std::vector<std::int32_t> labels;
  std::vector<double> score;  // squared distance (euclidean) or cosine (spherical)
};

// Nearest centroid by squared distance. Candidates are ranked with the
// inner-product expansion; the reported distance is recomputed directly.
void assign_nearest(const RowMatrix& data, const Eigen::VectorXd& row_sq, const RowMatrix& centroids,
                    Assignment& out) {
  const Eigen::MatrixXd dots = data * centroids.transpose();
  const Eigen::VectorXd cen_sq = centroids.rowwise().squaredNorm();
  const Eigen::Index n = data.rows();
  const Eigen::Index k = centroids.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = 0;
    double best_d = std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < k; ++c) {
      const double d = row_sq(i) - 2.0 * dots(i, c) + cen_sq(c);
      if (d < best_d) {
        best_d = d;
        best = c;
      }
    }
    out.labels[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(best);
    out.score[static_cast<std::size_t>(i)] = squared_distance(data, i, centroids, best);
  }
}

void assign_most_similar(const RowMatrix& data, const RowMatrix& centroids, Assignment& out) {
  const Eigen::MatrixXd dots = data * centroids.transpose();
  const Eigen::Index n = data.rows();
  const Eigen::Index k = centroids.rows();
  for (Eigen::Index i = 0; i < n; ++i) {
    Eigen::Index best = 0;
    double best_s = -std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < k; ++c) {
      if (dots(i, c) > best_s) {
        best_s = dots(i, c);
        best = c;
      }
    }
    out.labels[static_cast<std::size_t>(i)] = static_cast<std::int32_t>(best);
    out.score[static_cast<std::size_t>(i)] = data.row(i).dot(centroids.row(best));
  }
}

double weighted_sum(std::span<const double> w, std::span<const double> values) {
  double total = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) total += w[i] * values[i];
  return total;
}

// Weighted member sums per cluster. Clusters with members but no weight keep
// their previous centroid; the returned counts flag empty clusters.
std::vector<std::size_t> accumulate_centroids(const RowMatrix& data, std::span<const double> w,
                                              const std::vector<std::int32_t>& labels,
                                              const RowMatrix& previous, RowMatrix& sums,
                                              std::vector<double>& mass) {
  const auto k = previous.rows();
  sums.setZero(k, data.cols());
  mass.assign(static_cast<std::size_t>(k), 0.0);
  std::vector<std::size_t> counts(static_cast<std::size_t>(k), 0);
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const auto c = static_cast<std::size_t>(labels[static_cast<std::size_t>(i)]);
    const double wi = w[static_cast<std::size_t>(i)];
    sums.row(static_cast<Eigen::Index>(c)).noalias() += wi * data.row(i);
    mass[c] += wi;
    ++counts[c];
  }
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (counts[c] > 0 && mass[c] <= 0.0) sums.row(static_cast<Eigen::Index>(c)) = previous.row(static_cast<Eigen::Index>(c));
  }
  return counts;
}

// Moves the worst-fit point (largest weighted misfit, among healthy
// clusters that can spare a member) into each cluster flagged for reseeding.
template <typename Misfit>
void reseed(const RowMatrix& data, std::span<const double> w, std::vector<std::int32_t>& labels,
            std::vector<std::size_t>& counts, const std::vector<bool>& needs_seed,
            RowMatrix& centroids, Misfit misfit) {
  constexpr auto kNone = static_cast<std::size_t>(-1);
  for (std::size_t c = 0; c < counts.size(); ++c) {
    if (!needs_seed[c]) continue;
    std::size_t best = kNone;
    std::size_t best_raw_idx = kNone;
    double best_weighted = 0.0;
    double best_raw = 0.0;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const auto owner = static_cast<std::size_t>(labels[i]);
      if (needs_seed[owner] || counts[owner] < 2) continue;
      const double raw = misfit(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(owner));
      if (w[i] * raw > best_weighted) {
        best_weighted = w[i] * raw;
        best = i;
      }
      if (raw > best_raw) {
        best_raw = raw;
        best_raw_idx = i;
      }
    }
    if (best == kNone) best = best_raw_idx;
    if (best == kNone) {
      throw Error(ErrorCode::kZeroCentroid, "cannot reseed cluster " + std::to_string(c));
    }
    --counts[static_cast<std::size_t>(labels[best])];
    labels[best] = static_cast<std::int32_t>(c);
    ++counts[c];
    centroids.row(static_cast<Eigen::Index>(c)) = data.row(static_cast<Eigen::Index>(best));
  }
}

std::vector<bool> empty_clusters(const std::vector<std::size_t>& counts) {
  std::vector<bool> flags(counts.size());
  for (std::size_t c = 0; c < counts.size(); ++c) flags[c] = counts[c] == 0;
  return flags;
}

}  // namespace

ClusterModel run_lloyd(const RowMatrix& data, std::span<const double> w, RowMatrix centroids,
                       std::size_t max_iter, double shift_threshold, bool pin_iterations) {
  const auto n = static_cast<std::size_t>(data.rows());
  const Eigen::VectorXd row_sq = data.rowwise().squaredNorm();
  Assignment a{std::vector<std::int32_t>(n), std::vector<double>(n)};
  ClusterModel model;
  model.k = static_cast<std::size_t>(centroids.rows());

  RowMatrix sums;
  std::vector<double> mass;
  for (std::size_t it = 0; it < max_iter; ++it) {
    assign_nearest(data, row_sq, centroids, a);
    model.objective_trace.push_back(weighted_sum(w, a.score));

    std::vector<std::size_t> counts = accumulate_centroids(data, w, a.labels, centroids, sums, mass);
    RowMatrix next = sums;
    for (Eigen::Index c = 0; c < next.rows(); ++c) {
      if (mass[static_cast<std::size_t>(c)] > 0.0) next.row(c) /= mass[static_cast<std::size_t>(c)];
    }
    reseed(data, w, a.labels, counts, empty_clusters(counts), next,
           [&](Eigen::Index i, Eigen::Index c) { return squared_distance(data, i, next, c); });
    const double shift = (next - centroids).squaredNorm();
    centroids = std::move(next);
    model.iterations_run = it + 1;
    if (!pin_iterations && shift <= shift_threshold) {
      model.converged = true;
      break;
    }
  }
  assign_nearest(data, row_sq, centroids, a);
  model.objective_trace.push_back(weighted_sum(w, a.score));
  model.centroids = std::move(centroids);
  model.labels = std::move(a.labels);
  return model;
}

}  // namespace detail

std::string_view to_string(ClusterKind kind) {
  switch (kind) {
    case ClusterKind::kKMeans: return "km";
    case ClusterKind::kSpherical: return "sk";
    case ClusterKind::kKMedoids: return "kd";
    case ClusterKind::kGmm: return "gmm";
  }
  return "unknown";
}

ClusterKind parse_cluster_kind(std::string_view name) {
  if (name == "km" || name == "kmeans") return ClusterKind::kKMeans;
  if (name == "sk" || name == "spherical") return ClusterKind::kSpherical;
  if (name == "kd" || name == "kmedoids") return ClusterKind::kKMedoids;
  if (name == "gmm") return ClusterKind::kGmm;
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm '" + std::string(name) + "'");
}

std::size_t count_distinct_rows(const RowMatrix& data) {
  if (data.rows() == 0) return 0;
  const auto order = detail::canonical_row_order(data);
  std::size_t distinct = 1;
  for (std::size_t p = 1; p < order.size(); ++p) {
    if (data.row(static_cast<Eigen::Index>(order[p])) != data.row(static_cast<Eigen::Index>(order[p - 1]))) {
      ++distinct;
    }
  }
  return distinct;
}

ClusterModel fit_kmeans(const RowMatrix& data, std::span<const double> weights,
                        const FitOptions& options) {
  detail::check_cluster_count(data, options.k);
  const std::vector<double> w = detail::canonical_weights(weights, static_cast<std::size_t>(data.rows()));
  detail::Rng rng(options.seed);
  const auto seeds = detail::kmeanspp_seeds(data, w, options.k, rng);
  RowMatrix centroids(static_cast<Eigen::Index>(options.k), data.cols());
  for (std::size_t c = 0; c < seeds.size(); ++c) {
    centroids.row(static_cast<Eigen::Index>(c)) = data.row(static_cast<Eigen::Index>(seeds[c]));
  }
  const double threshold = options.tol.value_or(1e-4) * detail::mean_feature_variance(data);
  ClusterModel model = detail::run_lloyd(data, w, std::move(centroids), options.max_iter, threshold,
                                         options.pin_iterations);
  model.kind = ClusterKind::kKMeans;
  model.seed = options.seed;
  return model;
}

ClusterModel fit_spherical_kmeans(const RowMatrix& data, std::span<const double> weights,
                                  const FitOptions& options) {
  detail::check_cluster_count(data, options.k);
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    if (std::abs(data.row(i).norm() - 1.0) > 1e-6) {
      throw Error(ErrorCode::kInvalidArgument,
                  "spherical k-means needs unit rows; row " + std::to_string(i) + " is not");
    }
  }
  const auto n = static_cast<std::size_t>(data.rows());
  const std::vector<double> w = detail::canonical_weights(weights, n);
  detail::Rng rng(options.seed);
  const auto seeds = detail::kmeanspp_seeds(data, w, options.k, rng);

  ClusterModel model;
  model.kind = ClusterKind::kSpherical;
  model.k = options.k;
  model.seed = options.seed;
  RowMatrix centroids(static_cast<Eigen::Index>(options.k), data.cols());
  for (std::size_t c = 0; c < seeds.size(); ++c) {
    centroids.row(static_cast<Eigen::Index>(c)) = data.row(static_cast<Eigen::Index>(seeds[c]));
  }
  const double threshold = options.tol.value_or(1e-4) * detail::mean_feature_variance(data);

  detail::Assignment a{std::vector<std::int32_t>(n), std::vector<double>(n)};
  RowMatrix sums;
  std::vector<double> mass;
  for (std::size_t it = 0; it < options.max_iter; ++it) {
    detail::assign_most_similar(data, centroids, a);
    model.objective_trace.push_back(detail::weighted_sum(w, a.score));

    std::vector<std::size_t> counts =
        detail::accumulate_centroids(data, w, a.labels, centroids, sums, mass);
    // A cluster whose weighted member sum vanishes scores zero under every
    // centroid direction, so it is reseeded like an empty one.
    std::vector<bool> needs_seed = detail::empty_clusters(counts);
    RowMatrix next = sums;
    for (Eigen::Index c = 0; c < next.rows(); ++c) {
      const double norm = next.row(c).norm();
      if (norm > 0.0) {
        next.row(c) /= norm;
      } else {
        needs_seed[static_cast<std::size_t>(c)] = true;
      }
    }
    detail::reseed(data, w, a.labels, counts, needs_seed, next,
                   [&](Eigen::Index i, Eigen::Index c) { return 1.0 - data.row(i).dot(next.row(c)); });
    const double shift = (next - centroids).squaredNorm();
    centroids = std::move(next);
    model.iterations_run = it + 1;
    if (!options.pin_iterations && shift <= threshold) {
      model.converged = true;
      break;
    }
  }
  detail::assign_most_similar(data, centroids, a);
  model.objective_trace.push_back(detail::weighted_sum(w, a.score));
  model.centroids = std::move(centroids);
  model.labels = std::move(a.labels);
  return model;
}

ClusterModel fit(ClusterKind kind, const RowMatrix& data, std::span<const double> weights,
                 const FitOptions& options) {
  switch (kind) {
    case ClusterKind::kKMeans: return fit_kmeans(data, weights, options);
    case ClusterKind::kSpherical: return fit_spherical_kmeans(data, weights, options);
    case ClusterKind::kKMedoids: return fit_kmedoids(data, weights, options);
    case ClusterKind::kGmm: return fit_gmm(data, weights, options);
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown algorithm");
}

bool objective_is_monotone(const ClusterModel& model, double rel_tol) {
  const bool increasing = model.kind == ClusterKind::kSpherical;
  for (std::size_t t = 1; t < model.objective_trace.size(); ++t) {
    const double prev = model.objective_trace[t - 1];
    const double cur = model.objective_trace[t];
    const double slack = rel_tol * std::max(1.0, std::abs(prev));
    if (increasing ? cur < prev - slack : cur > prev + slack) return false;
  }
  return true;
}

}  // namespace embedtopics
