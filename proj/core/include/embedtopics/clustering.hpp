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

#ifndef EMBEDTOPICS_CLUSTERING_HPP
#define EMBEDTOPICS_CLUSTERING_HPP

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "embedtopics/embeddings.hpp"

namespace embedtopics {

enum class ClusterKind { kKMeans, kSpherical, kKMedoids, kGmm };

std::string_view to_string(ClusterKind kind);
/// Accepts "km", "sk", "kd", "gmm".
ClusterKind parse_cluster_kind(std::string_view name);

struct FitOptions {
  std::size_t k = 20;
  std::uint64_t seed = 0;
  std::size_t max_iter = 300;
  /// Relative centroid shift (km, sk, kd) or relative log-likelihood change
  /// (gmm). Unset means 1e-4 for the centroid methods and 1e-5 for gmm.
  std::optional<double> tol;
  /// Diagonal covariance floor for gmm. Unset means 1e-6 times the mean
  /// per-feature variance of the data.
  std::optional<double> reg;
  /// Length of the weighted k-means run that initializes gmm.
  std::size_t gmm_init_iterations = 10;
  /// Ignore convergence and run exactly max_iter iterations (benchmarks).
  bool pin_iterations = false;
};

struct GmmParams {
  RowMatrix means;                           ///< k x m
  std::vector<Eigen::MatrixXd> covariances;  ///< k full m x m, reg included
  Eigen::VectorXd mixture_weights;           ///< length k, sums to 1
  double reg = 0.0;
};

/// A fitted clustering.
///
/// `objective_trace[t]` is the objective after the assignment (or E) step of
/// iteration t: weighted squared-distance cost for km, weighted distance
/// cost for kd (both nonincreasing), weighted cosine similarity for sk
/// (nondecreasing), weighted negative log-likelihood for gmm
/// (nonincreasing). Costs are expressed with the weights divided by their
/// maximum, so they are unchanged when every weight is scaled.
struct ClusterModel {
  ClusterKind kind = ClusterKind::kKMeans;
  std::size_t k = 0;
  std::uint64_t seed = 0;
  RowMatrix centroids;  ///< k x m; gmm stores its means here as well
  std::vector<std::size_t> medoids;  ///< kd: row index of each exemplar
  std::optional<GmmParams> gmm;
  std::vector<std::int32_t> labels;  ///< hard label per row (gmm: argmax responsibility)
  RowMatrix responsibilities;        ///< gmm only, n x k
  std::vector<double> objective_trace;
  std::size_t iterations_run = 0;
  bool converged = false;
};

/// Weighted Lloyd iterations on sum_i w_i ||x_i - c_a(i)||^2. An empty
/// `weights` span means unit weights. Weights are divided by their maximum
/// before use; since every update is scale invariant in the weights, a
/// uniform vector of any value runs the exact same arithmetic as the
/// unweighted algorithm.
ClusterModel fit_kmeans(const RowMatrix& data, std::span<const double> weights,
                        const FitOptions& options);

/// Spherical k-means. Rows must have unit norm (kInvalidArgument otherwise).
ClusterModel fit_spherical_kmeans(const RowMatrix& data, std::span<const double> weights,
                                  const FitOptions& options);

/// Alternating k-medoids on Euclidean distance; exemplars are data rows.
ClusterModel fit_kmedoids(const RowMatrix& data, std::span<const double> weights,
                          const FitOptions& options);

/// Full-covariance EM with weights as point multiplicities.
ClusterModel fit_gmm(const RowMatrix& data, std::span<const double> weights,
                     const FitOptions& options);

ClusterModel fit(ClusterKind kind, const RowMatrix& data, std::span<const double> weights,
                 const FitOptions& options);

/// log N(x_i | mu_c, Sigma_c) for every row. Throws kSingularCovariance if
/// the stored covariance does not factor.
Eigen::VectorXd gmm_component_log_density(const GmmParams& params, std::size_t component,
                                          const RowMatrix& data);

/// True when the trace moves in the kind's improving direction at every
/// step, allowing a relative slack of `rel_tol` per step.
bool objective_is_monotone(const ClusterModel& model, double rel_tol);

std::size_t count_distinct_rows(const RowMatrix& data);

/// Versioned JSON artifact; matrices are stored as base64 of row-major
/// little-endian float64 so the round trip is bit-exact.
void save_model(const std::filesystem::path& path, const ClusterModel& model);
ClusterModel load_model(const std::filesystem::path& path);

}  // namespace embedtopics

#endif  // EMBEDTOPICS_CLUSTERING_HPP
