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
#include <numbers>

#include "clustering_internal.hpp"
#include "embedtopics/clustering.hpp"
#include "embedtopics/error.hpp"

namespace embedtopics {

namespace {

// log N(x | mu, Sigma) for every row, via the Cholesky factor of Sigma.
Eigen::VectorXd log_density(const RowMatrix& data, const Eigen::RowVectorXd& mean,
                            const Eigen::MatrixXd& cov, std::size_t component) {
  const Eigen::LLT<Eigen::MatrixXd> llt(cov);
  if (llt.info() != Eigen::Success) {
    throw Error(ErrorCode::kSingularCovariance,
                "covariance of component " + std::to_string(component) +
                    " is not positive definite; increase the regularization floor");
  }
  const Eigen::MatrixXd& factor = llt.matrixLLT();
  const double log_det = 2.0 * factor.diagonal().array().log().sum();
  Eigen::MatrixXd centered_t = (data.rowwise() - mean).transpose();
  llt.matrixL().solveInPlace(centered_t);
  const Eigen::VectorXd mahalanobis = centered_t.colwise().squaredNorm().transpose();
  const double m = static_cast<double>(data.cols());
  return (-0.5 * (m * std::log(2.0 * std::numbers::pi) + log_det + mahalanobis.array())).matrix();
}

struct EStep {
  RowMatrix responsibilities;
  double negative_log_likelihood = 0.0;
};

EStep expectation(const RowMatrix& data, std::span<const double> w, const GmmParams& params) {
  const Eigen::Index n = data.rows();
  const auto k = static_cast<Eigen::Index>(params.covariances.size());
  RowMatrix log_p(n, k);
  for (Eigen::Index c = 0; c < k; ++c) {
    const double log_pi = std::log(params.mixture_weights(c));
    log_p.col(c) = log_density(data, params.means.row(c), params.covariances[static_cast<std::size_t>(c)],
                               static_cast<std::size_t>(c))
                       .array() +
                   log_pi;
  }
  EStep out;
  out.responsibilities.resize(n, k);
  double log_likelihood = 0.0;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double top = log_p.row(i).maxCoeff();
    double sum = 0.0;
    for (Eigen::Index c = 0; c < k; ++c) sum += std::exp(log_p(i, c) - top);
    const double lse = top + std::log(sum);
    for (Eigen::Index c = 0; c < k; ++c) out.responsibilities(i, c) = std::exp(log_p(i, c) - lse);
    log_likelihood += w[static_cast<std::size_t>(i)] * lse;
  }
  out.negative_log_likelihood = -log_likelihood;
  return out;
}

// Weighted M-step: each row counts w_i * r_ic times. Components that lose
// all mass keep their previous parameters with zero mixture weight.
GmmParams maximization(const RowMatrix& data, std::span<const double> w, const RowMatrix& resp,
                       const GmmParams& previous, double reg) {
  const Eigen::Index n = data.rows();
  const Eigen::Index m = data.cols();
  const Eigen::Index k = resp.cols();
  GmmParams next;
  next.reg = reg;
  next.means.resize(k, m);
  next.covariances.resize(static_cast<std::size_t>(k));
  next.mixture_weights.resize(k);

  double total_mass = 0.0;
  for (Eigen::Index c = 0; c < k; ++c) {
    std::vector<Eigen::Index> rows;
    std::vector<double> mass;
    double nk = 0.0;
    for (Eigen::Index i = 0; i < n; ++i) {
      const double a = w[static_cast<std::size_t>(i)] * resp(i, c);
      if (a > 0.0) {
        rows.push_back(i);
        mass.push_back(a);
        nk += a;
      }
    }
    next.mixture_weights(c) = nk;
    total_mass += nk;
    const auto cu = static_cast<std::size_t>(c);
    if (!(nk > 0.0)) {
      next.means.row(c) = previous.means.row(c);
      next.covariances[cu] = previous.covariances[cu];
      continue;
    }
    Eigen::RowVectorXd mean = Eigen::RowVectorXd::Zero(m);
    for (std::size_t r = 0; r < rows.size(); ++r) mean.noalias() += mass[r] * data.row(rows[r]);
    mean /= nk;

    Eigen::MatrixXd scaled(static_cast<Eigen::Index>(rows.size()), m);
    for (std::size_t r = 0; r < rows.size(); ++r) {
      scaled.row(static_cast<Eigen::Index>(r)) = std::sqrt(mass[r]) * (data.row(rows[r]) - mean);
    }
    Eigen::MatrixXd cov = Eigen::MatrixXd::Zero(m, m);
    cov.selfadjointView<Eigen::Lower>().rankUpdate(scaled.transpose());
    cov = cov.selfadjointView<Eigen::Lower>();
    cov /= nk;
    cov.diagonal().array() += reg;
    next.means.row(c) = mean;
    next.covariances[cu] = std::move(cov);
  }
  next.mixture_weights /= total_mass;
  return next;
}

}  // namespace

Eigen::VectorXd gmm_component_log_density(const GmmParams& params, std::size_t component,
                                          const RowMatrix& data) {
  if (component >= params.covariances.size()) {
    throw Error(ErrorCode::kInvalidArgument, "no gmm component " + std::to_string(component));
  }
  return log_density(data, params.means.row(static_cast<Eigen::Index>(component)),
                     params.covariances[component], component);
}

ClusterModel fit_gmm(const RowMatrix& data, std::span<const double> weights,
                     const FitOptions& options) {
  detail::check_cluster_count(data, options.k);
  const auto n = static_cast<std::size_t>(data.rows());
  const std::vector<double> w = detail::canonical_weights(weights, n);
  const double variance = detail::mean_feature_variance(data);
  const double reg = options.reg.value_or(variance > 0.0 ? 1e-6 * variance : 1e-6);
  if (!(reg > 0.0)) throw Error(ErrorCode::kInvalidArgument, "covariance floor must be positive");
  const double tol = options.tol.value_or(1e-5);

  // Initialization: a short weighted k-means run on the same seed.
  detail::Rng rng(options.seed);
  const auto seeds = detail::kmeanspp_seeds(data, w, options.k, rng);
  RowMatrix centroids(static_cast<Eigen::Index>(options.k), data.cols());
  for (std::size_t c = 0; c < seeds.size(); ++c) {
    centroids.row(static_cast<Eigen::Index>(c)) = data.row(static_cast<Eigen::Index>(seeds[c]));
  }
  const ClusterModel init = detail::run_lloyd(data, w, centroids, options.gmm_init_iterations,
                                              1e-4 * variance, false);
  RowMatrix hard = RowMatrix::Zero(data.rows(), static_cast<Eigen::Index>(options.k));
  for (std::size_t i = 0; i < n; ++i) hard(static_cast<Eigen::Index>(i), init.labels[i]) = 1.0;

  GmmParams fallback;
  fallback.means = init.centroids;
  fallback.covariances.assign(options.k, Eigen::MatrixXd::Identity(data.cols(), data.cols()) *
                                             (variance > 0.0 ? variance : 1.0));
  GmmParams params = maximization(data, w, hard, fallback, reg);

  ClusterModel model;
  model.kind = ClusterKind::kGmm;
  model.k = options.k;
  model.seed = options.seed;

  EStep e;
  for (std::size_t it = 0; it < options.max_iter; ++it) {
    e = expectation(data, w, params);
    model.objective_trace.push_back(e.negative_log_likelihood);
    if (it > 0 && !options.pin_iterations) {
      const double prev = model.objective_trace[it - 1];
      const double cur = e.negative_log_likelihood;
      if (std::abs(prev - cur) <= tol * std::max(std::abs(cur), std::numeric_limits<double>::min())) {
        model.converged = true;
        break;
      }
    }
    params = maximization(data, w, e.responsibilities, params, reg);
    model.iterations_run = it + 1;
  }
  if (!model.converged) {
    e = expectation(data, w, params);
    model.objective_trace.push_back(e.negative_log_likelihood);
  }

  model.labels.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    Eigen::Index best = 0;
    e.responsibilities.row(static_cast<Eigen::Index>(i)).maxCoeff(&best);
    model.labels[i] = static_cast<std::int32_t>(best);
  }
  model.centroids = params.means;
  model.responsibilities = std::move(e.responsibilities);
  model.gmm = std::move(params);
  return model;
}

}  // namespace embedtopics
