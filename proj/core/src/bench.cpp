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

#include "embedtopics/bench.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "embedtopics/error.hpp"
#include "random.hpp"
#include "text.hpp"

namespace embedtopics {

std::string_view to_string(ScalingAxis axis) {
  switch (axis) {
    case ScalingAxis::kN: return "n";
    case ScalingAxis::kM: return "m";
    case ScalingAxis::kK: return "k";
  }
  return "n";
}

ScalingAxis parse_scaling_axis(std::string_view name) {
  if (name == "n") return ScalingAxis::kN;
  if (name == "m") return ScalingAxis::kM;
  if (name == "k") return ScalingAxis::kK;
  throw Error(ErrorCode::kInvalidArgument, "unknown scaling axis '" + std::string(name) + "'");
}

RowMatrix synthetic_blobs(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed) {
  if (n == 0 || m == 0 || k == 0) throw Error(ErrorCode::kInvalidArgument, "blob sizes must be positive");
  detail::Rng rng(seed);
  RowMatrix centers(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < centers.size(); ++i) centers.data()[i] = 5.0 * rng.normal();
  RowMatrix data(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(m));
  for (Eigen::Index i = 0; i < data.rows(); ++i) {
    const auto c = static_cast<Eigen::Index>(i % static_cast<Eigen::Index>(k));
    for (Eigen::Index j = 0; j < data.cols(); ++j) data(i, j) = centers(c, j) + rng.normal();
  }
  return data;
}

std::vector<TimingRow> bench_scaling(ScalingAxis axis, const std::vector<std::size_t>& sizes,
                                     ClusterKind algorithm, std::size_t reps,
                                     const ScalingBase& base) {
  if (reps == 0) throw Error(ErrorCode::kInvalidArgument, "reps must be at least 1");
  struct Cell {
    RowMatrix data;
    FitOptions options;
    std::vector<double> seconds;
  };
  std::vector<Cell> cells;
  for (std::size_t size : sizes) {
    std::size_t n = base.n;
    std::size_t m = base.m;
    std::size_t k = base.k;
    switch (axis) {
      case ScalingAxis::kN: n = size; break;
      case ScalingAxis::kM: m = size; break;
      case ScalingAxis::kK: k = size; break;
    }
    Cell cell;
    cell.data = synthetic_blobs(n, m, k, base.seed);
    if (algorithm == ClusterKind::kSpherical) cell.data.rowwise().normalize();
    cell.options.k = k;
    cell.options.seed = base.seed;
    cell.options.max_iter = base.iterations;
    cell.options.pin_iterations = true;
    cell.options.gmm_init_iterations = 1;
    (void)fit(algorithm, cell.data, {}, cell.options);
    cells.push_back(std::move(cell));
  }
  // Repetitions go round-robin over the sizes so that a slow stretch of the
  // machine is shared by every cell instead of skewing one of them.
  for (std::size_t r = 0; r < reps; ++r) {
    for (Cell& cell : cells) {
      const auto start = std::chrono::steady_clock::now();
      (void)fit(algorithm, cell.data, {}, cell.options);
      cell.seconds.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    }
  }
  std::vector<TimingRow> rows;
  for (std::size_t i = 0; i < cells.size(); ++i) {
    std::vector<double>& seconds = cells[i].seconds;
    std::sort(seconds.begin(), seconds.end());
    const std::size_t mid = seconds.size() / 2;
    const double median = seconds.size() % 2 == 1 ? seconds[mid] : 0.5 * (seconds[mid - 1] + seconds[mid]);
    rows.push_back({axis, sizes[i], algorithm, median, reps});
  }
  return rows;
}

std::string timing_csv(const std::vector<TimingRow>& rows) {
  std::ostringstream out;
  out << "axis,size,algorithm,median_seconds,reps\n";
  for (const auto& r : rows) {
    out << to_string(r.axis) << ',' << r.size << ',' << to_string(r.algorithm) << ','
        << detail::format_double(r.median_seconds) << ',' << r.reps << '\n';
  }
  return out.str();
}

}  // namespace embedtopics
