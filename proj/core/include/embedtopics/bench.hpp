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

#ifndef EMBEDTOPICS_BENCH_HPP
#define EMBEDTOPICS_BENCH_HPP

#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "embedtopics/clustering.hpp"

namespace embedtopics {

enum class ScalingAxis { kN, kM, kK };

std::string_view to_string(ScalingAxis axis);
ScalingAxis parse_scaling_axis(std::string_view name);

/// Sizes held fixed while one axis varies.
struct ScalingBase {
  std::size_t n = 10000;
  std::size_t m = 100;
  std::size_t k = 20;
  std::size_t iterations = 20;  ///< pinned t
  std::uint64_t seed = 7;
};

struct TimingRow {
  ScalingAxis axis = ScalingAxis::kN;
  std::size_t size = 0;
  ClusterKind algorithm = ClusterKind::kKMeans;
  double median_seconds = 0.0;
  std::size_t reps = 0;
};

/// n points drawn around k Gaussian centers in m dimensions; deterministic
/// in `seed`.
RowMatrix synthetic_blobs(std::size_t n, std::size_t m, std::size_t k, std::uint64_t seed);

/// Times fits with a pinned iteration count over synthetic data, one cell
/// per size, and reports the median of `reps` wall-clock measurements after
/// one untimed warm-up fit. Repetitions cycle through the sizes, so all
/// cells stay in memory for the duration of the call.
std::vector<TimingRow> bench_scaling(ScalingAxis axis, const std::vector<std::size_t>& sizes,
                                     ClusterKind algorithm, std::size_t reps,
                                     const ScalingBase& base = {});

/// `axis,size,algorithm,median_seconds,reps` plus one line per row.
std::string timing_csv(const std::vector<TimingRow>& rows);

}  // namespace embedtopics

#endif  // EMBEDTOPICS_BENCH_HPP
