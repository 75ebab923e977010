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

// Microbenchmarks for the clustering fits. Iteration counts are pinned so
// the reported complexity reflects per-iteration cost:
//   km, sk, kd-assignment: O(t k n m)   gmm: O(t k n m^2) plus O(t k m^3)
#include <benchmark/benchmark.h>

#include "embedtopics/bench.hpp"
#include "embedtopics/clustering.hpp"

namespace et = embedtopics;

namespace {

et::FitOptions pinned(std::size_t k, std::size_t iterations) {
  et::FitOptions o;
  o.k = k;
  o.max_iter = iterations;
  o.pin_iterations = true;
  o.gmm_init_iterations = 1;
  return o;
}

void BM_KMeansOverN(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const et::RowMatrix data = et::synthetic_blobs(n, 100, 20, 7);
  const auto options = pinned(20, 20);
  for (auto _ : state) benchmark::DoNotOptimize(et::fit_kmeans(data, {}, options));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KMeansOverN)->RangeMultiplier(2)->Range(2500, 20000)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

void BM_WeightedKMeansOverN(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const et::RowMatrix data = et::synthetic_blobs(n, 100, 20, 7);
  std::vector<double> weights(n);
  for (std::size_t i = 0; i < n; ++i) weights[i] = 1.0 / static_cast<double>(1 + i % 97);
  const auto options = pinned(20, 20);
  for (auto _ : state) benchmark::DoNotOptimize(et::fit_kmeans(data, weights, options));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_WeightedKMeansOverN)->RangeMultiplier(2)->Range(2500, 20000)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

void BM_SphericalOverN(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  et::RowMatrix data = et::synthetic_blobs(n, 100, 20, 7);
  data.rowwise().normalize();
  const auto options = pinned(20, 20);
  for (auto _ : state) benchmark::DoNotOptimize(et::fit_spherical_kmeans(data, {}, options));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_SphericalOverN)->RangeMultiplier(2)->Range(2500, 20000)->Unit(benchmark::kMillisecond)->Complexity(benchmark::oN);

void BM_GmmOverM(benchmark::State& state) {
  const auto m = static_cast<std::size_t>(state.range(0));
  const et::RowMatrix data = et::synthetic_blobs(4000, m, 10, 7);
  const auto options = pinned(10, 5);
  for (auto _ : state) benchmark::DoNotOptimize(et::fit_gmm(data, {}, options));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_GmmOverM)->RangeMultiplier(2)->Range(25, 200)->Unit(benchmark::kMillisecond)->Complexity();

void BM_KMedoidsOverN(benchmark::State& state) {
  const auto n = static_cast<std::size_t>(state.range(0));
  const et::RowMatrix data = et::synthetic_blobs(n, 50, 10, 7);
  const auto options = pinned(10, 5);
  for (auto _ : state) benchmark::DoNotOptimize(et::fit_kmedoids(data, {}, options));
  state.SetComplexityN(state.range(0));
}
BENCHMARK(BM_KMedoidsOverN)->RangeMultiplier(2)->Range(1000, 4000)->Unit(benchmark::kMillisecond)->Complexity();

}  // namespace
