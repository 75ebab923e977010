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

#include <benchmark/benchmark.h>

#include <random>
#include <string>
#include <vector>

#include "embedtopics/evaluation.hpp"

namespace et = embedtopics;

namespace {

std::vector<et::Document> zipf_docs(std::size_t docs, std::size_t types) {
  std::vector<double> mass(types);
  for (std::size_t i = 0; i < types; ++i) mass[i] = 1.0 / static_cast<double>(i + 1);
  std::mt19937_64 gen(1);
  std::discrete_distribution<std::size_t> pick(mass.begin(), mass.end());
  std::vector<et::Document> out(docs);
  for (auto& d : out) {
    d.split = et::Split::kTest;
    for (int i = 0; i < 200; ++i) d.tokens.push_back("w" + std::to_string(pick(gen)));
  }
  return out;
}

void BM_BuildIndex(benchmark::State& state) {
  const auto docs = zipf_docs(static_cast<std::size_t>(state.range(0)), 20000);
  for (auto _ : state) benchmark::DoNotOptimize(et::build_index(docs, 10));
  state.SetItemsProcessed(state.iterations() * state.range(0) * 200);
}
BENCHMARK(BM_BuildIndex)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_TopicNpmi(benchmark::State& state) {
  const auto docs = zipf_docs(2000, 20000);
  const auto index = et::build_index(docs, 10);
  et::Topic topic;
  for (int i = 0; i < 10; ++i) topic.words.push_back("w" + std::to_string(i * static_cast<int>(state.range(0))));
  for (auto _ : state) benchmark::DoNotOptimize(et::npmi(topic, index));
}
// Stride 1 scores frequent words (long postings); stride 50 mixes in rarer ones.
BENCHMARK(BM_TopicNpmi)->Arg(1)->Arg(50);

}  // namespace

BENCHMARK_MAIN();
