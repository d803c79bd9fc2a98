/*
 * Copyright 2026 The rfperm Authors.
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <benchmark/benchmark.h>

#include "rfperm/permtest.h"
#include "rfperm/rng.h"

namespace rfperm {
namespace {

// Both matrices of a test must share the test responses, so `y` is drawn
// from a fixed stream.
PredictionMatrix RandomMatrix(std::size_t trees, std::size_t points, Rng& rng) {
  Rng y_rng(99);
  std::vector<double> v(trees * points), y(points);
  for (auto& x : v) x = rng.Normal();
  for (auto& x : y) x = y_rng.Normal();
  return PredictionMatrix(trees, points, std::move(v), std::move(y));
}

// The permutation loop alone, with both forests' predictions precomputed.
void BM_PermutationLoop(benchmark::State& state) {
  Rng rng(1);
  const auto trees = static_cast<std::size_t>(state.range(0));
  const auto points = static_cast<std::size_t>(state.range(1));
  const PredictionMatrix a = RandomMatrix(trees, points, rng);
  const PredictionMatrix b = RandomMatrix(trees, points, rng);
  PermTestConfig cfg;
  cfg.num_permutations = 500;
  cfg.num_threads = 1;
  for (auto _ : state) benchmark::DoNotOptimize(PermutationTest(a, b, cfg));
  state.SetItemsProcessed(state.iterations() * cfg.num_permutations);
}
BENCHMARK(BM_PermutationLoop)->Args({100, 50})->Args({125, 100})->Args({500, 100})
    ->Unit(benchmark::kMillisecond);

void BM_ForestMse(benchmark::State& state) {
  Rng rng(2);
  const PredictionMatrix pm = RandomMatrix(250, 100, rng);
  for (auto _ : state) benchmark::DoNotOptimize(ForestMse(pm));
}
BENCHMARK(BM_ForestMse);

}  // namespace
}  // namespace rfperm

BENCHMARK_MAIN();
