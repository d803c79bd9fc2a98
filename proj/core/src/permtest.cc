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

#include "rfperm/permtest.h"

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <utility>
#include <variant>

#include "rfperm/errors.h"
#include "rfperm/parallel.h"
#include "rfperm/rng.h"

namespace rfperm {
namespace {

constexpr std::uint64_t kMutedForestStream = 1;

// The muted forest keeps the original forest's mtry, capped at the muted
// feature count when columns were excluded.
ForestConfig MutedConfig(const ForestConfig& original, std::size_t original_p,
                         std::size_t muted_p) {
  ForestConfig cfg = original;
  cfg.seed = MutedForestSeed(original.seed);
  cfg.tree.mtry = std::min<int>(original.tree.ResolvedMtry(original_p),
                                static_cast<int>(muted_p));
  return cfg;
}

void CheckTestLayout(const Dataset& train, const Dataset& test) {
  if (test.cols() != train.cols()) {
    throw ArgumentError("test set has " + std::to_string(test.cols()) +
                        " features, training set has " +
                        std::to_string(train.cols()));
  }
  if (test.kinds() != train.kinds()) {
    throw ArgumentError("test set feature kinds differ from the training set");
  }
}

PermTestResult TestAgainstOriginal(const PredictionMatrix& original_pm,
                                   const Dataset& train, const Dataset& test,
                                   const FeatureSubset& s,
                                   const MutingStrategy& strategy,
                                   const ForestConfig& forest_config,
                                   const PermTestConfig& perm_config) {
  const Dataset muted = MuteFeatures(train, s, strategy);
  const ForestConfig muted_config =
      MutedConfig(forest_config, train.cols(), muted.cols());
  const Forest muted_forest = FitForest(muted, muted_config);
  const PredictionMatrix muted_pm = PredictMatrix(
      muted_forest, AlignTestSet(test, s, strategy), forest_config.num_threads);

  PermTestResult result = PermutationTest(original_pm, muted_pm, perm_config);
  const std::size_t k = forest_config.SubsampleSize(train.rows());
  result.diagnostics = ComputeSubsampleDiagnostics(
      train.rows(), k, static_cast<std::size_t>(forest_config.num_trees));
  if (result.diagnostics.warning) {
    result.warnings.push_back(
        "subsample overlap: C(B,2)*log P(disjoint) = " +
        std::to_string(result.diagnostics.lemma1_log_term) +
        " < -1; trees are far from pairwise independent");
  }
  if (result.degenerate) {
    result.warnings.push_back(
        "permutation deltas have zero spread; z-score reported as 0");
  }
  result.strategy = StrategyName(strategy);
  result.train_rows = train.rows();
  result.test_rows = test.rows();
  result.subsample_size = k;
  result.num_trees = forest_config.num_trees;
  result.mtry = forest_config.tree.ResolvedMtry(train.cols());
  result.forest_seed = forest_config.seed;
  return result;
}

PredictionMatrix OriginalPredictions(const Dataset& train, const Dataset& test,
                                     const ForestConfig& forest_config) {
  const Forest forest = FitForest(train, forest_config);
  return PredictMatrix(forest, test, forest_config.num_threads);
}

}  // namespace

void PermTestConfig::Validate() const {
  if (num_permutations < 1) {
    throw ArgumentError("number of permutations must be positive");
  }
}

std::uint64_t MutedForestSeed(std::uint64_t forest_seed) {
  return DeriveSeed(forest_seed, kMutedForestStream);
}

double PermutationPValue(double observed, std::span<const double> deltas) {
  std::size_t hits = 0;
  for (double d : deltas) {
    if (observed <= d) ++hits;
  }
  return static_cast<double>(1 + hits) / static_cast<double>(deltas.size() + 1);
}

ZScore ComputeZScore(double observed, std::span<const double> deltas) {
  if (deltas.size() < 2) return {0.0, true};
  double mean = 0.0;
  for (double d : deltas) mean += d;
  mean /= static_cast<double>(deltas.size());
  double ss = 0.0;
  for (double d : deltas) ss += (d - mean) * (d - mean);
  const double sd = std::sqrt(ss / static_cast<double>(deltas.size() - 1));
  if (!(sd > 0.0)) return {0.0, true};
  return {(observed - mean) / sd, false};
}

PermTestResult PermutationTest(const PredictionMatrix& original,
                               const PredictionMatrix& muted,
                               const PermTestConfig& config) {
  config.Validate();
  if (original.num_trees() != muted.num_trees()) {
    throw ArgumentError("both forests must have the same number of trees");
  }
  const PredictionMatrix pooled = PredictionMatrix::Stack(original, muted);
  const std::size_t b = original.num_trees();

  PermTestResult result;
  result.mse_original = ForestMse(original);
  result.mse_muted = ForestMse(muted);
  result.delta_observed = result.mse_muted - result.mse_original;
  result.num_permutations = config.num_permutations;
  result.permutation_seed = config.seed;
  result.deltas_permuted.resize(static_cast<std::size_t>(config.num_permutations));

  const Rng master(config.seed);
  ParallelFor(result.deltas_permuted.size(), config.num_threads,
              [&](std::size_t j) {
                Rng rng = master.Child(j);
                std::vector<std::size_t> order =
                    SampleWithoutReplacement(2 * b, 2 * b, rng);
                std::sort(order.begin(), order.begin() + b);
                std::sort(order.begin() + b, order.end());
                const std::span<const std::size_t> pseudo_original(order.data(), b);
                const std::span<const std::size_t> pseudo_muted(order.data() + b, b);
                result.deltas_permuted[j] =
                    ForestMse(pooled, pseudo_muted) - ForestMse(pooled, pseudo_original);
              });

  result.p_value = PermutationPValue(result.delta_observed, result.deltas_permuted);
  const ZScore z = ComputeZScore(result.delta_observed, result.deltas_permuted);
  result.z_score = z.value;
  result.degenerate = z.degenerate;
  return result;
}

PermTestResult RunTest(const Dataset& train, const Dataset& test,
                       const FeatureSubset& s, const MutingStrategy& strategy,
                       const ForestConfig& forest_config,
                       const PermTestConfig& perm_config) {
  CheckTestLayout(train, test);
  s.Validate(train.cols());
  perm_config.Validate();
  forest_config.Validate(train.rows(), train.cols());
  const PredictionMatrix original = OriginalPredictions(train, test, forest_config);
  return TestAgainstOriginal(original, train, test, s, strategy, forest_config,
                             perm_config);
}

ImportanceReport ImportanceAll(const Dataset& train, const Dataset& test,
                               std::span<const FeatureSubset> features,
                               const MutingStrategy& strategy,
                               const ForestConfig& forest_config,
                               const PermTestConfig& perm_config) {
  CheckTestLayout(train, test);
  if (features.empty()) throw ArgumentError("no features to test");
  if (std::holds_alternative<KnockoffColumns>(strategy)) {
    throw ArgumentError(
        "knockoff columns are subset-specific; call RunTest per subset");
  }
  for (const auto& s : features) s.Validate(train.cols());
  perm_config.Validate();
  forest_config.Validate(train.rows(), train.cols());

  ImportanceReport report;
  std::set<std::vector<std::size_t>> seen;
  for (const auto& s : features) {
    if (!seen.insert(s.indices()).second) {
      report.warnings.push_back("feature subset '" + s.Label(train) +
                                "' is tested more than once");
    }
  }

  const PredictionMatrix original = OriginalPredictions(train, test, forest_config);
  for (const auto& s : features) {
    report.entries.push_back(ImportanceEntry{
        s, s.Label(train),
        TestAgainstOriginal(original, train, test, s, strategy, forest_config,
                            perm_config)});
  }
  std::stable_sort(report.entries.begin(), report.entries.end(),
                   [](const ImportanceEntry& a, const ImportanceEntry& b) {
                     return a.result.z_score > b.result.z_score;
                   });
  return report;
}

PermTestResult OverallTest(const Dataset& train, const Dataset& test,
                           const MutingStrategy& strategy,
                           const ForestConfig& forest_config,
                           const PermTestConfig& perm_config) {
  return RunTest(train, test, FeatureSubset::All(train.cols()), strategy,
                 forest_config, perm_config);
}

}  // namespace rfperm
