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

#ifndef RFPERM_PERMTEST_H_
#define RFPERM_PERMTEST_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rfperm/dataset.h"
#include "rfperm/forest.h"
#include "rfperm/muting.h"

namespace rfperm {

// The alternative is fixed and one-sided: reject when muting the features
// makes the forest's test MSE larger than the permutation distribution
// predicts.
struct PermTestConfig {
  int num_permutations = 500;
  std::uint64_t seed = 0;
  // 0 uses DefaultThreadCount(). Results do not depend on this value.
  int num_threads = 0;

  void Validate() const;
};

struct PermTestResult {
  // Test MSE of each forest and their difference (muted - original).
  double mse_original = 0.0;
  double mse_muted = 0.0;
  double delta_observed = 0.0;
  // One MSE difference per permutation: pseudo-muted minus pseudo-original.
  std::vector<double> deltas_permuted;
  // (1 + #{j : delta_observed <= deltas_permuted[j]}) / (N_0 + 1).
  double p_value = 1.0;
  // (delta_observed - mean) / sd of the permutation deltas; 0 when the
  // deltas have zero spread, in which case `degenerate` is set.
  double z_score = 0.0;
  bool degenerate = false;

  SubsampleDiagnostics diagnostics;
  std::string strategy;
  std::size_t train_rows = 0;
  std::size_t test_rows = 0;
  std::size_t subsample_size = 0;
  int num_trees = 0;
  int mtry = 0;
  int num_permutations = 0;
  std::uint64_t forest_seed = 0;
  std::uint64_t permutation_seed = 0;
  std::vector<std::string> warnings;
};

// The +1-corrected permutation p-value. Ties count toward the numerator.
double PermutationPValue(double observed, std::span<const double> deltas);

struct ZScore {
  double value = 0.0;
  bool degenerate = false;
};

// Standardizes `observed` by the mean and sample standard deviation (n - 1
// denominator) of `deltas`.
ZScore ComputeZScore(double observed, std::span<const double> deltas);

// Seed of the forest trained on the muted data, derived from the original
// forest's seed.
std::uint64_t MutedForestSeed(std::uint64_t forest_seed);

// Shuffles tree labels between two forests evaluated on the same test set.
// Both matrices must have the same number of trees B. Permutation j pools the
// 2B rows, draws B of them without replacement from Rng(seed).Child(j) as the
// pseudo-original forest and uses the rest as the pseudo-muted forest.
// Only delta/p-value/z fields are filled in.
PermTestResult PermutationTest(const PredictionMatrix& original,
                               const PredictionMatrix& muted,
                               const PermTestConfig& config);

// Trains forests on `train` and on MuteFeatures(train, s, strategy), predicts
// at `test`, and runs PermutationTest on the two prediction matrices.
PermTestResult RunTest(const Dataset& train, const Dataset& test,
                       const FeatureSubset& s, const MutingStrategy& strategy,
                       const ForestConfig& forest_config,
                       const PermTestConfig& perm_config);

struct ImportanceEntry {
  FeatureSubset features;
  std::string label;
  PermTestResult result;
};

struct ImportanceReport {
  // Sorted by z-score, largest first.
  std::vector<ImportanceEntry> entries;
  std::vector<std::string> warnings;
};

// One test per subset; the original forest is trained once and shared. Each
// entry equals RunTest for that subset with the same configs. For
// KnockoffColumns, `strategy` must be ExcludeFeatures or PermuteRows; use
// RunTest for knockoffs since the columns depend on the subset.
ImportanceReport ImportanceAll(const Dataset& train, const Dataset& test,
                               std::span<const FeatureSubset> features,
                               const MutingStrategy& strategy,
                               const ForestConfig& forest_config,
                               const PermTestConfig& perm_config);

// Global test of any signal: all feature columns muted together with one
// shared row permutation of the whole design matrix.
PermTestResult OverallTest(const Dataset& train, const Dataset& test,
                           const MutingStrategy& strategy,
                           const ForestConfig& forest_config,
                           const PermTestConfig& perm_config);

}  // namespace rfperm

#endif  // RFPERM_PERMTEST_H_
