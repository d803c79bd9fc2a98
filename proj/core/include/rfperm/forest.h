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

#ifndef RFPERM_FOREST_H_
#define RFPERM_FOREST_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rfperm/dataset.h"
#include "rfperm/tree.h"

namespace rfperm {

// floor(n^exponent).
std::size_t SubsampleSizeFor(std::size_t n, double exponent);

struct ForestConfig {
  int num_trees = 100;
  // Subsample size k = round(n^exponent) unless `subsample_size` is set.
  double subsample_exponent = 0.6;
  std::optional<std::size_t> subsample_size;
  TreeConfig tree;
  std::uint64_t seed = 0;
  // 0 uses DefaultThreadCount(). Results do not depend on this value.
  int num_threads = 0;

  // Resolved k for a training set of n rows; throws ArgumentError unless
  // 1 <= k <= n - 1.
  std::size_t SubsampleSize(std::size_t n) const;
  void Validate(std::size_t n, std::size_t p) const;
};

class Forest {
 public:
  Forest(std::vector<RegressionTree> trees, ForestConfig config);

  const std::vector<RegressionTree>& trees() const { return trees_; }
  const ForestConfig& config() const { return config_; }
  std::size_t size() const { return trees_.size(); }

  // Average of the tree predictions.
  double Predict(std::span<const double> x) const;

 private:
  std::vector<RegressionTree> trees_;
  ForestConfig config_;
};

// Trains config.num_trees trees. Tree i draws its subsample and split
// features from the stream Rng(config.seed).Child(i), so the forest is a
// function of the seed alone.
Forest FitForest(const Dataset& d, const ForestConfig& config);

// Per-tree predictions at a fixed test set: row i holds tree i's predictions
// at every test point. Stored row-major.
class PredictionMatrix {
 public:
  PredictionMatrix(std::size_t num_trees, std::size_t num_points,
                   std::vector<double> values, std::vector<double> responses);

  std::size_t num_trees() const { return num_trees_; }
  std::size_t num_points() const { return responses_.size(); }
  double at(std::size_t tree, std::size_t point) const {
    return values_[tree * num_points() + point];
  }
  std::span<const double> row(std::size_t tree) const {
    return {values_.data() + tree * num_points(), num_points()};
  }
  std::span<const double> values() const { return values_; }
  std::span<const double> responses() const { return responses_; }

  // Column means: the forest prediction at each test point.
  std::vector<double> ForestPredictions() const;

  // Rows of `top` followed by rows of `bottom`; responses must match.
  static PredictionMatrix Stack(const PredictionMatrix& top,
                                const PredictionMatrix& bottom);
  // Matrix restricted to the listed rows, in the listed order.
  PredictionMatrix SelectRows(std::span<const std::size_t> rows) const;

  bool operator==(const PredictionMatrix&) const = default;

 private:
  std::size_t num_trees_;
  std::vector<double> values_;
  std::vector<double> responses_;
};

// Throws ArgumentError on an empty test set or a feature count mismatch.
PredictionMatrix PredictMatrix(const Forest& forest, const Dataset& test,
                               int num_threads = 0);

// Mean squared error of the forest formed by the selected rows (all rows when
// `rows` is empty): (1/N_t) * sum_j (mean_i values[i][j] - y_j)^2. Rows are
// averaged in the order given.
double ForestMse(const PredictionMatrix& pm,
                 std::span<const std::size_t> rows = {});

struct SubsampleDiagnostics {
  // Probability that two independent size-k subsamples of n rows are
  // disjoint: C(n-k, k) / C(n, k). Zero when 2k > n.
  double pair_disjoint_prob = 0.0;
  // C(B, 2) * log(pair_disjoint_prob); -infinity when the probability is 0
  // and B >= 2, and 0 when B < 2.
  double lemma1_log_term = 0.0;
  // Set when lemma1_log_term < -1: the trees are far from pairwise
  // independent.
  bool warning = false;
};

SubsampleDiagnostics ComputeSubsampleDiagnostics(std::size_t n, std::size_t k,
                                                 std::size_t num_trees);

// CSV export: header "tree,<point 1>,...", one row per tree, then a final row
// labelled "y" holding the test responses.
void WritePredictionMatrixCsv(const PredictionMatrix& pm, std::ostream& out);

}  // namespace rfperm

#endif  // RFPERM_FOREST_H_
