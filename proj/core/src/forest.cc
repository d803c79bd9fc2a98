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

#include "rfperm/forest.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <utility>

#include "rfperm/csv.h"
#include "rfperm/errors.h"
#include "rfperm/parallel.h"
#include "rfperm/rng.h"

namespace rfperm {

std::size_t SubsampleSizeFor(std::size_t n, double exponent) {
  // The relative nudge keeps exact powers such as 100^0.5 from landing a
  // hair below the integer.
  const double v = std::pow(static_cast<double>(n), exponent);
  return static_cast<std::size_t>(std::floor(v * (1.0 + 1e-12)));
}

std::size_t ForestConfig::SubsampleSize(std::size_t n) const {
  if (!subsample_size &&
      !(subsample_exponent > 0.0 && subsample_exponent < 1.0)) {
    throw ArgumentError("subsample exponent must lie in (0, 1)");
  }
  const std::size_t k =
      subsample_size ? *subsample_size : SubsampleSizeFor(n, subsample_exponent);
  if (k < 1 || k + 1 > n) {
    throw ArgumentError("subsample size " + std::to_string(k) +
                        " out of range [1, " + std::to_string(n) + " - 1]");
  }
  return k;
}

void ForestConfig::Validate(std::size_t n, std::size_t p) const {
  if (num_trees < 1) throw ArgumentError("number of trees must be positive");
  if (n < 2) throw ArgumentError("training set needs at least two rows");
  SubsampleSize(n);
  tree.Validate(p);
}

Forest::Forest(std::vector<RegressionTree> trees, ForestConfig config)
    : trees_(std::move(trees)), config_(std::move(config)) {
  if (trees_.empty()) throw ArgumentError("forest must contain a tree");
}

double Forest::Predict(std::span<const double> x) const {
  double sum = 0.0;
  for (const auto& tree : trees_) sum += tree.Predict(x);
  return sum / static_cast<double>(trees_.size());
}

Forest FitForest(const Dataset& d, const ForestConfig& config) {
  config.Validate(d.rows(), d.cols());
  const std::size_t k = config.SubsampleSize(d.rows());
  const Rng master(config.seed);
  std::vector<std::optional<RegressionTree>> slots(config.num_trees);
  ParallelFor(slots.size(), config.num_threads, [&](std::size_t i) {
    Rng rng = master.Child(i);
    const auto rows = DrawSubsample(d.rows(), k, rng);
    slots[i] = FitTree(d, rows, config.tree, rng);
  });
  std::vector<RegressionTree> trees;
  trees.reserve(slots.size());
  for (auto& slot : slots) trees.push_back(std::move(*slot));
  return Forest(std::move(trees), config);
}

PredictionMatrix::PredictionMatrix(std::size_t num_trees, std::size_t num_points,
                                   std::vector<double> values,
                                   std::vector<double> responses)
    : num_trees_(num_trees),
      values_(std::move(values)),
      responses_(std::move(responses)) {
  if (num_trees_ == 0 || num_points == 0) {
    throw ArgumentError("prediction matrix must be non-empty");
  }
  if (responses_.size() != num_points ||
      values_.size() != num_trees_ * num_points) {
    throw ArgumentError("prediction matrix dimensions are inconsistent");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) throw ArgumentError("non-finite tree prediction");
  }
  for (double v : responses_) {
    if (!std::isfinite(v)) throw ArgumentError("non-finite test response");
  }
}

std::vector<double> PredictionMatrix::ForestPredictions() const {
  std::vector<double> mean(num_points(), 0.0);
  for (std::size_t i = 0; i < num_trees_; ++i) {
    const auto r = row(i);
    for (std::size_t j = 0; j < mean.size(); ++j) mean[j] += r[j];
  }
  for (double& m : mean) m /= static_cast<double>(num_trees_);
  return mean;
}

PredictionMatrix PredictionMatrix::Stack(const PredictionMatrix& top,
                                         const PredictionMatrix& bottom) {
  if (top.num_points() != bottom.num_points() ||
      !std::equal(top.responses_.begin(), top.responses_.end(),
                  bottom.responses_.begin())) {
    throw ArgumentError("stacked prediction matrices need the same test set");
  }
  std::vector<double> values = top.values_;
  values.insert(values.end(), bottom.values_.begin(), bottom.values_.end());
  return PredictionMatrix(top.num_trees_ + bottom.num_trees_, top.num_points(),
                          std::move(values), top.responses_);
}

PredictionMatrix PredictionMatrix::SelectRows(
    std::span<const std::size_t> rows) const {
  std::vector<double> values;
  values.reserve(rows.size() * num_points());
  for (std::size_t r : rows) {
    if (r >= num_trees_) throw ArgumentError("tree row index out of range");
    const auto src = row(r);
    values.insert(values.end(), src.begin(), src.end());
  }
  return PredictionMatrix(rows.size(), num_points(), std::move(values),
                          responses_);
}

PredictionMatrix PredictMatrix(const Forest& forest, const Dataset& test,
                               int num_threads) {
  const std::size_t n_test = test.rows();
  if (n_test == 0) throw ArgumentError("test set is empty");
  if (test.cols() != forest.trees().front().num_features()) {
    throw ArgumentError("test set has " + std::to_string(test.cols()) +
                        " features, forest expects " +
                        std::to_string(forest.trees().front().num_features()));
  }
  std::vector<double> values(forest.size() * n_test);
  ParallelFor(forest.size(), num_threads, [&](std::size_t i) {
    const RegressionTree& tree = forest.trees()[i];
    for (std::size_t j = 0; j < n_test; ++j) {
      values[i * n_test + j] = tree.PredictRow(test, j);
    }
  });
  auto y = test.response();
  return PredictionMatrix(forest.size(), n_test, std::move(values),
                          std::vector<double>(y.begin(), y.end()));
}

double ForestMse(const PredictionMatrix& pm, std::span<const std::size_t> rows) {
  const std::size_t n_points = pm.num_points();
  std::vector<double> acc(n_points, 0.0);
  std::size_t count = 0;
  auto add_row = [&](std::size_t r) {
    const auto values = pm.row(r);
    for (std::size_t j = 0; j < n_points; ++j) acc[j] += values[j];
    ++count;
  };
  if (rows.empty()) {
    for (std::size_t r = 0; r < pm.num_trees(); ++r) add_row(r);
  } else {
    for (std::size_t r : rows) {
      if (r >= pm.num_trees()) throw ArgumentError("tree row index out of range");
      add_row(r);
    }
  }
  const auto y = pm.responses();
  double sse = 0.0;
  for (std::size_t j = 0; j < n_points; ++j) {
    const double err = acc[j] / static_cast<double>(count) - y[j];
    sse += err * err;
  }
  return sse / static_cast<double>(n_points);
}

SubsampleDiagnostics ComputeSubsampleDiagnostics(std::size_t n, std::size_t k,
                                                 std::size_t num_trees) {
  SubsampleDiagnostics out;
  const double pairs =
      static_cast<double>(num_trees) * (static_cast<double>(num_trees) - 1) / 2;
  if (2 * k > n) {
    out.pair_disjoint_prob = 0.0;
    out.lemma1_log_term =
        num_trees < 2 ? 0.0 : -std::numeric_limits<double>::infinity();
  } else {
    // C(n-k, k) / C(n, k) = prod_{i<k} (n-k-i) / (n-i). Summing log1p terms
    // avoids the cancellation of a log-gamma difference at large n.
    const double kd = static_cast<double>(k);
    double log_prob = 0.0;
    for (std::size_t i = 0; i < k; ++i) {
      log_prob += std::log1p(-kd / static_cast<double>(n - i));
    }
    out.pair_disjoint_prob = std::exp(log_prob);
    out.lemma1_log_term = num_trees < 2 ? 0.0 : pairs * log_prob;
  }
  out.warning = out.lemma1_log_term < -1.0;
  return out;
}

void WritePredictionMatrixCsv(const PredictionMatrix& pm, std::ostream& out) {
  std::vector<std::string> fields{"tree"};
  for (std::size_t j = 0; j < pm.num_points(); ++j) {
    fields.push_back("t" + std::to_string(j + 1));
  }
  WriteCsvRecord(out, fields);
  for (std::size_t i = 0; i < pm.num_trees(); ++i) {
    fields[0] = std::to_string(i + 1);
    for (std::size_t j = 0; j < pm.num_points(); ++j) {
      fields[j + 1] = FormatDouble(pm.at(i, j));
    }
    WriteCsvRecord(out, fields);
  }
  fields[0] = "y";
  for (std::size_t j = 0; j < pm.num_points(); ++j) {
    fields[j + 1] = FormatDouble(pm.responses()[j]);
  }
  WriteCsvRecord(out, fields);
}

}  // namespace rfperm
