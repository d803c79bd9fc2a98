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

#ifndef RFPERM_TREE_H_
#define RFPERM_TREE_H_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rfperm/dataset.h"
#include "rfperm/rng.h"

namespace rfperm {

struct TreeConfig {
  // Features drawn per split; 0 selects DefaultMtry(p).
  int mtry = 0;
  // Minimum number of training rows in each child of a split. 1 grows trees
  // until every leaf is pure or holds indistinguishable rows.
  int min_node_size = 1;
  std::optional<int> max_depth;
  // When positive, each child must hold at least this fraction of the rows
  // the tree was trained on. Must lie in [0, 0.5).
  double min_split_fraction = 0.0;

  // Throws ArgumentError if the config is unusable with p features.
  void Validate(std::size_t p) const;
  int ResolvedMtry(std::size_t p) const;
};

// floor(p / 3), at least 1.
int DefaultMtry(std::size_t p);

// Numeric rule: go left when value <= threshold.
struct NumericPredicate {
  double threshold = 0.0;
  bool operator==(const NumericPredicate&) const = default;
};

// Categorical rule: go left when the level is in `left_levels` (sorted).
// Any other level, including one absent from the node during training, goes
// right.
struct CategoricalPredicate {
  std::vector<int> left_levels;
  bool operator==(const CategoricalPredicate&) const = default;
};

struct SplitRule {
  std::size_t feature = 0;
  std::variant<NumericPredicate, CategoricalPredicate> predicate;

  bool GoesLeft(double value) const;
  bool operator==(const SplitRule&) const = default;
};

struct TreeNode {
  std::optional<SplitRule> split;  // empty for leaves
  int left = -1;
  int right = -1;
  // Mean training response of the rows reaching this node. For leaves this
  // is the prediction.
  double value = 0.0;
  std::size_t count = 0;

  bool is_leaf() const { return !split.has_value(); }
  bool operator==(const TreeNode&) const = default;
};

// Fitted CART regression tree. Node 0 is the root.
class RegressionTree {
 public:
  RegressionTree(std::vector<TreeNode> nodes, std::vector<std::size_t> rows,
                 std::vector<FeatureKind> kinds);

  const std::vector<TreeNode>& nodes() const { return nodes_; }
  // Training rows (subsample indices into the fitting dataset), in the order
  // they were supplied to FitTree.
  const std::vector<std::size_t>& training_rows() const { return rows_; }
  std::size_t num_features() const { return kinds_.size(); }

  // Throws ArgumentError if x does not have num_features() entries.
  double Predict(std::span<const double> x) const;
  // Prediction for row `row` of `d`, which must have the training layout.
  double PredictRow(const Dataset& d, std::size_t row) const;
  // Index of the leaf reached by x.
  std::size_t LeafIndex(std::span<const double> x) const;

  std::size_t num_leaves() const;
  int depth() const;

  // Nested JSON rendering for debugging.
  std::string ToJson() const;

  bool operator==(const RegressionTree&) const = default;

 private:
  std::vector<TreeNode> nodes_;
  std::vector<std::size_t> rows_;
  std::vector<FeatureKind> kinds_;
};

// k distinct row indices from [0, n), uniformly without replacement.
// Requires 1 <= k < n.
std::vector<std::size_t> DrawSubsample(std::size_t n, std::size_t k, Rng& rng);

// A split and the total within-child sum of squared errors it leaves.
struct SplitCandidate {
  SplitRule rule;
  double sse = 0.0;
  std::size_t left_count = 0;
};

// Best split of `rows` over `features` with at least `min_child` rows per
// side, or nothing if no such split exists. Ties prefer the lowest feature
// index, then the smallest threshold or lexicographically smallest left
// level set.
std::optional<SplitCandidate> FindBestSplit(const Dataset& d,
                                            std::span<const std::size_t> rows,
                                            std::span<const std::size_t> features,
                                            std::size_t min_child);

// Grows a tree on d restricted to `rows` (duplicates allowed). At each node
// mtry features are drawn without replacement; if none of them admits a
// valid split, further features are drawn one at a time until one does or
// all are exhausted.
RegressionTree FitTree(const Dataset& d, std::span<const std::size_t> rows,
                       const TreeConfig& cfg, Rng& rng);

}  // namespace rfperm

#endif  // RFPERM_TREE_H_
