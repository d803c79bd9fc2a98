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

#include "rfperm/tree.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <utility>

#include "json.hpp"
#include "rfperm/errors.h"

namespace rfperm {
namespace {

// Levels of a categorical feature beyond which exhaustive subset search is
// replaced by one-vs-rest splits.
constexpr int kMaxExhaustiveLevels = 10;

struct Best {
  std::optional<SplitCandidate> split;

  // Features are visited in ascending order, so a strict improvement is
  // required to replace a split from an earlier feature.
  void Offer(SplitCandidate candidate) {
    if (!split || candidate.sse < split->sse) split = std::move(candidate);
  }
};

std::optional<SplitCandidate> BestNumericSplit(
    std::span<const double> x, std::span<const double> centered_y,
    std::span<const std::size_t> rows, std::size_t feature, double total_sq,
    std::size_t min_child) {
  const std::size_t n = rows.size();
  std::vector<std::pair<double, double>> xy(n);
  for (std::size_t i = 0; i < n; ++i) xy[i] = {x[rows[i]], centered_y[i]};
  std::stable_sort(xy.begin(), xy.end(),
                   [](const auto& a, const auto& b) { return a.first < b.first; });

  double total_sum = 0.0;
  for (const auto& [xi, yi] : xy) total_sum += yi;

  std::optional<SplitCandidate> best;
  double best_gain = 0.0;
  double left_sum = 0.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    left_sum += xy[i].second;
    const std::size_t n_left = i + 1;
    const std::size_t n_right = n - n_left;
    if (xy[i].first == xy[i + 1].first) continue;
    if (n_left < min_child || n_right < min_child) continue;
    const double right_sum = total_sum - left_sum;
    const double gain = left_sum * left_sum / static_cast<double>(n_left) +
                        right_sum * right_sum / static_cast<double>(n_right);
    if (!best || gain > best_gain) {
      const double lo = xy[i].first;
      const double hi = xy[i + 1].first;
      double threshold = lo + (hi - lo) / 2.0;
      if (!(threshold < hi)) threshold = lo;
      best_gain = gain;
      best = SplitCandidate{SplitRule{feature, NumericPredicate{threshold}},
                            total_sq - gain, n_left};
    }
  }
  return best;
}

std::optional<SplitCandidate> BestCategoricalSplit(
    std::span<const double> x, std::span<const double> centered_y,
    std::span<const std::size_t> rows, std::size_t feature, int level_count,
    double total_sq, std::size_t min_child) {
  std::vector<std::size_t> count(level_count, 0);
  std::vector<double> sum(level_count, 0.0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto level = static_cast<std::size_t>(x[rows[i]]);
    ++count[level];
    sum[level] += centered_y[i];
  }
  std::vector<int> present;
  for (int l = 0; l < level_count; ++l) {
    if (count[l] > 0) present.push_back(l);
  }
  if (present.size() < 2) return std::nullopt;

  double total_sum = 0.0;
  for (int l : present) total_sum += sum[l];
  const std::size_t n = rows.size();

  std::optional<SplitCandidate> best;
  double best_gain = 0.0;
  auto consider = [&](std::vector<int> left) {
    std::size_t n_left = 0;
    double left_sum = 0.0;
    for (int l : left) {
      n_left += count[l];
      left_sum += sum[l];
    }
    const std::size_t n_right = n - n_left;
    if (n_left < min_child || n_right < min_child) return;
    const double right_sum = total_sum - left_sum;
    const double gain = left_sum * left_sum / static_cast<double>(n_left) +
                        right_sum * right_sum / static_cast<double>(n_right);
    if (!best || gain > best_gain ||
        (gain == best_gain &&
         left < std::get<CategoricalPredicate>(best->rule.predicate).left_levels)) {
      best_gain = gain;
      best = SplitCandidate{
          SplitRule{feature, CategoricalPredicate{std::move(left)}},
          total_sq - gain, n_left};
    }
  };

  if (level_count <= kMaxExhaustiveLevels) {
    // A subset and its complement give the same partition; keep the one that
    // contains the smallest present level, which is also the
    // lexicographically smaller of the two.
    const std::size_t others = present.size() - 1;
    const std::uint32_t full = (1u << others) - 1;
    for (std::uint32_t mask = 0; mask < full; ++mask) {
      std::vector<int> left{present[0]};
      for (std::size_t b = 0; b < others; ++b) {
        if (mask & (1u << b)) left.push_back(present[b + 1]);
      }
      consider(std::move(left));
    }
  } else {
    for (int l : present) consider({l});
  }
  return best;
}

void ValidateRows(const Dataset& d, std::span<const std::size_t> rows) {
  if (rows.empty()) throw ArgumentError("cannot fit a tree on zero rows");
  for (std::size_t r : rows) {
    if (r >= d.rows()) throw ArgumentError("training row index out of range");
  }
}

}  // namespace

int DefaultMtry(std::size_t p) {
  return std::max(1, static_cast<int>(p / 3));
}

int TreeConfig::ResolvedMtry(std::size_t p) const {
  return mtry == 0 ? DefaultMtry(p) : mtry;
}

void TreeConfig::Validate(std::size_t p) const {
  if (mtry < 0) throw ArgumentError("mtry must be positive");
  if (static_cast<std::size_t>(ResolvedMtry(p)) > p) {
    throw ArgumentError("mtry " + std::to_string(mtry) + " exceeds " +
                        std::to_string(p) + " features");
  }
  if (min_node_size < 1) throw ArgumentError("min node size must be >= 1");
  if (max_depth && *max_depth < 1) throw ArgumentError("max depth must be >= 1");
  if (!(min_split_fraction >= 0.0 && min_split_fraction < 0.5)) {
    throw ArgumentError("min split fraction must lie in [0, 0.5)");
  }
}

bool SplitRule::GoesLeft(double value) const {
  if (const auto* numeric = std::get_if<NumericPredicate>(&predicate)) {
    return value <= numeric->threshold;
  }
  const auto& levels = std::get<CategoricalPredicate>(predicate).left_levels;
  const auto level = static_cast<int>(value);
  return static_cast<double>(level) == value &&
         std::binary_search(levels.begin(), levels.end(), level);
}

RegressionTree::RegressionTree(std::vector<TreeNode> nodes,
                               std::vector<std::size_t> rows,
                               std::vector<FeatureKind> kinds)
    : nodes_(std::move(nodes)), rows_(std::move(rows)), kinds_(std::move(kinds)) {
  if (nodes_.empty()) throw ArgumentError("tree must have at least one node");
}

std::size_t RegressionTree::LeafIndex(std::span<const double> x) const {
  if (x.size() != kinds_.size()) {
    throw ArgumentError("feature vector has " + std::to_string(x.size()) +
                        " entries, tree expects " + std::to_string(kinds_.size()));
  }
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const SplitRule& rule = *nodes_[i].split;
    i = static_cast<std::size_t>(rule.GoesLeft(x[rule.feature]) ? nodes_[i].left
                                                                  : nodes_[i].right);
  }
  return i;
}

double RegressionTree::Predict(std::span<const double> x) const {
  return nodes_[LeafIndex(x)].value;
}

double RegressionTree::PredictRow(const Dataset& d, std::size_t row) const {
  std::size_t i = 0;
  while (!nodes_[i].is_leaf()) {
    const SplitRule& rule = *nodes_[i].split;
    i = static_cast<std::size_t>(rule.GoesLeft(d.at(row, rule.feature))
                                     ? nodes_[i].left
                                     : nodes_[i].right);
  }
  return nodes_[i].value;
}

std::size_t RegressionTree::num_leaves() const {
  return static_cast<std::size_t>(std::count_if(
      nodes_.begin(), nodes_.end(), [](const TreeNode& n) { return n.is_leaf(); }));
}

int RegressionTree::depth() const {
  std::vector<int> node_depth(nodes_.size(), 0);
  int deepest = 0;
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    deepest = std::max(deepest, node_depth[i]);
    if (!nodes_[i].is_leaf()) {
      node_depth[nodes_[i].left] = node_depth[i] + 1;
      node_depth[nodes_[i].right] = node_depth[i] + 1;
    }
  }
  return deepest;
}

std::string RegressionTree::ToJson() const {
  using nlohmann::json;
  auto render = [&](auto&& self, std::size_t i) -> json {
    const TreeNode& node = nodes_[i];
    json out = {{"value", node.value}, {"count", node.count}};
    if (node.is_leaf()) return out;
    const SplitRule& rule = *node.split;
    out["feature"] = rule.feature;
    if (const auto* numeric = std::get_if<NumericPredicate>(&rule.predicate)) {
      out["threshold"] = numeric->threshold;
    } else {
      out["left_levels"] = std::get<CategoricalPredicate>(rule.predicate).left_levels;
    }
    out["left"] = self(self, static_cast<std::size_t>(node.left));
    out["right"] = self(self, static_cast<std::size_t>(node.right));
    return out;
  };
  return render(render, 0).dump();
}

std::vector<std::size_t> DrawSubsample(std::size_t n, std::size_t k, Rng& rng) {
  if (k < 1 || k >= n) {
    throw ArgumentError("subsample size " + std::to_string(k) +
                        " must lie in [1, " + std::to_string(n) + ")");
  }
  return SampleWithoutReplacement(n, k, rng);
}

std::optional<SplitCandidate> FindBestSplit(const Dataset& d,
                                            std::span<const std::size_t> rows,
                                            std::span<const std::size_t> features,
                                            std::size_t min_child) {
  if (rows.size() < 2) return std::nullopt;
  min_child = std::max<std::size_t>(min_child, 1);
  const auto y = d.response();
  double mean = 0.0;
  for (std::size_t r : rows) mean += y[r];
  mean /= static_cast<double>(rows.size());
  std::vector<double> centered(rows.size());
  double total_sq = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    centered[i] = y[rows[i]] - mean;
    total_sq += centered[i] * centered[i];
  }

  std::vector<std::size_t> ordered(features.begin(), features.end());
  std::sort(ordered.begin(), ordered.end());
  Best best;
  for (std::size_t f : ordered) {
    const FeatureKind& kind = d.kind(f);
    auto candidate =
        kind.is_categorical()
            ? BestCategoricalSplit(d.column(f), centered, rows, f,
                                   kind.level_count(), total_sq, min_child)
            : BestNumericSplit(d.column(f), centered, rows, f, total_sq,
                               min_child);
    if (candidate) best.Offer(std::move(*candidate));
  }
  return best.split;
}

RegressionTree FitTree(const Dataset& d, std::span<const std::size_t> rows,
                       const TreeConfig& cfg, Rng& rng) {
  ValidateRows(d, rows);
  const std::size_t p = d.cols();
  cfg.Validate(p);
  const auto mtry = static_cast<std::size_t>(cfg.ResolvedMtry(p));
  const auto fraction_floor = static_cast<std::size_t>(
      std::ceil(cfg.min_split_fraction * static_cast<double>(rows.size())));
  const std::size_t min_child = std::max<std::size_t>(
      {static_cast<std::size_t>(cfg.min_node_size), fraction_floor, 1});
  const auto y = d.response();

  struct Pending {
    std::size_t node;
    std::vector<std::size_t> rows;
    int depth;
  };
  std::vector<TreeNode> nodes(1);
  std::vector<Pending> stack;
  stack.push_back({0, std::vector<std::size_t>(rows.begin(), rows.end()), 0});
  std::vector<std::size_t> feature_order(p);

  while (!stack.empty()) {
    Pending job = std::move(stack.back());
    stack.pop_back();

    double sum = 0.0;
    bool pure = true;
    const double first = y[job.rows.front()];
    for (std::size_t r : job.rows) {
      sum += y[r];
      pure = pure && y[r] == first;
    }
    TreeNode& node = nodes[job.node];
    node.count = job.rows.size();
    node.value = sum / static_cast<double>(job.rows.size());

    if (pure || job.rows.size() < 2 * min_child ||
        (cfg.max_depth && job.depth >= *cfg.max_depth)) {
      continue;
    }

    std::iota(feature_order.begin(), feature_order.end(), std::size_t{0});
    for (std::size_t i = 0; i < mtry; ++i) {
      std::swap(feature_order[i], feature_order[i + rng.Below(p - i)]);
    }
    auto split = FindBestSplit(
        d, job.rows, std::span<const std::size_t>(feature_order.data(), mtry),
        min_child);
    for (std::size_t i = mtry; !split && i < p; ++i) {
      std::swap(feature_order[i], feature_order[i + rng.Below(p - i)]);
      split = FindBestSplit(
          d, job.rows, std::span<const std::size_t>(&feature_order[i], 1),
          min_child);
    }
    if (!split) continue;

    std::vector<std::size_t> left_rows;
    std::vector<std::size_t> right_rows;
    left_rows.reserve(split->left_count);
    right_rows.reserve(job.rows.size() - split->left_count);
    for (std::size_t r : job.rows) {
      (split->rule.GoesLeft(d.at(r, split->rule.feature)) ? left_rows : right_rows)
          .push_back(r);
    }

    const auto left_index = static_cast<int>(nodes.size());
    nodes[job.node].split = std::move(split->rule);
    nodes[job.node].left = left_index;
    nodes[job.node].right = left_index + 1;
    nodes.resize(nodes.size() + 2);
    stack.push_back({static_cast<std::size_t>(left_index + 1),
                     std::move(right_rows), job.depth + 1});
    stack.push_back({static_cast<std::size_t>(left_index), std::move(left_rows),
                     job.depth + 1});
  }

  return RegressionTree(std::move(nodes),
                        std::vector<std::size_t>(rows.begin(), rows.end()),
                        d.kinds());
}

}  // namespace rfperm
