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

#include "rfperm/muting.h"

#include <algorithm>
#include <utility>

#include "rfperm/errors.h"
#include "rfperm/rng.h"

namespace rfperm {
namespace {

Dataset Rebuild(const Dataset& d, std::vector<std::vector<double>> columns) {
  std::vector<std::vector<std::string>> labels;
  labels.reserve(d.cols());
  for (std::size_t j = 0; j < d.cols(); ++j) labels.push_back(d.level_labels(j));
  auto y = d.response();
  return Dataset(std::move(columns), std::vector<double>(y.begin(), y.end()),
                 d.kinds(), d.names(), std::move(labels), d.response_name());
}

std::vector<std::size_t> Complement(const FeatureSubset& s, std::size_t p) {
  std::vector<std::size_t> keep;
  for (std::size_t j = 0; j < p; ++j) {
    if (!s.contains(j)) keep.push_back(j);
  }
  if (keep.empty()) {
    throw ArgumentError("cannot exclude every feature column");
  }
  return keep;
}

}  // namespace

std::string StrategyName(const MutingStrategy& strategy) {
  switch (strategy.index()) {
    case 0: return "exclude";
    case 1: return "permute";
    default: return "knockoff";
  }
}

Dataset ApplyRowPermutation(const Dataset& d, const FeatureSubset& s,
                            std::span<const std::size_t> permutation) {
  s.Validate(d.cols());
  const std::size_t n = d.rows();
  if (permutation.size() != n) {
    throw ArgumentError("permutation length does not match row count");
  }
  std::vector<bool> seen(n, false);
  for (std::size_t i : permutation) {
    if (i >= n || seen[i]) throw ArgumentError("not a permutation of the rows");
    seen[i] = true;
  }
  auto columns = d.Columns();
  for (std::size_t j : s.indices()) {
    const auto source = d.column(j);
    for (std::size_t i = 0; i < n; ++i) columns[j][i] = source[permutation[i]];
  }
  return Rebuild(d, std::move(columns));
}

Dataset MuteFeatures(const Dataset& d, const FeatureSubset& s,
                     const MutingStrategy& strategy) {
  s.Validate(d.cols());
  if (std::holds_alternative<ExcludeFeatures>(strategy)) {
    const auto keep = Complement(s, d.cols());
    return d.SelectColumns(keep);
  }
  if (const auto* permute = std::get_if<PermuteRows>(&strategy)) {
    Rng rng(permute->seed);
    const auto perm = RandomPermutation(d.rows(), rng);
    return ApplyRowPermutation(d, s, perm);
  }
  const auto& knockoff = std::get<KnockoffColumns>(strategy);
  if (knockoff.columns.size() != s.size()) {
    throw ArgumentError("knockoff matrix has " +
                        std::to_string(knockoff.columns.size()) +
                        " columns, expected " + std::to_string(s.size()));
  }
  auto columns = d.Columns();
  for (std::size_t k = 0; k < s.size(); ++k) {
    const std::size_t j = s.indices()[k];
    const auto& replacement = knockoff.columns[k];
    if (replacement.size() != d.rows()) {
      throw ArgumentError("knockoff column for '" + d.name(j) + "' has " +
                          std::to_string(replacement.size()) +
                          " rows, expected " + std::to_string(d.rows()));
    }
    const FeatureKind& kind = d.kind(j);
    if (kind.is_categorical()) {
      for (double v : replacement) {
        if (v < 0 || v >= kind.level_count() || v != static_cast<long long>(v)) {
          throw ArgumentError("knockoff column for '" + d.name(j) +
                              "' does not match its categorical kind");
        }
      }
    }
    columns[j] = replacement;
  }
  return Rebuild(d, std::move(columns));
}

Dataset AlignTestSet(const Dataset& test, const FeatureSubset& s,
                     const MutingStrategy& strategy) {
  s.Validate(test.cols());
  if (std::holds_alternative<ExcludeFeatures>(strategy)) {
    return test.SelectColumns(Complement(s, test.cols()));
  }
  return test;
}

}  // namespace rfperm
