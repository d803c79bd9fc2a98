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

#ifndef RFPERM_MUTING_H_
#define RFPERM_MUTING_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "rfperm/dataset.h"

namespace rfperm {

// Drop the muted columns.
struct ExcludeFeatures {};

// Apply one shared uniform row permutation, drawn from `seed`, to every muted
// column. The joint distribution within the subset is kept; its link to the
// response and to the other columns is broken.
struct PermuteRows {
  std::uint64_t seed = 0;
};

// Replace the muted columns with caller-supplied knockoff copies. One column
// per subset index, in ascending index order, each with n rows and the same
// kind as the column it replaces.
struct KnockoffColumns {
  std::vector<std::vector<double>> columns;
};

using MutingStrategy = std::variant<ExcludeFeatures, PermuteRows, KnockoffColumns>;

std::string StrategyName(const MutingStrategy& strategy);

// Returns the muted dataset. The response is never modified.
Dataset MuteFeatures(const Dataset& d, const FeatureSubset& s,
                     const MutingStrategy& strategy);

// Row-permutation muting with an explicit permutation: row i of each muted
// column takes the value at row permutation[i].
Dataset ApplyRowPermutation(const Dataset& d, const FeatureSubset& s,
                            std::span<const std::size_t> permutation);

// Brings a test set into the column layout of a forest trained on
// MuteFeatures(train, s, strategy): exclusion drops the same columns, other
// strategies leave the test set unchanged.
Dataset AlignTestSet(const Dataset& test, const FeatureSubset& s,
                     const MutingStrategy& strategy);

}  // namespace rfperm

#endif  // RFPERM_MUTING_H_
