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

#ifndef RFPERM_DATASET_H_
#define RFPERM_DATASET_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace rfperm {

enum class FeatureType { kNumeric, kCategorical };

// Type of one feature column. Categorical columns store level indices
// 0..level_count-1 as doubles.
class FeatureKind {
 public:
  static FeatureKind Numeric() { return FeatureKind(FeatureType::kNumeric, 0); }
  // Throws ArgumentError unless level_count >= 2.
  static FeatureKind Categorical(int level_count);

  FeatureType type() const { return type_; }
  bool is_categorical() const { return type_ == FeatureType::kCategorical; }
  int level_count() const { return level_count_; }

  bool operator==(const FeatureKind&) const = default;

 private:
  FeatureKind(FeatureType type, int level_count)
      : type_(type), level_count_(level_count) {}

  FeatureType type_;
  int level_count_;
};

// Immutable feature matrix plus response. Features are stored column-major.
//
// Construction validates: at least one row and one column, finite values,
// categorical entries are integers in [0, level_count), response has one
// entry per row. Training entry points additionally require two or more rows.
class Dataset {
 public:
  // `columns[j]` holds feature j. Empty `names` defaults to x1..xp; empty
  // `level_labels` (or an empty entry for a categorical column) defaults to
  // L1..LL.
  Dataset(std::vector<std::vector<double>> columns, std::vector<double> y,
          std::vector<FeatureKind> kinds, std::vector<std::string> names = {},
          std::vector<std::vector<std::string>> level_labels = {},
          std::string response_name = "y");

  std::size_t rows() const { return y_.size(); }
  std::size_t cols() const { return kinds_.size(); }

  double at(std::size_t row, std::size_t col) const {
    return values_[col * rows() + row];
  }
  std::span<const double> column(std::size_t col) const {
    return {values_.data() + col * rows(), rows()};
  }
  std::span<const double> response() const { return y_; }

  const FeatureKind& kind(std::size_t col) const { return kinds_[col]; }
  const std::vector<FeatureKind>& kinds() const { return kinds_; }
  const std::string& name(std::size_t col) const { return names_[col]; }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& response_name() const { return response_name_; }
  // Labels of a categorical column's levels, indexed by level; empty for
  // numeric columns.
  const std::vector<std::string>& level_labels(std::size_t col) const {
    return level_labels_[col];
  }

  // Column index for a feature name; throws ArgumentError if absent.
  std::size_t ColumnIndex(const std::string& name) const;

  std::vector<double> Row(std::size_t row) const;
  std::vector<std::vector<double>> Columns() const;

  Dataset SelectRows(std::span<const std::size_t> rows) const;
  Dataset SelectColumns(std::span<const std::size_t> cols) const;

  bool operator==(const Dataset& other) const;

 private:
  std::vector<double> values_;
  std::vector<double> y_;
  std::vector<FeatureKind> kinds_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::string>> level_labels_;
  std::string response_name_;
};

// Non-empty set of distinct column indices, kept sorted ascending.
class FeatureSubset {
 public:
  // Throws ArgumentError on empty input or duplicates.
  explicit FeatureSubset(std::vector<std::size_t> indices);

  static FeatureSubset Single(std::size_t index) {
    return FeatureSubset({index});
  }
  static FeatureSubset All(std::size_t p);

  const std::vector<std::size_t>& indices() const { return indices_; }
  std::size_t size() const { return indices_.size(); }
  bool contains(std::size_t index) const;

  // Throws ArgumentError if any index is >= p.
  void Validate(std::size_t p) const;

  // Comma-joined feature names, e.g. "x1,x3".
  std::string Label(const Dataset& d) const;

  bool operator==(const FeatureSubset&) const = default;

 private:
  std::vector<std::size_t> indices_;
};

struct TrainTestSplit {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_rows;
  std::vector<std::size_t> test_rows;
};

// Uniform random split with floor(test_fraction * n) test rows. Each index
// list is sorted ascending. Throws ArgumentError when the test part would be
// empty or the training part would have fewer than two rows.
TrainTestSplit SplitTrainTest(const Dataset& d, double test_fraction,
                              std::uint64_t seed);

}  // namespace rfperm

#endif  // RFPERM_DATASET_H_
