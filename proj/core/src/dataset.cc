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

#include "rfperm/dataset.h"

#include <algorithm>
#include <cmath>
#include <string>
#include <utility>

#include "rfperm/errors.h"
#include "rfperm/rng.h"

namespace rfperm {

FeatureKind FeatureKind::Categorical(int level_count) {
  if (level_count < 2) {
    throw ArgumentError("categorical feature needs at least 2 levels, got " +
                        std::to_string(level_count));
  }
  return FeatureKind(FeatureType::kCategorical, level_count);
}

Dataset::Dataset(std::vector<std::vector<double>> columns, std::vector<double> y,
                 std::vector<FeatureKind> kinds, std::vector<std::string> names,
                 std::vector<std::vector<std::string>> level_labels,
                 std::string response_name)
    : y_(std::move(y)),
      kinds_(std::move(kinds)),
      names_(std::move(names)),
      level_labels_(std::move(level_labels)),
      response_name_(std::move(response_name)) {
  const std::size_t n = y_.size();
  const std::size_t p = columns.size();
  if (n < 1) throw ArgumentError("dataset must have at least one row");
  if (p < 1) throw ArgumentError("dataset must have at least one feature");
  if (kinds_.size() != p) {
    throw ArgumentError("expected " + std::to_string(p) +
                        " feature kinds, got " + std::to_string(kinds_.size()));
  }
  if (names_.empty()) {
    for (std::size_t j = 0; j < p; ++j) {
      names_.push_back("x" + std::to_string(j + 1));
    }
  } else if (names_.size() != p) {
    throw ArgumentError("feature name count does not match column count");
  }
  if (level_labels_.empty()) level_labels_.resize(p);
  if (level_labels_.size() != p) {
    throw ArgumentError("level label list does not match column count");
  }

  for (std::size_t i = 0; i < n; ++i) {
    if (!std::isfinite(y_[i])) {
      throw ValidationError("non-finite response at row " + std::to_string(i),
                            i, response_name_);
    }
  }

  values_.reserve(n * p);
  for (std::size_t j = 0; j < p; ++j) {
    if (columns[j].size() != n) {
      throw ArgumentError("column '" + names_[j] + "' has " +
                          std::to_string(columns[j].size()) +
                          " rows, expected " + std::to_string(n));
    }
    const FeatureKind& kind = kinds_[j];
    auto& labels = level_labels_[j];
    if (kind.is_categorical()) {
      if (labels.empty()) {
        for (int l = 0; l < kind.level_count(); ++l) {
          labels.push_back("L" + std::to_string(l + 1));
        }
      } else if (static_cast<int>(labels.size()) != kind.level_count()) {
        throw ArgumentError("column '" + names_[j] + "' has " +
                            std::to_string(labels.size()) +
                            " level labels, expected " +
                            std::to_string(kind.level_count()));
      }
    } else if (!labels.empty()) {
      throw ArgumentError("numeric column '" + names_[j] +
                          "' cannot carry level labels");
    }
    for (std::size_t i = 0; i < n; ++i) {
      const double v = columns[j][i];
      if (!std::isfinite(v)) {
        throw ValidationError("non-finite value at row " + std::to_string(i) +
                                  ", column '" + names_[j] + "'",
                              i, names_[j]);
      }
      if (kind.is_categorical() &&
          (v < 0 || v >= kind.level_count() || v != std::floor(v))) {
        throw ValidationError("invalid level at row " + std::to_string(i) +
                                  ", column '" + names_[j] + "'",
                              i, names_[j]);
      }
    }
    values_.insert(values_.end(), columns[j].begin(), columns[j].end());
  }
}

std::size_t Dataset::ColumnIndex(const std::string& name) const {
  const auto it = std::find(names_.begin(), names_.end(), name);
  if (it == names_.end()) throw ArgumentError("unknown feature '" + name + "'");
  return static_cast<std::size_t>(it - names_.begin());
}

std::vector<double> Dataset::Row(std::size_t row) const {
  std::vector<double> out(cols());
  for (std::size_t j = 0; j < cols(); ++j) out[j] = at(row, j);
  return out;
}

std::vector<std::vector<double>> Dataset::Columns() const {
  std::vector<std::vector<double>> out;
  out.reserve(cols());
  for (std::size_t j = 0; j < cols(); ++j) {
    auto c = column(j);
    out.emplace_back(c.begin(), c.end());
  }
  return out;
}

Dataset Dataset::SelectRows(std::span<const std::size_t> rows) const {
  std::vector<std::vector<double>> cols_out(cols());
  std::vector<double> y_out;
  y_out.reserve(rows.size());
  for (std::size_t r : rows) {
    if (r >= this->rows()) throw ArgumentError("row index out of range");
    y_out.push_back(y_[r]);
  }
  for (std::size_t j = 0; j < cols(); ++j) {
    cols_out[j].reserve(rows.size());
    for (std::size_t r : rows) cols_out[j].push_back(at(r, j));
  }
  return Dataset(std::move(cols_out), std::move(y_out), kinds_, names_,
                 level_labels_, response_name_);
}

Dataset Dataset::SelectColumns(std::span<const std::size_t> cols_in) const {
  std::vector<std::vector<double>> cols_out;
  std::vector<FeatureKind> kinds_out;
  std::vector<std::string> names_out;
  std::vector<std::vector<std::string>> labels_out;
  for (std::size_t j : cols_in) {
    if (j >= cols()) throw ArgumentError("column index out of range");
    auto c = column(j);
    cols_out.emplace_back(c.begin(), c.end());
    kinds_out.push_back(kinds_[j]);
    names_out.push_back(names_[j]);
    labels_out.push_back(level_labels_[j]);
  }
  return Dataset(std::move(cols_out), y_, std::move(kinds_out),
                 std::move(names_out), std::move(labels_out), response_name_);
}

bool Dataset::operator==(const Dataset& other) const {
  return values_ == other.values_ && y_ == other.y_ && kinds_ == other.kinds_ &&
         names_ == other.names_ && level_labels_ == other.level_labels_ &&
         response_name_ == other.response_name_;
}

FeatureSubset::FeatureSubset(std::vector<std::size_t> indices)
    : indices_(std::move(indices)) {
  if (indices_.empty()) throw ArgumentError("feature subset is empty");
  std::sort(indices_.begin(), indices_.end());
  if (std::adjacent_find(indices_.begin(), indices_.end()) != indices_.end()) {
    throw ArgumentError("feature subset contains duplicate indices");
  }
}

FeatureSubset FeatureSubset::All(std::size_t p) {
  std::vector<std::size_t> all(p);
  for (std::size_t j = 0; j < p; ++j) all[j] = j;
  return FeatureSubset(std::move(all));
}

bool FeatureSubset::contains(std::size_t index) const {
  return std::binary_search(indices_.begin(), indices_.end(), index);
}

void FeatureSubset::Validate(std::size_t p) const {
  if (indices_.back() >= p) {
    throw ArgumentError("feature index " + std::to_string(indices_.back()) +
                        " out of range for " + std::to_string(p) + " columns");
  }
}

std::string FeatureSubset::Label(const Dataset& d) const {
  std::string out;
  for (std::size_t j : indices_) {
    if (!out.empty()) out += ',';
    out += j < d.cols() ? d.name(j) : std::to_string(j);
  }
  return out;
}

TrainTestSplit SplitTrainTest(const Dataset& d, double test_fraction,
                              std::uint64_t seed) {
  const std::size_t n = d.rows();
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw ArgumentError("test fraction must lie in (0, 1)");
  }
  const auto n_test =
      static_cast<std::size_t>(std::floor(test_fraction * static_cast<double>(n)));
  if (n_test < 1 || n - n_test < 2) {
    throw ArgumentError("test fraction " + std::to_string(test_fraction) +
                        " leaves " + std::to_string(n_test) + " test and " +
                        std::to_string(n - n_test) + " training rows");
  }
  Rng rng(seed);
  std::vector<std::size_t> perm = RandomPermutation(n, rng);
  std::vector<std::size_t> test_rows(perm.begin(), perm.begin() + n_test);
  std::vector<std::size_t> train_rows(perm.begin() + n_test, perm.end());
  std::sort(test_rows.begin(), test_rows.end());
  std::sort(train_rows.begin(), train_rows.end());
  return TrainTestSplit{d.SelectRows(train_rows), d.SelectRows(test_rows),
                        std::move(train_rows), std::move(test_rows)};
}

}  // namespace rfperm
