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

#ifndef RFPERM_NORMALITY_H_
#define RFPERM_NORMALITY_H_

#include <cstddef>
#include <span>

#include "rfperm/permtest.h"

namespace rfperm {

// Shape of a permutation distribution compared with a normal of matched
// mean and standard deviation.
struct NormalitySummary {
  std::size_t count = 0;
  double mean = 0.0;
  double sd = 0.0;  // n - 1 denominator
  double skewness = 0.0;
  double excess_kurtosis = 0.0;
  // sup |F_n(x) - Phi((x - mean) / sd)|
  double ks_distance = 0.0;
  // Zero spread: every statistic except mean and count is reported as 0.
  bool degenerate = false;
};

double NormalCdf(double z);

// Kolmogorov-Smirnov distance between the empirical CDF of `values` and
// N(mean, sd^2).
double KsDistanceToNormal(std::span<const double> values, double mean, double sd);

// Skewness and excess kurtosis use the moment estimators m3/m2^1.5 and
// m4/m2^2 - 3. Requires at least two values.
NormalitySummary SummarizeNormality(std::span<const double> values);

// Requires at least 30 permutation deltas.
NormalitySummary PermutationNormality(const PermTestResult& result);

}  // namespace rfperm

#endif  // RFPERM_NORMALITY_H_
