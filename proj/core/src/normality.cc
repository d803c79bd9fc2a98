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

#include "rfperm/normality.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "rfperm/errors.h"

namespace rfperm {

double NormalCdf(double z) { return 0.5 * std::erfc(-z / std::sqrt(2.0)); }

double KsDistanceToNormal(std::span<const double> values, double mean, double sd) {
  if (values.empty()) throw ArgumentError("KS distance of an empty sample");
  if (!(sd > 0.0)) throw ArgumentError("KS distance needs a positive sd");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const double f = NormalCdf((sorted[i] - mean) / sd);
    d = std::max({d, static_cast<double>(i + 1) / n - f,
                  f - static_cast<double>(i) / n});
  }
  return d;
}

NormalitySummary SummarizeNormality(std::span<const double> values) {
  if (values.size() < 2) {
    throw ArgumentError("normality summary needs at least two values");
  }
  NormalitySummary out;
  out.count = values.size();
  const double n = static_cast<double>(values.size());
  for (double v : values) out.mean += v;
  out.mean /= n;
  double m2 = 0.0, m3 = 0.0, m4 = 0.0;
  for (double v : values) {
    const double d = v - out.mean;
    const double d2 = d * d;
    m2 += d2;
    m3 += d2 * d;
    m4 += d2 * d2;
  }
  if (!(m2 > 0.0)) {
    out.degenerate = true;
    return out;
  }
  out.sd = std::sqrt(m2 / (n - 1.0));
  m2 /= n;
  m3 /= n;
  m4 /= n;
  out.skewness = m3 / std::pow(m2, 1.5);
  out.excess_kurtosis = m4 / (m2 * m2) - 3.0;
  out.ks_distance = KsDistanceToNormal(values, out.mean, out.sd);
  return out;
}

NormalitySummary PermutationNormality(const PermTestResult& result) {
  if (result.deltas_permuted.size() < 30) {
    throw ArgumentError("normality diagnostics need at least 30 permutations");
  }
  return SummarizeNormality(result.deltas_permuted);
}

}  // namespace rfperm
