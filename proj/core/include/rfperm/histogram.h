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

#ifndef RFPERM_HISTOGRAM_H_
#define RFPERM_HISTOGRAM_H_

#include <span>
#include <string>
#include <vector>

namespace rfperm {

struct HistogramBins {
  double lo = 0.0;
  double width = 0.0;
  std::vector<std::size_t> counts;
};

// Freedman-Diaconis bins (width 2 * IQR * n^(-1/3)) over the data range,
// falling back to Sturges' rule when the IQR is zero. A sample with a single
// distinct value gets one bin.
HistogramBins FreedmanDiaconisBins(std::span<const double> values);

// SVG histogram of permutation deltas with a matched-moment normal density
// curve and a vertical marker at the observed delta. Degenerate samples
// (one distinct value) render one bar and no curve. Throws ArgumentError on
// empty input.
std::string RenderHistogramSvg(std::span<const double> deltas, double observed,
                               const std::string& title = "");

// Writes RenderHistogramSvg output to `path`; throws IoError on failure.
void RenderHistogram(std::span<const double> deltas, double observed,
                     const std::string& path, const std::string& title = "");

}  // namespace rfperm

#endif  // RFPERM_HISTOGRAM_H_
