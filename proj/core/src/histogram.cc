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

#include "rfperm/histogram.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "rfperm/errors.h"

namespace rfperm {
namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 400.0;
constexpr double kLeft = 60.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr int kCurvePoints = 200;

std::string Fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", v);
  return buf;
}

std::string FmtLabel(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4g", v);
  return buf;
}

std::string Escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Linear-interpolated quantile of sorted data.
double Quantile(const std::vector<double>& sorted, double q) {
  const double pos = q * static_cast<double>(sorted.size() - 1);
  const auto i = static_cast<std::size_t>(std::floor(pos));
  const double frac = pos - static_cast<double>(i);
  if (i + 1 >= sorted.size()) return sorted.back();
  return sorted[i] + frac * (sorted[i + 1] - sorted[i]);
}

}  // namespace

HistogramBins FreedmanDiaconisBins(std::span<const double> values) {
  if (values.empty()) throw ArgumentError("cannot bin an empty sample");
  std::vector<double> sorted(values.begin(), values.end());
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front();
  const double hi = sorted.back();
  HistogramBins bins;
  if (hi == lo) {
    const double w = std::max(std::abs(lo) * 0.1, 1.0);
    bins.lo = lo - w / 2;
    bins.width = w;
    bins.counts = {sorted.size()};
    return bins;
  }
  const double n = static_cast<double>(sorted.size());
  const double iqr = Quantile(sorted, 0.75) - Quantile(sorted, 0.25);
  std::size_t count;
  if (iqr > 0.0) {
    const double w = 2.0 * iqr * std::pow(n, -1.0 / 3.0);
    count = static_cast<std::size_t>(std::ceil((hi - lo) / w));
  } else {
    count = static_cast<std::size_t>(std::ceil(std::log2(n))) + 1;
  }
  count = std::clamp<std::size_t>(count, 1, 500);
  bins.lo = lo;
  bins.width = (hi - lo) / static_cast<double>(count);
  bins.counts.assign(count, 0);
  for (double v : sorted) {
    auto b = static_cast<std::size_t>((v - lo) / bins.width);
    if (b >= count) b = count - 1;
    ++bins.counts[b];
  }
  return bins;
}

std::string RenderHistogramSvg(std::span<const double> deltas, double observed,
                               const std::string& title) {
  if (deltas.empty()) throw ArgumentError("cannot plot an empty sample");
  const HistogramBins bins = FreedmanDiaconisBins(deltas);
  const double hi_edge =
      bins.lo + bins.width * static_cast<double>(bins.counts.size());
  const bool degenerate = bins.counts.size() == 1 &&
                          *std::min_element(deltas.begin(), deltas.end()) ==
                              *std::max_element(deltas.begin(), deltas.end());

  const double n = static_cast<double>(deltas.size());
  double mean = 0.0;
  for (double d : deltas) mean += d;
  mean /= n;
  double ss = 0.0;
  for (double d : deltas) ss += (d - mean) * (d - mean);
  const double sd = deltas.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0;
  const bool draw_curve = !degenerate && sd > 0.0;
  auto density_count = [&](double x) {
    const double z = (x - mean) / sd;
    return n * bins.width * std::exp(-0.5 * z * z) /
           (sd * std::sqrt(2.0 * std::numbers::pi));
  };

  double x_min = std::min(bins.lo, observed);
  double x_max = std::max(hi_edge, observed);
  const double pad = (x_max - x_min) * 0.05;
  x_min -= pad;
  x_max += pad;
  double y_max = static_cast<double>(
      *std::max_element(bins.counts.begin(), bins.counts.end()));
  if (draw_curve) y_max = std::max(y_max, density_count(mean));
  y_max *= 1.05;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto sx = [&](double x) { return kLeft + (x - x_min) / (x_max - x_min) * plot_w; };
  auto sy = [&](double y) { return kTop + plot_h - y / y_max * plot_h; };

  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
      << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << ' '
      << kHeight << "\">\n";
  svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!title.empty()) {
    svg << "<text x=\"" << Fmt(kWidth / 2) << "\" y=\"24\" text-anchor=\"middle\""
        << " font-family=\"sans-serif\" font-size=\"15\">" << Escape(title)
        << "</text>\n";
  }
  svg << "<g id=\"bars\" fill=\"#9ecae1\" stroke=\"#3182bd\">\n";
  for (std::size_t b = 0; b < bins.counts.size(); ++b) {
    const double x0 = bins.lo + bins.width * static_cast<double>(b);
    const double c = static_cast<double>(bins.counts[b]);
    svg << "<rect class=\"bar\" x=\"" << Fmt(sx(x0)) << "\" y=\"" << Fmt(sy(c))
        << "\" width=\"" << Fmt(sx(x0 + bins.width) - sx(x0)) << "\" height=\""
        << Fmt(sy(0) - sy(c)) << "\"/>\n";
  }
  svg << "</g>\n";
  if (draw_curve) {
    svg << "<path id=\"density\" fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" d=\"";
    for (int i = 0; i <= kCurvePoints; ++i) {
      const double x = x_min + (x_max - x_min) * i / kCurvePoints;
      svg << (i == 0 ? 'M' : 'L') << Fmt(sx(x)) << ',' << Fmt(sy(density_count(x)))
          << ' ';
    }
    svg << "\"/>\n";
  }
  svg << "<line id=\"observed\" x1=\"" << Fmt(sx(observed)) << "\" x2=\""
      << Fmt(sx(observed)) << "\" y1=\"" << Fmt(kTop) << "\" y2=\""
      << Fmt(kTop + plot_h) << "\" stroke=\"red\" stroke-width=\"2\"/>\n";
  // Axes.
  svg << "<line x1=\"" << Fmt(kLeft) << "\" x2=\"" << Fmt(kLeft + plot_w)
      << "\" y1=\"" << Fmt(kTop + plot_h) << "\" y2=\"" << Fmt(kTop + plot_h)
      << "\" stroke=\"black\"/>\n";
  svg << "<line x1=\"" << Fmt(kLeft) << "\" x2=\"" << Fmt(kLeft) << "\" y1=\""
      << Fmt(kTop) << "\" y2=\"" << Fmt(kTop + plot_h) << "\" stroke=\"black\"/>\n";
  for (int t = 0; t <= 4; ++t) {
    const double x = x_min + (x_max - x_min) * t / 4;
    svg << "<text x=\"" << Fmt(sx(x)) << "\" y=\"" << Fmt(kTop + plot_h + 18)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
        << FmtLabel(x) << "</text>\n";
  }
  svg << "<text x=\"" << Fmt(kLeft + plot_w / 2) << "\" y=\"" << Fmt(kHeight - 8)
      << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"12\">"
      << "MSE difference (muted - original)</text>\n";
  svg << "</svg>\n";
  return svg.str();
}

void RenderHistogram(std::span<const double> deltas, double observed,
                     const std::string& path, const std::string& title) {
  const std::string svg = RenderHistogramSvg(deltas, observed, title);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << svg;
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace rfperm
