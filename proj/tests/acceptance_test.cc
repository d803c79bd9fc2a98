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

// Acceptance gates. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "oracles.h"
#include "rfperm/forest.h"
#include "rfperm/normality.h"
#include "rfperm/permtest.h"
#include "rfperm/rng.h"
#include "rfperm/simbench.h"
#include "rfperm/tree.h"

namespace rfperm {
namespace {

constexpr std::uint64_t kSeed = 20260101;

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string Fmt(const char* format, double a, double b = 0, double c = 0) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), format, a, b, c);
  return buf;
}

// Desk-scale Model 1 setup: n=500, k=42, B=100, N_t=50, N_0=300.
SimConfig DeskModel1() {
  SimConfig cfg = DeskScaleConfig(ModelKind::kModel1);
  cfg.forest.subsample_size = 42;
  cfg.seed = kSeed;
  return cfg;
}

double RateFor(const PowerCurve& curve, const std::string& target, std::size_t g = 0) {
  return curve.ForTarget(target).at(g).rejection_rate;
}

const PowerCurve& Model1AtSnrOne() {
  static const PowerCurve curve = [] {
    SimConfig cfg = DeskModel1();
    cfg.grid = {10.0};
    cfg.targets = {FeatureSubset::Single(0), FeatureSubset::Single(1)};
    return RunPowerExperiment(cfg);
  }();
  return curve;
}

Outcome NullLevel() {
  const double rate = RateFor(Model1AtSnrOne(), "x2");
  return {rate >= 0.0 && rate <= 0.10,
          Fmt("Model 1, target x2, 200 replicates: rejection rate %.3f in [0, 0.10]", rate)};
}

Outcome Power() {
  const double power = RateFor(Model1AtSnrOne(), "x1");
  const double null = RateFor(Model1AtSnrOne(), "x2");
  return {power >= 0.60 && power - null >= 0.40,
          Fmt("x1 rate %.3f >= 0.60; x1 - x2 = %.3f >= 0.40", power, power - null)};
}

Outcome Monotonicity() {
  SimConfig cfg = DeskModel1();
  cfg.targets = {FeatureSubset::Single(0)};
  cfg.seed = kSeed + 3;
  const PowerCurve curve = RunPowerExperiment(cfg);
  const auto points = curve.ForTarget("x1");
  // The grid lists sigma = 10/j for increasing j.
  int inversions = 0;
  std::string rates;
  for (std::size_t i = 0; i < points.size(); ++i) {
    if (i > 0 && points[i].rejection_rate < points[i - 1].rejection_rate) ++inversions;
    rates += (i ? " " : "") + Fmt("%.3f", points[i].rejection_rate);
  }
  return {inversions <= 1, "x1 rates over 5-point grid [" + rates + "], " +
                               std::to_string(inversions) + " inversion(s) <= 1"};
}

Outcome SuperUniformity() {
  SimConfig cfg = DeskModel1();
  cfg.model.beta = 0.0;
  cfg.grid = {10.0};
  cfg.replicates = 500;
  cfg.targets = {FeatureSubset::Single(0)};
  cfg.seed = kSeed + 4;
  std::vector<double> p = RunPowerExperiment(cfg).points.at(0).p_values;
  std::sort(p.begin(), p.end());
  const double n = static_cast<double>(p.size());
  double excess = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    // ECDF at p[i] counts every tied value.
    std::size_t j = i;
    while (j + 1 < p.size() && p[j + 1] == p[i]) ++j;
    excess = std::max(excess, static_cast<double>(j + 1) / n - p[i]);
  }
  const double critical = std::sqrt(std::log(100.0) / (2.0 * n));
  return {excess <= critical,
          Fmt("beta=0, 500 replicates: sup(ECDF - U) = %.4f <= %.4f", excess, critical)};
}

Outcome Normality() {
  const SimConfig base = DeskScaleConfig(ModelKind::kModel2);
  const std::vector<std::size_t> targets{2, 4};  // x3, x5
  std::vector<int> below(targets.size(), 0);
  const int reps = 50;
  for (int r = 0; r < reps; ++r) {
    const std::uint64_t rep = ReplicateSeed(kSeed + 5, 0, static_cast<std::size_t>(r));
    Rng train_rng(DeriveSeed(rep, 0)), test_rng(DeriveSeed(rep, 1));
    const Dataset train = Generate(base.model, base.n, train_rng);
    const Dataset test = Generate(base.model, base.n_test, test_rng);
    ForestConfig f = base.forest;
    f.subsample_size = 42;
    f.num_trees = 200;
    f.seed = DeriveSeed(rep, 2);
    PermTestConfig p;
    p.num_permutations = 1000;
    p.seed = DeriveSeed(rep, 3);
    std::vector<FeatureSubset> subsets;
    for (std::size_t t : targets) subsets.push_back(FeatureSubset::Single(t));
    const ImportanceReport report =
        ImportanceAll(train, test, subsets, PermuteRows{DeriveSeed(rep, 4)}, f, p);
    for (const auto& e : report.entries) {
      const std::size_t t = static_cast<std::size_t>(
          std::find(targets.begin(), targets.end(), e.features.indices()[0]) -
          targets.begin());
      if (PermutationNormality(e.result).ks_distance < 0.1) ++below[t];
    }
  }
  const double f3 = below[0] / static_cast<double>(reps);
  const double f5 = below[1] / static_cast<double>(reps);
  return {f3 >= 0.9 && f5 >= 0.9,
          Fmt("Model 2, B=200, N0=1000: share with KS < 0.1: x3 %.2f, x5 %.2f (>= 0.90)",
              f3, f5)};
}

Outcome ExponentBreakdown() {
  SimConfig base = DeskScaleConfig(ModelKind::kModel2);
  base.targets = {FeatureSubset::Single(4)};  // x5 is null in Model 2
  base.seed = kSeed + 6;
  const std::vector<double> exponents{0.6, 0.99};
  const auto curves = RobustnessSweep(base, RobustnessAxis::kSubsampleExponent, exponents);
  const double low = curves[0].curve.points.at(0).rejection_rate;
  const double high = curves[1].curve.points.at(0).rejection_rate;
  return {high - low >= 0.05,
          Fmt("Model 2, sigma=4, null x5: rate at 0.99 = %.3f, at 0.6 = %.3f, gap %.3f "
              ">= 0.05",
              high, low, high - low)};
}

Outcome DisjointFrequency() {
  const std::vector<std::pair<std::size_t, std::size_t>> cases{{100, 5}, {1000, 31}, {10, 2}};
  const int pairs = 100000;
  bool ok = true;
  std::string detail;
  Rng master(kSeed + 7);
  for (const auto& [n, k] : cases) {
    int disjoint = 0;
    std::vector<char> mark(n);
    for (int i = 0; i < pairs; ++i) {
      const auto a = DrawSubsample(n, k, master);
      const auto b = DrawSubsample(n, k, master);
      std::fill(mark.begin(), mark.end(), 0);
      for (auto r : a) mark[r] = 1;
      bool hit = false;
      for (auto r : b) hit |= mark[r] != 0;
      disjoint += !hit;
    }
    const double freq = disjoint / static_cast<double>(pairs);
    const double exact = static_cast<double>(oracle::PairDisjointProb(n, k));
    const double reported = ComputeSubsampleDiagnostics(n, k, 2).pair_disjoint_prob;
    const bool case_ok = std::abs(freq - exact) <= 0.01 && std::abs(reported - exact) < 1e-12;
    ok &= case_ok;
    detail += Fmt("(%.0f,%.0f): ", static_cast<double>(n), static_cast<double>(k)) +
              Fmt("MC %.4f vs exact %.4f; ", freq, exact);
  }
  return {ok, detail + "tolerance 0.01"};
}

Outcome SplitOracle() {
  Rng rng(kSeed + 8);
  int matched = 0;
  const int instances = 100;
  for (int trial = 0; trial < instances; ++trial) {
    const std::size_t n = 2 + rng.Below(11);
    const std::size_t p = 1 + rng.Below(3);
    std::vector<std::vector<double>> cols(p, std::vector<double>(n));
    std::vector<FeatureKind> kinds;
    for (std::size_t j = 0; j < p; ++j) {
      if (rng.Below(3) == 0) {
        const int levels = 2 + static_cast<int>(rng.Below(4));
        kinds.push_back(FeatureKind::Categorical(levels));
        for (auto& v : cols[j]) v = static_cast<double>(rng.Below(levels));
      } else {
        kinds.push_back(FeatureKind::Numeric());
        for (auto& v : cols[j]) v = static_cast<double>(rng.Below(6)) + rng.Uniform() * (trial % 2);
      }
    }
    std::vector<double> y(n);
    for (auto& v : y) v = rng.Normal();
    const Dataset d(std::move(cols), std::move(y), std::move(kinds));
    std::vector<std::size_t> rows(n);
    std::iota(rows.begin(), rows.end(), std::size_t{0});
    TreeConfig cfg;
    cfg.mtry = static_cast<int>(p);
    Rng fit(rng());
    const RegressionTree t = FitTree(d, rows, cfg, fit);
    const double best = oracle::ExhaustiveMinSse(d, rows);
    const TreeNode& root = t.nodes()[0];
    if (std::isinf(best)) {
      matched += root.is_leaf();
    } else if (!root.is_leaf() && oracle::RuleSse(d, rows, *root.split) == best) {
      ++matched;
    }
  }
  return {matched == instances,
          std::to_string(matched) + "/" + std::to_string(instances) +
              " root splits equal the exhaustive-search minimum SSE"};
}

Outcome PropertySuite() {
  Rng rng(kSeed + 9);
  const int cases = 1000;

  // Tree-order invariance of the forest MSE.
  int invariant = 0;
  for (int c = 0; c < cases; ++c) {
    const std::size_t b = 1 + rng.Below(40);
    const std::size_t nt = 1 + rng.Below(30);
    std::vector<double> v(b * nt), y(nt);
    for (auto& x : v) x = rng.Normal() * 5;
    for (auto& x : y) x = rng.Normal() * 5;
    const PredictionMatrix pm(b, nt, v, y);
    const auto perm = RandomPermutation(b, rng);
    const double a = ForestMse(pm);
    const double s = ForestMse(pm.SelectRows(perm));
    invariant += std::abs(a - s) <= 1e-12 * std::max(1.0, std::abs(a));
  }

  // Bitwise reproducibility across thread counts, forest and permutation.
  int reproducible = 0;
  for (int c = 0; c < cases; ++c) {
    const std::size_t n = 20 + rng.Below(40);
    std::vector<std::vector<double>> cols(2, std::vector<double>(n));
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
      cols[0][i] = rng.Uniform();
      cols[1][i] = rng.Uniform();
      y[i] = cols[0][i] + 0.1 * rng.Normal();
    }
    const Dataset d(std::move(cols), std::move(y),
                    {FeatureKind::Numeric(), FeatureKind::Numeric()});
    ForestConfig f;
    f.num_trees = 8;
    f.seed = rng();
    PermTestConfig p;
    p.num_permutations = 20;
    p.seed = rng();
    f.num_threads = p.num_threads = 1;
    const auto serial = RunTest(d, d, FeatureSubset::Single(0), PermuteRows{f.seed}, f, p);
    f.num_threads = p.num_threads = 2 + static_cast<int>(c % 3);
    const auto threaded = RunTest(d, d, FeatureSubset::Single(0), PermuteRows{f.seed}, f, p);
    reproducible += serial.deltas_permuted == threaded.deltas_permuted &&
                    serial.mse_original == threaded.mse_original &&
                    serial.mse_muted == threaded.mse_muted &&
                    serial.p_value == threaded.p_value;
  }

  // p-value integrality.
  int integral = 0;
  for (int c = 0; c < cases; ++c) {
    const std::size_t b = 1 + rng.Below(10);
    const std::size_t nt = 1 + rng.Below(6);
    std::vector<double> v1(b * nt), v2(b * nt), y(nt);
    for (auto& x : v1) x = rng.Normal();
    for (auto& x : v2) x = rng.Normal() + 0.2;
    for (auto& x : y) x = rng.Normal();
    PermTestConfig p;
    p.num_permutations = 1 + static_cast<int>(rng.Below(60));
    p.seed = rng();
    const auto r = PermutationTest(PredictionMatrix(b, nt, v1, y),
                                   PredictionMatrix(b, nt, v2, y), p);
    const double scaled = r.p_value * (p.num_permutations + 1);
    integral += std::abs(scaled - std::round(scaled)) < 1e-9 && r.p_value <= 1.0 &&
                std::round(scaled) >= 1.0;
  }

  return {invariant == cases && reproducible == cases && integral == cases,
          "order invariance " + std::to_string(invariant) + "/1000, thread reproducibility " +
              std::to_string(reproducible) + "/1000, p integrality " +
              std::to_string(integral) + "/1000"};
}

}  // namespace
}  // namespace rfperm

int main() {
  using rfperm::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
      {"1 null level", rfperm::NullLevel},
      {"2 power", rfperm::Power},
      {"3 power monotonicity", rfperm::Monotonicity},
      {"4 p-value super-uniformity", rfperm::SuperUniformity},
      {"5 permutation-distribution normality", rfperm::Normality},
      {"6 subsample-exponent breakdown", rfperm::ExponentBreakdown},
      {"7 disjoint-pair diagnostic", rfperm::DisjointFrequency},
      {"8 split oracle equivalence", rfperm::SplitOracle},
      {"9 exchangeability and determinism", rfperm::PropertySuite},
  };
  int failures = 0;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failures += !o.pass;
    std::printf("%s criterion %s: %s\n", o.pass ? "PASS" : "FAIL", name, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
