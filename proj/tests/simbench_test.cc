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

#include "rfperm/simbench.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "gtest/gtest.h"
#include "rfperm/errors.h"

namespace rfperm {
namespace {

std::vector<double> Row(std::initializer_list<double> head, std::size_t p = 10) {
  std::vector<double> row(head);
  row.resize(p, 0.0);
  return row;
}

double Correlation(std::span<const double> a, std::span<const double> b) {
  double ma = 0, mb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    ma += a[i];
    mb += b[i];
  }
  ma /= a.size();
  mb /= b.size();
  double sab = 0, saa = 0, sbb = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    sab += (a[i] - ma) * (b[i] - mb);
    saa += (a[i] - ma) * (a[i] - ma);
    sbb += (b[i] - mb) * (b[i] - mb);
  }
  return sab / std::sqrt(saa * sbb);
}

SimConfig TinyConfig() {
  SimConfig cfg = DeskScaleConfig(ModelKind::kModel1);
  cfg.n = 120;
  cfg.n_test = 20;
  cfg.forest.num_trees = 10;
  cfg.perm.num_permutations = 20;
  cfg.replicates = 3;
  cfg.grid = {10.0};
  cfg.targets = {FeatureSubset::Single(0), FeatureSubset::Single(1)};
  cfg.seed = 5;
  return cfg;
}

TEST(ModelMeanTest, Model1HandEvaluation) {
  // x6 at level index 1 is the "L2" level.
  EXPECT_DOUBLE_EQ(Model1Mean(Row({0.5, 0, 0, 0, 0, 1}), 10.0), 15.0);
  EXPECT_DOUBLE_EQ(Model1Mean(Row({0.5, 0, 0, 0, 0, 2}), 10.0), 5.0);
  EXPECT_DOUBLE_EQ(Model1Mean(Row({0.5, 0, 0, 0, 0, 0}), 10.0), 5.0);
}

TEST(ModelMeanTest, Model2HandEvaluation) {
  EXPECT_NEAR(Model2Mean(Row({0.5, 0.5, 0.5, 0.5, 0.5, 0, 1}), 10.0), 24.05, 1e-12);
  // Indicator off: sin(0) = 0.
  EXPECT_NEAR(Model2Mean(Row({0.5, 0.5, 0.5, 0.5, 0.5, 0, 0}), 10.0), 14.05, 1e-12);
  // Vertex of the quadratic.
  EXPECT_DOUBLE_EQ(Model2Mean(Row({0, 0, 0.05, 0, 0, 0, 0}), 10.0), 0.0);
}

TEST(ModelMeanTest, ExpitAsPrinted) {
  EXPECT_DOUBLE_EQ(Expit(0.0), 0.5);
  EXPECT_NEAR(Expit(1.0), 1.0 / (1.0 + std::numbers::e), 1e-15);
  EXPECT_DOUBLE_EQ(Model3Probability(Row({9, 1, 2, 3, 4}, 5), 0.0), 0.5);
}

TEST(GeneratorTest, Model1Layout) {
  Rng rng(1);
  const Dataset d = GenModel1(200, 10, 10, rng);
  EXPECT_EQ(d.rows(), 200u);
  EXPECT_EQ(d.cols(), 10u);
  for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(d.kind(j).type(), FeatureType::kNumeric);
  for (std::size_t j = 5; j < 10; ++j) {
    EXPECT_EQ(d.kind(j).type(), FeatureType::kCategorical);
    EXPECT_EQ(d.kind(j).level_count(), 3);
  }
  EXPECT_EQ(d.level_labels(5)[1], "L2");
}

TEST(GeneratorTest, IndicatorFrequency) {
  Rng rng(2);
  const Dataset d = GenModel1(100000, 10, 10, rng);
  const auto col = d.column(5);
  const double freq =
      std::count(col.begin(), col.end(), 1.0) / static_cast<double>(col.size());
  EXPECT_NEAR(freq, 1.0 / 3.0, 0.01);
}

TEST(GeneratorTest, ZeroNoiseMatchesMean) {
  Rng rng(3);
  const Dataset d = GenModel2(500, 10, 1e-300, rng);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    ASSERT_NEAR(d.response()[i], Model2Mean(d.Row(i), 10), 1e-12);
  }
}

TEST(GeneratorTest, Ar1Structure) {
  Rng rng(4);
  const Dataset d = GenModel3(100000, 1.0, rng, 8);
  EXPECT_NEAR(Correlation(d.column(3), d.column(4)), 0.15, 0.01);
  EXPECT_NEAR(Correlation(d.column(3), d.column(5)), 0.0225, 0.01);
  double ss = 0;
  for (double v : d.column(6)) ss += v * v;
  EXPECT_NEAR(ss / d.rows(), 1.0, 0.02);
  for (double v : d.response()) ASSERT_TRUE(v == 0.0 || v == 1.0);
}

TEST(GeneratorTest, ZeroBetaGivesFairCoin) {
  Rng rng(5);
  const Dataset d = GenModel3(50000, 0.0, rng, 5);
  double mean = 0;
  for (double v : d.response()) mean += v;
  EXPECT_NEAR(mean / d.rows(), 0.5, 0.01);
}

TEST(GeneratorTest, DeterministicPerSeed) {
  Rng a(6), b(6);
  EXPECT_EQ(GenModel2(50, 10, 10, a), GenModel2(50, 10, 10, b));
  SimModel m;
  m.kind = ModelKind::kModel3;
  m.num_features = 20;
  Rng c(7), e(7);
  EXPECT_EQ(Generate(m, 30, c), Generate(m, 30, e));
}

TEST(GeneratorTest, InvalidArguments) {
  Rng rng(8);
  EXPECT_THROW(GenModel1(0, 10, 10, rng), ArgumentError);
  EXPECT_THROW(GenModel1(10, 10, 0, rng), ArgumentError);
  EXPECT_THROW(GenModel3(10, 1, rng, 4), ArgumentError);
  EXPECT_THROW(ParseModelKind("model4"), ArgumentError);
  EXPECT_EQ(ParseModelKind("model2"), ModelKind::kModel2);
}

TEST(GridTest, LinspaceAndSigmaGrid) {
  EXPECT_EQ(Linspace(0, 1, 3), (std::vector<double>{0, 0.5, 1}));
  EXPECT_EQ(Linspace(2, 3, 1), (std::vector<double>{2}));
  const auto sigma = SigmaGrid(5);
  ASSERT_EQ(sigma.size(), 5u);
  EXPECT_DOUBLE_EQ(sigma.front(), 2000.0);
  EXPECT_DOUBLE_EQ(sigma.back(), 10.0 / 2.25);
  EXPECT_TRUE(std::is_sorted(sigma.rbegin(), sigma.rend()));
}

TEST(ConfigTest, Scales) {
  const SimConfig desk = DeskScaleConfig(ModelKind::kModel1);
  EXPECT_EQ(desk.n, 500u);
  EXPECT_EQ(desk.forest.num_trees, 100);
  EXPECT_EQ(desk.forest.SubsampleSize(desk.n), 41u);
  EXPECT_EQ(desk.replicates, 200);
  const SimConfig full = FullScaleConfig(ModelKind::kModel1);
  EXPECT_EQ(full.forest.SubsampleSize(full.n), 95u);
  EXPECT_EQ(full.forest.num_trees, 125);
  const SimConfig full3 = FullScaleConfig(ModelKind::kModel3);
  EXPECT_EQ(full3.forest.SubsampleSize(full3.n), 46u);
  EXPECT_EQ(full3.grid.size(), 15u);
  EXPECT_EQ(full3.sweep, SweepParameter::kBeta);
  const auto trees = DefaultAxisValues(RobustnessAxis::kTreeCount);
  EXPECT_NE(std::find(trees.begin(), trees.end(), 125.0), trees.end());
  EXPECT_EQ(DefaultAxisValues(RobustnessAxis::kSubsampleExponent).size(), 10u);
}

TEST(PowerExperimentTest, SingleReplicateRatesAreZeroOrOne) {
  SimConfig cfg = TinyConfig();
  cfg.replicates = 1;
  const PowerCurve curve = RunPowerExperiment(cfg);
  ASSERT_EQ(curve.points.size(), 2u);
  for (const auto& p : curve.points) {
    EXPECT_TRUE(p.rejection_rate == 0.0 || p.rejection_rate == 1.0);
    EXPECT_EQ(p.p_values.size(), 1u);
  }
  EXPECT_EQ(curve.points[0].target, "x1");
  EXPECT_EQ(curve.points[1].target, "x2");
}

TEST(PowerExperimentTest, ReproducibleAcrossThreadCounts) {
  SimConfig cfg = TinyConfig();
  cfg.num_threads = 1;
  const PowerCurve a = RunPowerExperiment(cfg);
  cfg.num_threads = 3;
  const PowerCurve b = RunPowerExperiment(cfg);
  ASSERT_EQ(a.points.size(), b.points.size());
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    EXPECT_EQ(a.points[i].p_values, b.points[i].p_values);
  }
}

TEST(PowerExperimentTest, ReplicateMatchesDirectRun) {
  SimConfig cfg = TinyConfig();
  cfg.replicates = 1;
  const PowerCurve curve = RunPowerExperiment(cfg);

  const std::uint64_t rep = ReplicateSeed(cfg.seed, 0, 0);
  Rng train_rng(DeriveSeed(rep, 0)), test_rng(DeriveSeed(rep, 1));
  const Dataset train = GenModel1(cfg.n, 10, 10, train_rng);
  const Dataset test = GenModel1(cfg.n_test, 10, 10, test_rng);
  ForestConfig f = cfg.forest;
  f.seed = DeriveSeed(rep, 2);
  PermTestConfig p = cfg.perm;
  p.seed = DeriveSeed(rep, 3);
  const auto direct = RunTest(train, test, FeatureSubset::Single(0),
                              PermuteRows{DeriveSeed(rep, 4)}, f, p);
  EXPECT_EQ(curve.points[0].p_values[0], direct.p_value);
}

TEST(RobustnessTest, SingleValueSweepEqualsPowerExperiment) {
  SimConfig base = TinyConfig();
  base.model.kind = ModelKind::kModel2;
  base.targets = DefaultTargets(ModelKind::kModel2);
  const std::vector<double> values{15};
  const auto sweep = RobustnessSweep(base, RobustnessAxis::kTreeCount, values);
  ASSERT_EQ(sweep.size(), 1u);
  SimConfig direct = base;
  direct.forest.num_trees = 15;
  direct.model.sigma = 4;
  direct.grid = {4};
  const PowerCurve expected = RunPowerExperiment(direct);
  ASSERT_EQ(sweep[0].curve.points.size(), expected.points.size());
  for (std::size_t i = 0; i < expected.points.size(); ++i) {
    EXPECT_EQ(sweep[0].curve.points[i].p_values, expected.points[i].p_values);
  }
  EXPECT_THROW(RobustnessConfig(base, RobustnessAxis::kTreeCount, 2.5), ArgumentError);
  EXPECT_THROW(ParseRobustnessAxis("depth"), ArgumentError);
}

TEST(SimConfigTest, Validation) {
  SimConfig cfg = TinyConfig();
  cfg.targets = {FeatureSubset::Single(10)};
  EXPECT_THROW(cfg.Validate(), ArgumentError);
  cfg = TinyConfig();
  cfg.grid.clear();
  EXPECT_THROW(cfg.Validate(), ArgumentError);
  cfg = TinyConfig();
  cfg.model.kind = ModelKind::kModel3;
  EXPECT_THROW(cfg.Validate(), ArgumentError);  // sigma sweep on Model 3
}

}  // namespace
}  // namespace rfperm
