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

#ifndef RFPERM_SIMBENCH_H_
#define RFPERM_SIMBENCH_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "rfperm/dataset.h"
#include "rfperm/forest.h"
#include "rfperm/muting.h"
#include "rfperm/permtest.h"
#include "rfperm/rng.h"

namespace rfperm {

// Lag-one coefficient of the AR(1) covariates of Model 3.
inline constexpr double kAr1Coefficient = 0.15;
inline constexpr std::size_t kModel3Features = 500;

// Covariates X1..X5 are Uniform(0, 1); X6..X10 are three-level categoricals
// with equal probabilities, labelled L1, L2, L3 (level index 0, 1, 2).
//
//   Model 1: Y = b*X1 + b*I(X6 = L2) + e
//   Model 2: Y = b*sin(pi*I(X7 = L2)*X1) + 2b*(X3 - 0.05)^2 + b*X4 + b*X2 + e
//   Model 3: P(Y = 1 | X) = expit(b * (X2 + X3 + X4 + X5)) with
//            expit(z) = 1 / (1 + e^z) and X1..X500 a stationary Gaussian
//            AR(1) sequence across columns with unit marginal variance.
//
// e ~ N(0, sigma^2). Feature names are x1, x2, ...
enum class ModelKind { kModel1, kModel2, kModel3 };

struct SimModel {
  ModelKind kind = ModelKind::kModel1;
  double beta = 10.0;
  double sigma = 10.0;  // unused by Model 3
  std::size_t num_features = kModel3Features;  // Model 3 only

  void Validate() const;
  std::string Name() const;
};

// Parses "model1", "model2" or "model3".
ModelKind ParseModelKind(const std::string& name);

// Note the sign: this is the decreasing logistic function.
double Expit(double z);

// Noise-free regression functions and the Model 3 success probability, for
// one feature row.
double Model1Mean(std::span<const double> x, double beta);
double Model2Mean(std::span<const double> x, double beta);
double Model3Probability(std::span<const double> x, double beta);

Dataset GenModel1(std::size_t n, double beta, double sigma, Rng& rng);
Dataset GenModel2(std::size_t n, double beta, double sigma, Rng& rng);
Dataset GenModel3(std::size_t n, double beta, Rng& rng,
                  std::size_t num_features = kModel3Features);
Dataset Generate(const SimModel& model, std::size_t n, Rng& rng);

// `count` equally spaced values from a to b inclusive.
std::vector<double> Linspace(double a, double b, std::size_t count);

// sigma = 10 / j for j equally spaced between 0.005 and 2.25.
std::vector<double> SigmaGrid(std::size_t points);

enum class SweepParameter { kSigma, kBeta };

struct SimConfig {
  SimModel model;
  std::size_t n = 500;
  std::size_t n_test = 50;
  ForestConfig forest;
  PermTestConfig perm;
  // Muting used for every target; PermuteRows seeds are drawn per replicate.
  bool exclude_features = false;
  int replicates = 200;
  std::vector<FeatureSubset> targets;
  std::vector<double> grid;
  SweepParameter sweep = SweepParameter::kSigma;
  double alpha = 0.05;
  std::uint64_t seed = 0;
  // Replicates run concurrently on this many threads (0 = default); each
  // replicate's forests run single-threaded.
  int num_threads = 0;
  // Keep every replicate's p-value in the output.
  bool keep_p_values = true;

  void Validate() const;
};

// Defaults: n = 500, B = 100, N_t = 50, N_0 = 300, 200 replicates, k = n^0.6,
// 5-point sigma grid (Models 1-2) or beta grid (Model 3).
SimConfig DeskScaleConfig(ModelKind kind);
// n = 2000 (600 for Model 3), B = 125, N_t = 100, N_0 = 500, 500 replicates,
// 9-point sigma grid or the 8 + 7 point beta grid.
SimConfig FullScaleConfig(ModelKind kind);
// The targets tested for each model: Model 1 x1, x6, x2, x7; Model 2 x3, x7,
// x5; Model 3 x2, x1, x500.
std::vector<FeatureSubset> DefaultTargets(ModelKind kind,
                                          std::size_t num_features = kModel3Features);

struct PowerPoint {
  double parameter = 0.0;
  std::string target;
  int rejections = 0;
  int replicates = 0;
  double rejection_rate = 0.0;
  double mean_p_value = 0.0;
  double mean_z_score = 0.0;
  std::vector<double> p_values;  // per replicate, when kept
};

struct PowerCurve {
  std::string label;
  // Grid-major, then target order.
  std::vector<PowerPoint> points;

  // Points for one target, in grid order.
  std::vector<PowerPoint> ForTarget(const std::string& target) const;
};

// Seed of replicate `replicate` at grid position `grid_index`.
std::uint64_t ReplicateSeed(std::uint64_t seed, std::size_t grid_index,
                            std::size_t replicate);

// For each grid value and replicate: fresh training and test data, one
// importance run over all targets, rejection when p <= alpha. Deterministic
// given cfg.seed and independent of thread count.
PowerCurve RunPowerExperiment(const SimConfig& cfg);

enum class RobustnessAxis { kTreeCount, kSubsampleExponent };

RobustnessAxis ParseRobustnessAxis(const std::string& name);

// B in {20, 50, 75, 125, 250, 375, 500, 750, 1000}, or 10 exponents equally
// spaced in [0.1, 0.99].
std::vector<double> DefaultAxisValues(RobustnessAxis axis);

struct RobustnessCurve {
  double axis_value = 0.0;
  PowerCurve curve;
};

// Error standard deviation used by the sweep (variance 16).
inline constexpr double kRobustnessSigma = 4.0;

// The configuration RobustnessSweep runs for one axis value: the base config
// with sigma fixed at kRobustnessSigma and the axis value applied.
SimConfig RobustnessConfig(const SimConfig& base, RobustnessAxis axis,
                           double value);

// One RunPowerExperiment per axis value. Replicate seeds do not depend on
// the axis value, so every curve sees the same simulated datasets.
std::vector<RobustnessCurve> RobustnessSweep(const SimConfig& base,
                                             RobustnessAxis axis,
                                             std::span<const double> values);

}  // namespace rfperm

#endif  // RFPERM_SIMBENCH_H_
