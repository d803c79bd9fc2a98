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
#include <optional>
#include <utility>

#include "rfperm/errors.h"
#include "rfperm/parallel.h"

namespace rfperm {
namespace {

constexpr std::size_t kM1Numeric = 5;
constexpr std::size_t kM1Categorical = 5;
constexpr int kM1Levels = 3;
// Level index of the label "L2" used by the indicator terms.
constexpr double kIndicatorLevel = 1.0;

struct Columns {
  std::vector<std::vector<double>> x;
  std::vector<FeatureKind> kinds;
};

Columns M1Covariates(std::size_t n, Rng& rng, std::vector<double>& noise,
                     double sigma) {
  Columns out;
  out.x.assign(kM1Numeric + kM1Categorical, std::vector<double>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < kM1Numeric; ++j) out.x[j][i] = rng.Uniform();
    for (std::size_t j = 0; j < kM1Categorical; ++j) {
      out.x[kM1Numeric + j][i] = static_cast<double>(rng.Below(kM1Levels));
    }
    noise[i] = sigma * rng.Normal();
  }
  out.kinds.assign(kM1Numeric, FeatureKind::Numeric());
  out.kinds.insert(out.kinds.end(), kM1Categorical,
                   FeatureKind::Categorical(kM1Levels));
  return out;
}

void CheckRows(std::size_t n) {
  if (n < 1) throw ArgumentError("cannot generate an empty dataset");
}

void CheckSigma(double sigma) {
  if (!(sigma > 0.0) || !std::isfinite(sigma)) {
    throw ArgumentError("noise sd must be positive");
  }
}

template <typename MeanFn>
Dataset GenM1Model(std::size_t n, double beta, double sigma, Rng& rng,
                   MeanFn mean) {
  CheckRows(n);
  CheckSigma(sigma);
  std::vector<double> y(n);
  Columns cols = M1Covariates(n, rng, y, sigma);
  std::vector<double> row(cols.x.size());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < row.size(); ++j) row[j] = cols.x[j][i];
    y[i] += mean(row, beta);
  }
  return Dataset(std::move(cols.x), std::move(y), std::move(cols.kinds));
}

int CountTrue(const std::vector<bool>& flags) {
  return static_cast<int>(std::count(flags.begin(), flags.end(), true));
}

}  // namespace

void SimModel::Validate() const {
  if (!std::isfinite(beta)) throw ArgumentError("beta must be finite");
  if (kind == ModelKind::kModel3) {
    if (num_features < 5) {
      throw ArgumentError("Model 3 needs at least 5 features");
    }
  } else {
    CheckSigma(sigma);
  }
}

std::string SimModel::Name() const {
  switch (kind) {
    case ModelKind::kModel1: return "model1";
    case ModelKind::kModel2: return "model2";
    case ModelKind::kModel3: return "model3";
  }
  return "unknown";
}

ModelKind ParseModelKind(const std::string& name) {
  if (name == "model1") return ModelKind::kModel1;
  if (name == "model2") return ModelKind::kModel2;
  if (name == "model3") return ModelKind::kModel3;
  throw ArgumentError("unknown model '" + name + "'");
}

double Expit(double z) { return 1.0 / (1.0 + std::exp(z)); }

double Model1Mean(std::span<const double> x, double beta) {
  return beta * x[0] + beta * (x[5] == kIndicatorLevel ? 1.0 : 0.0);
}

double Model2Mean(std::span<const double> x, double beta) {
  const double indicator = x[6] == kIndicatorLevel ? 1.0 : 0.0;
  const double centered = x[2] - 0.05;
  return beta * std::sin(std::numbers::pi * indicator * x[0]) +
         2.0 * beta * centered * centered + beta * x[3] + beta * x[1];
}

double Model3Probability(std::span<const double> x, double beta) {
  return Expit(beta * (x[1] + x[2] + x[3] + x[4]));
}

Dataset GenModel1(std::size_t n, double beta, double sigma, Rng& rng) {
  return GenM1Model(n, beta, sigma, rng, Model1Mean);
}

Dataset GenModel2(std::size_t n, double beta, double sigma, Rng& rng) {
  return GenM1Model(n, beta, sigma, rng, Model2Mean);
}

Dataset GenModel3(std::size_t n, double beta, Rng& rng, std::size_t num_features) {
  CheckRows(n);
  if (num_features < 5) throw ArgumentError("Model 3 needs at least 5 features");
  const double innovation_sd = std::sqrt(1.0 - kAr1Coefficient * kAr1Coefficient);
  std::vector<std::vector<double>> x(num_features, std::vector<double>(n));
  std::vector<double> y(n);
  std::vector<double> row(num_features);
  for (std::size_t i = 0; i < n; ++i) {
    row[0] = rng.Normal();
    for (std::size_t j = 1; j < num_features; ++j) {
      row[j] = kAr1Coefficient * row[j - 1] + innovation_sd * rng.Normal();
    }
    for (std::size_t j = 0; j < num_features; ++j) x[j][i] = row[j];
    y[i] = rng.Uniform() < Model3Probability(row, beta) ? 1.0 : 0.0;
  }
  return Dataset(std::move(x), std::move(y),
                 std::vector<FeatureKind>(num_features, FeatureKind::Numeric()));
}

Dataset Generate(const SimModel& model, std::size_t n, Rng& rng) {
  model.Validate();
  switch (model.kind) {
    case ModelKind::kModel1: return GenModel1(n, model.beta, model.sigma, rng);
    case ModelKind::kModel2: return GenModel2(n, model.beta, model.sigma, rng);
    case ModelKind::kModel3:
      return GenModel3(n, model.beta, rng, model.num_features);
  }
  throw ArgumentError("unknown model");
}

std::vector<double> Linspace(double a, double b, std::size_t count) {
  if (count == 0) return {};
  if (count == 1) return {a};
  std::vector<double> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(count - 1);
  }
  out.back() = b;
  return out;
}

std::vector<double> SigmaGrid(std::size_t points) {
  std::vector<double> grid = Linspace(0.005, 2.25, points);
  for (double& j : grid) j = 10.0 / j;
  return grid;
}

void SimConfig::Validate() const {
  model.Validate();
  if (replicates < 1) throw ArgumentError("replicates must be >= 1");
  if (grid.empty()) throw ArgumentError("parameter grid is empty");
  if (targets.empty()) throw ArgumentError("no target features");
  if (n_test < 1) throw ArgumentError("test set size must be >= 1");
  if (!(alpha > 0.0 && alpha < 1.0)) throw ArgumentError("alpha must lie in (0, 1)");
  if (sweep == SweepParameter::kSigma) {
    if (model.kind == ModelKind::kModel3) {
      throw ArgumentError("Model 3 has no noise sd to sweep");
    }
    for (double s : grid) CheckSigma(s);
  }
  const std::size_t p =
      model.kind == ModelKind::kModel3 ? model.num_features : kM1Numeric + kM1Categorical;
  for (const auto& t : targets) t.Validate(p);
  forest.Validate(n, p);
  perm.Validate();
}

std::vector<FeatureSubset> DefaultTargets(ModelKind kind, std::size_t num_features) {
  switch (kind) {
    case ModelKind::kModel1:
      return {FeatureSubset::Single(0), FeatureSubset::Single(5),
              FeatureSubset::Single(1), FeatureSubset::Single(6)};
    case ModelKind::kModel2:
      return {FeatureSubset::Single(2), FeatureSubset::Single(6),
              FeatureSubset::Single(4)};
    case ModelKind::kModel3:
      return {FeatureSubset::Single(1), FeatureSubset::Single(0),
              FeatureSubset::Single(num_features - 1)};
  }
  return {};
}

SimConfig DeskScaleConfig(ModelKind kind) {
  SimConfig cfg;
  cfg.model.kind = kind;
  cfg.model.beta = 10.0;
  cfg.model.sigma = 10.0;
  cfg.n = 500;
  cfg.n_test = 50;
  cfg.forest.num_trees = 100;
  cfg.forest.subsample_exponent = 0.6;
  cfg.perm.num_permutations = 300;
  cfg.replicates = 200;
  if (kind == ModelKind::kModel3) {
    cfg.sweep = SweepParameter::kBeta;
    cfg.grid = Linspace(0.01, 2.5, 5);
  } else {
    cfg.sweep = SweepParameter::kSigma;
    cfg.grid = SigmaGrid(5);
  }
  cfg.targets = DefaultTargets(kind);
  return cfg;
}

SimConfig FullScaleConfig(ModelKind kind) {
  SimConfig cfg = DeskScaleConfig(kind);
  cfg.n = kind == ModelKind::kModel3 ? 600 : 2000;
  cfg.n_test = 100;
  cfg.forest.num_trees = 125;
  cfg.perm.num_permutations = 500;
  cfg.replicates = 500;
  if (kind == ModelKind::kModel3) {
    cfg.grid = Linspace(0.01, 2.5, 8);
    const auto high = Linspace(5.0, 20.0, 7);
    cfg.grid.insert(cfg.grid.end(), high.begin(), high.end());
  } else {
    cfg.grid = SigmaGrid(9);
  }
  return cfg;
}

std::vector<PowerPoint> PowerCurve::ForTarget(const std::string& target) const {
  std::vector<PowerPoint> out;
  for (const auto& p : points) {
    if (p.target == target) out.push_back(p);
  }
  return out;
}

std::uint64_t ReplicateSeed(std::uint64_t seed, std::size_t grid_index,
                            std::size_t replicate) {
  return DeriveSeed(DeriveSeed(seed, grid_index), replicate);
}

PowerCurve RunPowerExperiment(const SimConfig& cfg) {
  cfg.Validate();
  const std::size_t n_targets = cfg.targets.size();
  const auto reps = static_cast<std::size_t>(cfg.replicates);

  // Target labels use the simulated feature names (x1, x2, ...).
  std::vector<std::string> labels;
  for (const auto& t : cfg.targets) {
    std::string label;
    for (std::size_t j : t.indices()) {
      if (!label.empty()) label += ',';
      label += "x" + std::to_string(j + 1);
    }
    labels.push_back(std::move(label));
  }

  PowerCurve curve;
  curve.label = cfg.model.Name();
  for (std::size_t g = 0; g < cfg.grid.size(); ++g) {
    SimModel model = cfg.model;
    (cfg.sweep == SweepParameter::kSigma ? model.sigma : model.beta) = cfg.grid[g];

    // p-values and z-scores per (replicate, target).
    std::vector<double> p(reps * n_targets);
    std::vector<double> z(reps * n_targets);
    ParallelFor(reps, cfg.num_threads, [&](std::size_t r) {
      const std::uint64_t rep_seed = ReplicateSeed(cfg.seed, g, r);
      Rng train_rng(DeriveSeed(rep_seed, 0));
      Rng test_rng(DeriveSeed(rep_seed, 1));
      const Dataset train = Generate(model, cfg.n, train_rng);
      const Dataset test = Generate(model, cfg.n_test, test_rng);

      ForestConfig forest = cfg.forest;
      forest.seed = DeriveSeed(rep_seed, 2);
      forest.num_threads = 1;
      PermTestConfig perm = cfg.perm;
      perm.seed = DeriveSeed(rep_seed, 3);
      perm.num_threads = 1;
      const MutingStrategy strategy =
          cfg.exclude_features ? MutingStrategy(ExcludeFeatures{})
                               : MutingStrategy(PermuteRows{DeriveSeed(rep_seed, 4)});

      const ImportanceReport report =
          ImportanceAll(train, test, cfg.targets, strategy, forest, perm);
      // Entries come back sorted by z-score; map them to target positions.
      std::vector<bool> used(report.entries.size(), false);
      for (std::size_t t = 0; t < n_targets; ++t) {
        for (std::size_t e = 0; e < report.entries.size(); ++e) {
          if (!used[e] && report.entries[e].features == cfg.targets[t]) {
            used[e] = true;
            p[r * n_targets + t] = report.entries[e].result.p_value;
            z[r * n_targets + t] = report.entries[e].result.z_score;
            break;
          }
        }
      }
      if (CountTrue(used) != static_cast<int>(n_targets)) {
        throw ArgumentError("importance report is missing a target");
      }
    });

    for (std::size_t t = 0; t < n_targets; ++t) {
      PowerPoint point;
      point.parameter = cfg.grid[g];
      point.target = labels[t];
      point.replicates = cfg.replicates;
      double p_sum = 0.0;
      double z_sum = 0.0;
      for (std::size_t r = 0; r < reps; ++r) {
        const double pv = p[r * n_targets + t];
        if (pv <= cfg.alpha) ++point.rejections;
        p_sum += pv;
        z_sum += z[r * n_targets + t];
        if (cfg.keep_p_values) point.p_values.push_back(pv);
      }
      point.rejection_rate =
          static_cast<double>(point.rejections) / static_cast<double>(reps);
      point.mean_p_value = p_sum / static_cast<double>(reps);
      point.mean_z_score = z_sum / static_cast<double>(reps);
      curve.points.push_back(std::move(point));
    }
  }
  return curve;
}

RobustnessAxis ParseRobustnessAxis(const std::string& name) {
  if (name == "trees") return RobustnessAxis::kTreeCount;
  if (name == "exponent") return RobustnessAxis::kSubsampleExponent;
  throw ArgumentError("unknown robustness axis '" + name +
                      "' (expected trees or exponent)");
}

std::vector<double> DefaultAxisValues(RobustnessAxis axis) {
  if (axis == RobustnessAxis::kTreeCount) {
    return {20, 50, 75, 125, 250, 375, 500, 750, 1000};
  }
  return Linspace(0.1, 0.99, 10);
}

SimConfig RobustnessConfig(const SimConfig& base, RobustnessAxis axis,
                           double value) {
  SimConfig cfg = base;
  if (cfg.model.kind == ModelKind::kModel3) {
    throw ArgumentError("robustness sweeps use Model 1 or Model 2");
  }
  cfg.model.sigma = kRobustnessSigma;
  cfg.sweep = SweepParameter::kSigma;
  cfg.grid = {kRobustnessSigma};
  if (axis == RobustnessAxis::kTreeCount) {
    if (!(value >= 1.0) || value != std::floor(value)) {
      throw ArgumentError("tree count must be a positive integer");
    }
    cfg.forest.num_trees = static_cast<int>(value);
  } else {
    cfg.forest.subsample_size.reset();
    cfg.forest.subsample_exponent = value;
  }
  return cfg;
}

std::vector<RobustnessCurve> RobustnessSweep(const SimConfig& base,
                                             RobustnessAxis axis,
                                             std::span<const double> values) {
  if (values.empty()) throw ArgumentError("robustness sweep needs axis values");
  std::vector<RobustnessCurve> out;
  for (double v : values) {
    out.push_back({v, RunPowerExperiment(RobustnessConfig(base, axis, v))});
  }
  return out;
}

}  // namespace rfperm
