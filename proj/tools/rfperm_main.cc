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

// rfperm: permutation tests for random-forest feature importance.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <stdexcept>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "rfperm/csv.h"
#include "rfperm/dataset.h"
#include "rfperm/errors.h"
#include "rfperm/forest.h"
#include "rfperm/histogram.h"
#include "rfperm/muting.h"
#include "rfperm/normality.h"
#include "rfperm/parallel.h"
#include "rfperm/permtest.h"
#include "rfperm/report.h"
#include "rfperm/rng.h"
#include "rfperm/simbench.h"

namespace rfperm {
namespace {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

// Raised while turning flags into configs; reported with exit code 2.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Sub-streams of --seed.
constexpr std::uint64_t kSplitStream = 0;
constexpr std::uint64_t kForestStream = 1;
constexpr std::uint64_t kPermutationStream = 2;
constexpr std::uint64_t kRowPermutationStream = 3;

struct ForestFlags {
  std::optional<int> b_trees;
  std::optional<double> subsample_exponent;
  std::optional<std::size_t> subsample_size;
  std::optional<int> mtry;
  std::optional<int> min_node;
  std::optional<int> max_depth;
  std::optional<double> min_split_fraction;
  std::optional<int> n_perm;
  std::uint64_t seed = 0;
  int threads = 0;
  std::string out;

  void Register(CLI::App* app) {
    app->add_option("--b-trees", b_trees, "Trees per forest (default 100)")
        ->check(CLI::PositiveNumber);
    app->add_option("--subsample-exponent", subsample_exponent,
                    "Subsample size is round(n^exponent) (default 0.6)")
        ->check(CLI::Range(0.0, 1.0));
    app->add_option("--subsample-size", subsample_size,
                    "Explicit subsample size; overrides the exponent")
        ->check(CLI::PositiveNumber);
    app->add_option("--mtry", mtry, "Features drawn per split (default ceil(p/3))")
        ->check(CLI::PositiveNumber);
    app->add_option("--min-node", min_node, "Minimum rows per child node (default 1)")
        ->check(CLI::PositiveNumber);
    app->add_option("--max-depth", max_depth, "Maximum tree depth")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--min-split-fraction", min_split_fraction,
                    "Each child keeps at least this fraction of the node")
        ->check(CLI::Range(0.0, 0.5));
    app->add_option("--n-perm", n_perm, "Number of tree-label permutations")
        ->check(CLI::PositiveNumber);
    app->add_option("--seed", seed, "Master seed")->capture_default_str();
    app->add_option("--threads", threads,
                    std::string("Worker threads (0: ") + kThreadsEnvVar +
                        " or hardware concurrency)")
        ->check(CLI::NonNegativeNumber);
    app->add_option("--out", out, "Directory for report files");
  }

  void ApplyTo(ForestConfig& f, PermTestConfig& p) const {
    if (b_trees) f.num_trees = *b_trees;
    if (subsample_exponent) f.subsample_exponent = *subsample_exponent;
    if (subsample_size) f.subsample_size = *subsample_size;
    if (mtry) f.tree.mtry = *mtry;
    if (min_node) f.tree.min_node_size = *min_node;
    if (max_depth) f.tree.max_depth = *max_depth;
    if (min_split_fraction) f.tree.min_split_fraction = *min_split_fraction;
    if (n_perm) p.num_permutations = *n_perm;
    f.num_threads = threads;
    p.num_threads = threads;
  }
};

struct DataFlags {
  std::string data;
  std::string response = "y";
  std::string test_data;
  double test_fraction = 0.15;
  std::string strategy = "permute";
  bool svg = false;

  void Register(CLI::App* app, bool allow_knockoff) {
    app->add_option("--data", data, "Training CSV file")->required();
    app->add_option("--response", response, "Response column")->capture_default_str();
    app->add_option("--test-data", test_data,
                    "Held-out test CSV; otherwise a random split is used");
    app->add_option("--test-fraction", test_fraction,
                    "Fraction of rows held out when --test-data is absent")
        ->capture_default_str()
        ->check(CLI::Range(0.0, 1.0));
    std::vector<std::string> allowed{"permute", "exclude"};
    if (allow_knockoff) allowed.push_back("knockoff");
    app->add_option("--strategy", strategy, "Muting strategy")
        ->capture_default_str()
        ->check(CLI::IsMember(allowed));
    app->add_flag("--svg", svg, "Also write an SVG histogram of the permutation deltas");
  }
};

struct LoadedData {
  Dataset train;
  Dataset test;
  // Rows of the --data file used for training, for aligning knockoffs.
  std::optional<std::vector<std::size_t>> train_rows;
};

LoadedData LoadData(const DataFlags& flags, std::uint64_t seed) {
  CsvSchema schema;
  schema.response_column = flags.response;
  Dataset full = LoadCsv(flags.data, schema);
  if (!flags.test_data.empty()) {
    Dataset test = LoadCsv(flags.test_data, SchemaFor(full));
    return {std::move(full), std::move(test), std::nullopt};
  }
  TrainTestSplit split =
      SplitTrainTest(full, flags.test_fraction, DeriveSeed(seed, kSplitStream));
  return {std::move(split.train), std::move(split.test), std::move(split.train_rows)};
}

FeatureSubset ResolveFeatures(const Dataset& d, const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  for (const auto& name : names) {
    try {
      idx.push_back(d.ColumnIndex(name));
    } catch (const ArgumentError& e) {
      throw UsageError(e.what());
    }
  }
  try {
    return FeatureSubset(std::move(idx));
  } catch (const ArgumentError& e) {
    throw UsageError(std::string("--features: ") + e.what());
  }
}

double ParseCell(const std::string& cell, const std::string& where) {
  char* end = nullptr;
  const double v = std::strtod(cell.c_str(), &end);
  if (cell.empty() || *end != '\0' || !std::isfinite(v)) {
    throw ParseError("knockoff " + where + ": not a finite number: '" + cell + "'", 0,
                     where);
  }
  return v;
}

// Knockoff columns are matched to features by header name. Rows align with
// the --data file (or with the training file when --test-data is given).
KnockoffColumns LoadKnockoffs(const std::string& path, const LoadedData& data,
                              const FeatureSubset& s) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open knockoff file '" + path + "'");
  const auto records = ReadCsvRecords(in);
  if (records.empty()) throw SchemaError("knockoff file '" + path + "' is empty");
  const auto& header = records.front();
  KnockoffColumns out;
  for (std::size_t j : s.indices()) {
    const std::string& name = data.train.name(j);
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) {
      throw SchemaError("knockoff file has no column '" + name + "'");
    }
    const auto col = static_cast<std::size_t>(it - header.begin());
    std::vector<double> values;
    for (std::size_t r = 1; r < records.size(); ++r) {
      const std::string& cell = records[r].at(col);
      if (data.train.kind(j).is_categorical()) {
        const auto& labels = data.train.level_labels(j);
        const auto level = std::find(labels.begin(), labels.end(), cell);
        if (level == labels.end()) {
          throw ValidationError("knockoff column '" + name + "' has unknown level '" +
                                    cell + "'",
                                r - 1, name);
        }
        values.push_back(static_cast<double>(level - labels.begin()));
      } else {
        values.push_back(ParseCell(cell, "column '" + name + "'"));
      }
    }
    if (data.train_rows) {
      if (values.size() != data.train_rows->size() + data.test.rows()) {
        throw SchemaError("knockoff file must have one row per --data row");
      }
      std::vector<double> selected;
      for (std::size_t r : *data.train_rows) selected.push_back(values[r]);
      values = std::move(selected);
    }
    out.columns.push_back(std::move(values));
  }
  return out;
}

MutingStrategy MakeStrategy(const std::string& name, std::uint64_t seed) {
  if (name == "exclude") return ExcludeFeatures{};
  return PermuteRows{DeriveSeed(seed, kRowPermutationStream)};
}

void ValidateConfigs(const ForestConfig& f, const PermTestConfig& p, const Dataset& train) {
  try {
    f.Validate(train.rows(), train.cols());
    p.Validate();
  } catch (const ArgumentError& e) {
    throw UsageError(e.what());
  }
}

void PrepareOutDir(const std::string& out) {
  if (out.empty()) return;
  std::error_code ec;
  fs::create_directories(out, ec);
  if (ec) throw IoError("cannot create output directory '" + out + "': " + ec.message());
}

void WriteText(const std::string& out, const std::string& file, const std::string& text) {
  const fs::path path = fs::path(out) / file;
  std::ofstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot write '" + path.string() + "'");
  f << text;
  if (!f) throw IoError("write failed for '" + path.string() + "'");
}

std::string FileSafe(const std::string& label) {
  std::string s;
  for (char c : label) {
    s += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '.') ? c : '_';
  }
  return s;
}

void WriteResultFiles(const std::string& out, const std::string& suffix,
                      const PermTestResult& r, const std::string& label, bool svg) {
  std::ostringstream deltas;
  WriteDeltasCsv(r.deltas_permuted, deltas);
  WriteText(out, "deltas" + suffix + ".csv", deltas.str());
  if (svg) {
    RenderHistogram(r.deltas_permuted, r.delta_observed,
                    (fs::path(out) / ("histogram" + suffix + ".svg")).string(),
                    "Permutation deltas: " + label);
  }
}

// Each distinct warning is printed once per run.
void PrintWarnings(const std::vector<std::string>& warnings) {
  static std::vector<std::string> seen;
  for (const auto& w : warnings) {
    if (std::find(seen.begin(), seen.end(), w) != seen.end()) continue;
    seen.push_back(w);
    std::cerr << "warning: " << w << '\n';
  }
}

// ---- test / overall ------------------------------------------------------

struct TestCommand {
  DataFlags data;
  ForestFlags forest;
  std::vector<std::string> features;
  std::string knockoffs;
  bool overall = false;

  int Run() const {
    const LoadedData loaded = LoadData(data, forest.seed);
    const FeatureSubset s = overall ? FeatureSubset::All(loaded.train.cols())
                                    : ResolveFeatures(loaded.train, features);
    ForestConfig fcfg;
    PermTestConfig pcfg;
    forest.ApplyTo(fcfg, pcfg);
    fcfg.seed = DeriveSeed(forest.seed, kForestStream);
    pcfg.seed = DeriveSeed(forest.seed, kPermutationStream);
    ValidateConfigs(fcfg, pcfg, loaded.train);
    if (overall && data.strategy == "exclude") {
      throw UsageError("overall test cannot exclude every feature; use --strategy permute");
    }

    MutingStrategy strategy = MakeStrategy(data.strategy, forest.seed);
    if (data.strategy == "knockoff") {
      if (knockoffs.empty()) throw UsageError("--strategy knockoff requires --knockoffs");
      strategy = LoadKnockoffs(knockoffs, loaded, s);
    }
    PrepareOutDir(forest.out);

    const PermTestResult r = RunTest(loaded.train, loaded.test, s, strategy, fcfg, pcfg);
    const std::string label = overall ? "all" : s.Label(loaded.train);
    PrintWarnings(r.warnings);
    std::cout << SummaryLine(label, r) << '\n';
    if (!forest.out.empty()) {
      WriteText(forest.out, "report.json", PermTestReportJson(r, label));
      WriteResultFiles(forest.out, "", r, label, data.svg);
    }
    return 0;
  }
};

// ---- importance -----------------------------------------------------------

struct ImportanceCommand {
  DataFlags data;
  ForestFlags forest;
  std::vector<std::string> features;

  int Run() const {
    const LoadedData loaded = LoadData(data, forest.seed);
    std::vector<FeatureSubset> subsets;
    if (features.empty()) {
      for (std::size_t j = 0; j < loaded.train.cols(); ++j) {
        subsets.push_back(FeatureSubset::Single(j));
      }
    } else {
      for (const auto& name : features) subsets.push_back(ResolveFeatures(loaded.train, {name}));
    }
    ForestConfig fcfg;
    PermTestConfig pcfg;
    forest.ApplyTo(fcfg, pcfg);
    fcfg.seed = DeriveSeed(forest.seed, kForestStream);
    pcfg.seed = DeriveSeed(forest.seed, kPermutationStream);
    ValidateConfigs(fcfg, pcfg, loaded.train);
    PrepareOutDir(forest.out);

    const ImportanceReport report =
        ImportanceAll(loaded.train, loaded.test, subsets,
                      MakeStrategy(data.strategy, forest.seed), fcfg, pcfg);
    PrintWarnings(report.warnings);
    for (const auto& e : report.entries) {
      PrintWarnings(e.result.warnings);
      std::cout << SummaryLine(e.label, e.result) << '\n';
    }
    if (!forest.out.empty()) {
      WriteText(forest.out, "report.json", ImportanceReportJson(report));
      for (const auto& e : report.entries) {
        WriteResultFiles(forest.out, "_" + FileSafe(e.label), e.result, e.label,
                         data.svg);
      }
    }
    return 0;
  }
};

// ---- simulate -------------------------------------------------------------

struct SimulateCommand {
  std::string model = "model1";
  bool full_scale = false;
  std::vector<std::string> targets;
  std::optional<int> replicates;
  std::vector<double> grid;
  std::optional<std::string> sweep;
  std::string robustness;
  std::vector<double> axis_values;
  std::optional<double> beta;
  std::optional<double> sigma;
  std::optional<std::size_t> n;
  std::optional<std::size_t> n_test;
  std::optional<std::size_t> num_features;
  double alpha = 0.05;
  std::string strategy = "permute";
  ForestFlags forest;

  SimConfig Resolve() const {
    const ModelKind kind = ParseModelKind(model);
    SimConfig cfg = full_scale ? FullScaleConfig(kind) : DeskScaleConfig(kind);
    if (replicates) cfg.replicates = *replicates;
    if (!grid.empty()) cfg.grid = grid;
    if (sweep) {
      cfg.sweep = *sweep == "beta" ? SweepParameter::kBeta : SweepParameter::kSigma;
      if (grid.empty()) {
        throw UsageError("--sweep requires an explicit --grid");
      }
    }
    if (beta) cfg.model.beta = *beta;
    if (sigma) cfg.model.sigma = *sigma;
    if (n) cfg.n = *n;
    if (n_test) cfg.n_test = *n_test;
    if (num_features) cfg.model.num_features = *num_features;
    cfg.alpha = alpha;
    cfg.exclude_features = strategy == "exclude";
    forest.ApplyTo(cfg.forest, cfg.perm);
    cfg.num_threads = forest.threads;
    cfg.seed = forest.seed;
    if (kind == ModelKind::kModel3 && targets.empty()) {
      cfg.targets = DefaultTargets(kind, cfg.model.num_features);
    }
    if (!targets.empty()) {
      cfg.targets.clear();
      for (const auto& t : targets) {
        const std::size_t idx = ParseTargetName(t);
        cfg.targets.push_back(FeatureSubset::Single(idx));
      }
    }
    try {
      cfg.Validate();
    } catch (const ArgumentError& e) {
      throw UsageError(e.what());
    }
    return cfg;
  }

  static std::size_t ParseTargetName(const std::string& t) {
    std::size_t pos = 0;
    unsigned long v = 0;
    if (t.size() >= 2 && t[0] == 'x') {
      try {
        v = std::stoul(t.substr(1), &pos);
      } catch (const std::exception&) {
        pos = 0;
      }
    }
    if (pos == 0 || pos + 1 != t.size() || v == 0) {
      throw UsageError("--target must name a feature like x1, got '" + t + "'");
    }
    return v - 1;
  }

  static ordered_json PointsJson(const PowerCurve& curve) {
    ordered_json points = ordered_json::array();
    for (const auto& p : curve.points) {
      points.push_back(ordered_json{
          {"grid_value", ordered_json::parse(FormatJsonNumber(p.parameter))},
          {"target", p.target},
          {"rejections", p.rejections},
          {"replicates", p.replicates},
          {"rejection_rate", ordered_json::parse(FormatJsonNumber(p.rejection_rate))},
          {"mean_p", ordered_json::parse(FormatJsonNumber(p.mean_p_value))},
          {"mean_z", ordered_json::parse(FormatJsonNumber(p.mean_z_score))}});
    }
    return points;
  }

  static void PrintCurve(const PowerCurve& curve, const std::string& prefix) {
    for (const auto& p : curve.points) {
      std::cout << prefix << "target=" << p.target
                << " grid_value=" << FormatJsonNumber(p.parameter)
                << " rejection_rate=" << FormatJsonNumber(p.rejection_rate)
                << " mean_p=" << FormatJsonNumber(p.mean_p_value)
                << " mean_z=" << FormatJsonNumber(p.mean_z_score) << '\n';
    }
  }

  static std::string CurveCsv(const PowerCurve& curve) {
    std::ostringstream out;
    WritePowerCurveCsv(curve, out);
    return out.str();
  }

  int Run() const {
    const SimConfig cfg = Resolve();
    const std::string out = forest.out;
    PrepareOutDir(out);

    if (robustness.empty()) {
      const PowerCurve curve = RunPowerExperiment(cfg);
      PrintCurve(curve, "");
      if (!out.empty()) {
        const std::string file = "power_" + cfg.model.Name() + ".csv";
        WriteText(out, file, CurveCsv(curve));
        const std::vector<std::string> files{file};
        auto manifest = ordered_json::parse(SimulationManifestJson(cfg, files));
        manifest["results"] = PointsJson(curve);
        WriteText(out, "manifest.json", manifest.dump(2) + "\n");
      }
      return 0;
    }

    RobustnessAxis axis;
    std::vector<double> values = axis_values;
    try {
      axis = ParseRobustnessAxis(robustness);
      if (values.empty()) values = DefaultAxisValues(axis);
      for (double v : values) RobustnessConfig(cfg, axis, v).Validate();
    } catch (const ArgumentError& e) {
      throw UsageError(e.what());
    }
    const auto curves = RobustnessSweep(cfg, axis, values);
    std::vector<std::string> files;
    ordered_json results = ordered_json::array();
    for (std::size_t i = 0; i < curves.size(); ++i) {
      const std::string value = FormatJsonNumber(curves[i].axis_value);
      PrintCurve(curves[i].curve, robustness + "=" + value + " ");
      files.push_back("robustness_" + cfg.model.Name() + "_" + robustness + "_" +
                      std::to_string(i) + ".csv");
      results.push_back(ordered_json{{"axis_value", ordered_json::parse(value)},
                                     {"points", PointsJson(curves[i].curve)}});
    }
    if (!out.empty()) {
      for (std::size_t i = 0; i < curves.size(); ++i) {
        WriteText(out, files[i], CurveCsv(curves[i].curve));
      }
      auto manifest = ordered_json::parse(
          SimulationManifestJson(RobustnessConfig(cfg, axis, values.front()), files));
      manifest["robustness"] = ordered_json{{"axis", robustness}, {"values", values}};
      manifest["results"] = std::move(results);
      WriteText(out, "manifest.json", manifest.dump(2) + "\n");
    }
    return 0;
  }
};

// ---- diagnose -------------------------------------------------------------

struct DiagnoseCommand {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t b = 0;
  std::string out;

  int Run() const {
    if (k < 1 || k >= n) throw UsageError("--k must satisfy 1 <= k < n");
    const SubsampleDiagnostics d = ComputeSubsampleDiagnostics(n, k, b);
    std::cout << "n=" << n << " k=" << k << " b_trees=" << b
              << " pair_disjoint_prob=" << FormatJsonNumber(d.pair_disjoint_prob)
              << " lemma1_log_term=" << FormatJsonNumber(d.lemma1_log_term)
              << " warning=" << (d.warning ? "true" : "false") << '\n';
    if (d.warning) {
      std::cerr << "warning: C(B,2)*log P(disjoint) < -1; trees are far from pairwise "
                   "independent\n";
    }
    if (!out.empty()) {
      PrepareOutDir(out);
      WriteText(out, "diagnose.json", DiagnosticsReportJson(n, k, b, d));
    }
    return 0;
  }
};

int Main(int argc, char** argv) {
  CLI::App app{"Permutation tests for random-forest feature importance"};
  app.require_subcommand(1);

  TestCommand test;
  CLI::App* test_cmd = app.add_subcommand("test", "Test one feature subset");
  test.data.Register(test_cmd, true);
  test.forest.Register(test_cmd);
  test_cmd->add_option("--features", test.features,
                       "Features tested jointly (comma list or repeated)")
      ->required()
      ->delimiter(',');
  test_cmd->add_option("--knockoffs", test.knockoffs,
                       "CSV of knockoff columns named like the tested features");

  ImportanceCommand importance;
  CLI::App* imp_cmd =
      app.add_subcommand("importance", "Test each feature on its own, ranked by z-score");
  importance.data.Register(imp_cmd, false);
  importance.forest.Register(imp_cmd);
  imp_cmd->add_option("--features", importance.features,
                      "Features to test (default: all)")
      ->delimiter(',');

  TestCommand overall;
  overall.overall = true;
  CLI::App* overall_cmd =
      app.add_subcommand("overall", "Test whether any feature carries signal");
  overall.data.Register(overall_cmd, false);
  overall.forest.Register(overall_cmd);

  SimulateCommand sim;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Power and size simulations");
  sim_cmd->add_option("--model", sim.model, "model1, model2 or model3")
      ->required()
      ->check(CLI::IsMember({"model1", "model2", "model3"}));
  auto* desk = sim_cmd->add_flag("--desk-scale", "Laptop-sized settings (default)");
  auto* full = sim_cmd->add_flag("--full-scale", sim.full_scale,
                                 "Settings of the original study (slow)");
  desk->excludes(full);
  sim_cmd->add_option("--target", sim.targets, "Target feature, e.g. x1 (repeatable)");
  sim_cmd->add_option("--replicates", sim.replicates, "Replicates per grid point")
      ->check(CLI::PositiveNumber);
  sim_cmd->add_option("--grid", sim.grid, "Parameter grid (comma list)")->delimiter(',');
  sim_cmd->add_option("--sweep", sim.sweep, "Swept parameter")
      ->check(CLI::IsMember({"sigma", "beta"}));
  sim_cmd->add_option("--robustness", sim.robustness, "Sweep an axis at sigma = 4")
      ->check(CLI::IsMember({"trees", "exponent"}));
  sim_cmd->add_option("--axis-values", sim.axis_values,
                      "Robustness axis values (comma list)")
      ->delimiter(',');
  sim_cmd->add_option("--beta", sim.beta, "Signal coefficient");
  sim_cmd->add_option("--sigma", sim.sigma, "Noise sd")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--n", sim.n, "Training rows")->check(CLI::Range(2, 100000000));
  sim_cmd->add_option("--n-test", sim.n_test, "Test rows")->check(CLI::PositiveNumber);
  sim_cmd->add_option("--num-features", sim.num_features, "Model 3 feature count")
      ->check(CLI::Range(5, 100000));
  sim_cmd->add_option("--alpha", sim.alpha, "Rejection level")->capture_default_str();
  sim_cmd->add_option("--strategy", sim.strategy, "Muting strategy")
      ->capture_default_str()
      ->check(CLI::IsMember({"permute", "exclude"}));
  sim.forest.Register(sim_cmd);

  DiagnoseCommand diag;
  CLI::App* diag_cmd =
      app.add_subcommand("diagnose", "Subsample overlap diagnostics for (n, k, B)");
  diag_cmd->add_option("--n", diag.n, "Training rows")->required();
  diag_cmd->add_option("--k", diag.k, "Subsample size")->required();
  diag_cmd->add_option("--B", diag.b, "Trees")->required();
  diag_cmd->add_option("--out", diag.out, "Directory for diagnose.json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*test_cmd) return test.Run();
    if (*imp_cmd) return importance.Run();
    if (*overall_cmd) return overall.Run();
    if (*sim_cmd) return sim.Run();
    return diag.Run();
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\nRun with --help for usage.\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace
}  // namespace rfperm

int main(int argc, char** argv) { return rfperm::Main(argc, argv); }
