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

#include "rfperm/report.h"

#include <cmath>
#include <ostream>

#include "json.hpp"
#include "rfperm/csv.h"

namespace rfperm {
namespace {

using nlohmann::ordered_json;

ordered_json Number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

ordered_json DiagnosticsObject(const SubsampleDiagnostics& d) {
  return ordered_json{{"pair_disjoint_prob", Number(d.pair_disjoint_prob)},
                      {"lemma1_log_term", Number(d.lemma1_log_term)},
                      {"warning", d.warning}};
}

ordered_json ResultObject(const PermTestResult& r, const std::string& label) {
  ordered_json out;
  out["feature"] = label;
  out["delta_observed"] = Number(r.delta_observed);
  out["p_value"] = Number(r.p_value);
  out["z_score"] = Number(r.z_score);
  out["n_perm"] = r.num_permutations;
  out["mse_original"] = Number(r.mse_original);
  out["mse_muted"] = Number(r.mse_muted);
  out["degenerate"] = r.degenerate;
  out["diagnostics"] = DiagnosticsObject(r.diagnostics);
  out["config"] = ordered_json{{"strategy", r.strategy},
                               {"train_rows", r.train_rows},
                               {"test_rows", r.test_rows},
                               {"b_trees", r.num_trees},
                               {"subsample_size", r.subsample_size},
                               {"mtry", r.mtry},
                               {"forest_seed", r.forest_seed},
                               {"permutation_seed", r.permutation_seed}};
  out["warnings"] = r.warnings;
  return out;
}

std::string ModelName(ModelKind kind) {
  SimModel m;
  m.kind = kind;
  return m.Name();
}

}  // namespace

std::string FormatJsonNumber(double value) { return Number(value).dump(); }

std::string PermTestReportJson(const PermTestResult& result,
                               const std::string& feature_label) {
  ordered_json out;
  out["schema_version"] = kReportSchemaVersion;
  out["kind"] = "test";
  const ordered_json body = ResultObject(result, feature_label);
  for (const auto& [key, value] : body.items()) {
    out[key] = value;
  }
  return out.dump(2) + "\n";
}

std::string ImportanceReportJson(const ImportanceReport& report) {
  ordered_json out;
  out["schema_version"] = kReportSchemaVersion;
  out["kind"] = "importance";
  ordered_json features = ordered_json::array();
  for (const auto& entry : report.entries) {
    features.push_back(ResultObject(entry.result, entry.label));
  }
  out["features"] = std::move(features);
  out["warnings"] = report.warnings;
  return out.dump(2) + "\n";
}

std::string DiagnosticsReportJson(std::size_t n, std::size_t k,
                                  std::size_t num_trees,
                                  const SubsampleDiagnostics& diagnostics) {
  ordered_json out;
  out["schema_version"] = kReportSchemaVersion;
  out["kind"] = "diagnose";
  out["n"] = n;
  out["k"] = k;
  out["b_trees"] = num_trees;
  const ordered_json body = DiagnosticsObject(diagnostics);
  for (const auto& [key, value] : body.items()) {
    out[key] = value;
  }
  return out.dump(2) + "\n";
}

std::string NormalityJson(const NormalitySummary& s) {
  ordered_json out{{"count", s.count},
                   {"mean", Number(s.mean)},
                   {"sd", Number(s.sd)},
                   {"skewness", Number(s.skewness)},
                   {"excess_kurtosis", Number(s.excess_kurtosis)},
                   {"ks_distance", Number(s.ks_distance)},
                   {"degenerate", s.degenerate}};
  return out.dump();
}

std::string SimulationManifestJson(const SimConfig& cfg,
                                   std::span<const std::string> curve_files,
                                   const std::string& extra_key,
                                   const std::string& extra_value_json) {
  ordered_json targets = ordered_json::array();
  for (const auto& t : cfg.targets) targets.push_back(t.indices());
  ordered_json out;
  out["schema_version"] = kReportSchemaVersion;
  out["kind"] = "simulate";
  out["model"] = ordered_json{{"name", ModelName(cfg.model.kind)},
                              {"beta", cfg.model.beta},
                              {"sigma", cfg.model.sigma},
                              {"num_features", cfg.model.num_features}};
  out["n"] = cfg.n;
  out["n_test"] = cfg.n_test;
  out["replicates"] = cfg.replicates;
  out["alpha"] = cfg.alpha;
  out["sweep"] = cfg.sweep == SweepParameter::kSigma ? "sigma" : "beta";
  out["grid"] = cfg.grid;
  out["targets"] = std::move(targets);
  out["strategy"] = cfg.exclude_features ? "exclude" : "permute";
  ordered_json forest{{"b_trees", cfg.forest.num_trees},
                      {"subsample_exponent", cfg.forest.subsample_exponent},
                      {"mtry", cfg.forest.tree.mtry},
                      {"min_node_size", cfg.forest.tree.min_node_size},
                      {"min_split_fraction", cfg.forest.tree.min_split_fraction}};
  if (cfg.forest.subsample_size) forest["subsample_size"] = *cfg.forest.subsample_size;
  if (cfg.forest.tree.max_depth) forest["max_depth"] = *cfg.forest.tree.max_depth;
  out["forest"] = std::move(forest);
  out["n_perm"] = cfg.perm.num_permutations;
  out["seed"] = cfg.seed;
  out["seed_derivation"] =
      "replicate seed = DeriveSeed(DeriveSeed(seed, grid_index), replicate); "
      "train data stream 0, test data stream 1, forest 2, permutations 3, "
      "row permutation 4";
  out["curve_files"] = std::vector<std::string>(curve_files.begin(), curve_files.end());
  if (!extra_key.empty()) out[extra_key] = ordered_json::parse(extra_value_json);
  return out.dump(2) + "\n";
}

std::string SummaryLine(const std::string& feature_label,
                        const PermTestResult& result) {
  return "feature=" + feature_label + " p_value=" + FormatJsonNumber(result.p_value) +
         " z_score=" + FormatJsonNumber(result.z_score);
}

void WriteDeltasCsv(std::span<const double> deltas, std::ostream& out) {
  out << "delta\n";
  for (double d : deltas) out << FormatDouble(d) << '\n';
}

void WritePowerCurveCsv(const PowerCurve& curve, std::ostream& out) {
  WriteCsvRecord(out, {"grid_value", "target", "rejections", "replicates",
                       "rejection_rate", "mean_p", "mean_z"});
  for (const auto& p : curve.points) {
    WriteCsvRecord(out, {FormatDouble(p.parameter), p.target,
                         std::to_string(p.rejections), std::to_string(p.replicates),
                         FormatDouble(p.rejection_rate), FormatDouble(p.mean_p_value),
                         FormatDouble(p.mean_z_score)});
  }
}

}  // namespace rfperm
