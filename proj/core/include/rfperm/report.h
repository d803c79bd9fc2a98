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

#ifndef RFPERM_REPORT_H_
#define RFPERM_REPORT_H_

#include <iosfwd>
#include <span>
#include <string>

#include "rfperm/forest.h"
#include "rfperm/normality.h"
#include "rfperm/permtest.h"
#include "rfperm/simbench.h"

namespace rfperm {

// Version of the JSON layout written by the functions below.
inline constexpr int kReportSchemaVersion = 1;

// Number formatting shared by JSON reports and console summaries, so every
// printed value appears verbatim in the JSON. Non-finite values render as
// null.
std::string FormatJsonNumber(double value);

// {"schema_version", "kind": "test", "feature", "delta_observed", "p_value",
//  "z_score", "n_perm", "mse_original", "mse_muted", "degenerate",
//  "diagnostics": {...}, "config": {...}, "warnings": [...]}
std::string PermTestReportJson(const PermTestResult& result,
                               const std::string& feature_label);

// {"schema_version", "kind": "importance", "features": [<entry>...],
//  "warnings"}; entries keep the report's z-score order.
std::string ImportanceReportJson(const ImportanceReport& report);

std::string DiagnosticsReportJson(std::size_t n, std::size_t k,
                                  std::size_t num_trees,
                                  const SubsampleDiagnostics& diagnostics);

std::string NormalityJson(const NormalitySummary& summary);

// Full configuration and seeds of a simulation, plus the curve files written.
std::string SimulationManifestJson(const SimConfig& cfg,
                                   std::span<const std::string> curve_files,
                                   const std::string& extra_key = "",
                                   const std::string& extra_value_json = "");

// One line: feature=<label> p_value=<p> z_score=<z>
std::string SummaryLine(const std::string& feature_label,
                        const PermTestResult& result);

// Single column "delta" with one permutation delta per row.
void WriteDeltasCsv(std::span<const double> deltas, std::ostream& out);

// Columns: grid_value,target,rejections,replicates,rejection_rate,mean_p,mean_z
void WritePowerCurveCsv(const PowerCurve& curve, std::ostream& out);

}  // namespace rfperm

#endif  // RFPERM_REPORT_H_
