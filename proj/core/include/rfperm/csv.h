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

#ifndef RFPERM_CSV_H_
#define RFPERM_CSV_H_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "rfperm/dataset.h"

namespace rfperm {

// Typing controls for LoadCsv. Columns not mentioned are auto-typed: numeric
// when every cell parses as a number, categorical otherwise, with levels
// numbered by first appearance.
struct CsvSchema {
  std::string response_column = "y";
  // Force a column's type. Forcing kNumeric on a non-numeric column is a
  // ParseError; forcing kCategorical on a numeric-looking column encodes its
  // cell strings as levels.
  std::map<std::string, FeatureType> type_overrides;
  // Fixed level dictionaries for categorical columns. Cells must be one of
  // the listed labels and are encoded by position. Used to read test or
  // knockoff files with the training set's encoding.
  std::map<std::string, std::vector<std::string>> level_labels;
};

// Schema that reads files with `reference`'s column types and level codes.
CsvSchema SchemaFor(const Dataset& reference);

// Parses an RFC-4180 CSV document (header required, quoted fields allowed,
// LF or CRLF line endings).
std::vector<std::vector<std::string>> ReadCsvRecords(std::istream& in);

Dataset ParseCsv(std::istream& in, const CsvSchema& schema = {});
Dataset LoadCsv(const std::string& path, const CsvSchema& schema = {});

// Features in column order followed by the response column. Categorical
// cells are written as their level labels; numbers use the shortest
// representation that parses back to the same double.
void WriteCsv(const Dataset& d, std::ostream& out);
void WriteCsv(const Dataset& d, const std::string& path);

void WriteCsvRecord(std::ostream& out, const std::vector<std::string>& fields);
std::string FormatDouble(double value);

}  // namespace rfperm

#endif  // RFPERM_CSV_H_
