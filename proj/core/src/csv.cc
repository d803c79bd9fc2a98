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

#include "rfperm/csv.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <iterator>
#include <optional>
#include <ostream>
#include <set>
#include <unordered_map>
#include <utility>

#include "rfperm/errors.h"

namespace rfperm {
namespace {

std::string_view Trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

// Parses the whole token as a double. NaN and infinities parse successfully
// and are rejected later by validation.
std::optional<double> ParseNumber(std::string_view token) {
  token = Trim(token);
  if (token.empty()) return std::nullopt;
  if (token.front() == '+') token.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size()) {
    return std::nullopt;
  }
  return value;
}

bool NeedsQuoting(const std::string& field) {
  return field.find_first_of(",\"\r\n") != std::string::npos ||
         (!field.empty() && (field.front() == ' ' || field.back() == ' '));
}

}  // namespace

CsvSchema SchemaFor(const Dataset& reference) {
  CsvSchema schema;
  schema.response_column = reference.response_name();
  for (std::size_t j = 0; j < reference.cols(); ++j) {
    schema.type_overrides[reference.name(j)] = reference.kind(j).type();
    if (reference.kind(j).is_categorical()) {
      schema.level_labels[reference.name(j)] = reference.level_labels(j);
    }
  }
  return schema;
}

std::vector<std::vector<std::string>> ReadCsvRecords(std::istream& in) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool in_quotes = false;
  bool field_started = false;
  const std::string text((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  std::size_t i = 0;
  // Skip a UTF-8 byte order mark.
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) i = 3;

  auto end_record = [&] {
    record.push_back(std::move(field));
    field.clear();
    field_started = false;
    // A bare empty line is not a record.
    if (!(record.size() == 1 && record[0].empty())) {
      records.push_back(std::move(record));
    }
    record.clear();
  };

  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          in_quotes = false;
        }
      } else {
        field += c;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (field_started && !field.empty()) {
          throw ParseError("unexpected quote inside unquoted field",
                           records.empty() ? 0 : records.size() - 1, "");
        }
        in_quotes = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = false;
        break;
      case '\r':
        if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
        end_record();
        break;
      case '\n':
        end_record();
        break;
      default:
        field += c;
        field_started = true;
    }
  }
  if (in_quotes) {
    throw ParseError("unterminated quoted field",
                     records.empty() ? 0 : records.size() - 1, "");
  }
  if (field_started || !field.empty() || !record.empty()) end_record();
  return records;
}

Dataset ParseCsv(std::istream& in, const CsvSchema& schema) {
  const auto records = ReadCsvRecords(in);
  if (records.empty()) throw SchemaError("CSV has no header row");
  const std::vector<std::string>& header = records.front();
  const std::size_t width = header.size();

  std::set<std::string> seen;
  for (const auto& name : header) {
    if (!seen.insert(name).second) {
      throw SchemaError("duplicate column name '" + name + "'");
    }
  }
  const auto response_it =
      std::find(header.begin(), header.end(), schema.response_column);
  if (response_it == header.end()) {
    throw SchemaError("response column '" + schema.response_column +
                      "' not found in header");
  }
  const auto response_col = static_cast<std::size_t>(response_it - header.begin());
  for (const auto& [name, type] : schema.type_overrides) {
    if (!seen.count(name)) {
      throw SchemaError("type override names unknown column '" + name + "'");
    }
  }
  for (const auto& [name, labels] : schema.level_labels) {
    if (!seen.count(name)) {
      throw SchemaError("level dictionary names unknown column '" + name + "'");
    }
  }

  const std::size_t n = records.size() - 1;
  for (std::size_t r = 0; r < n; ++r) {
    if (records[r + 1].size() != width) {
      throw ParseError("row " + std::to_string(r) + " has " +
                           std::to_string(records[r + 1].size()) +
                           " fields, expected " + std::to_string(width),
                       r, "");
    }
  }
  auto cell = [&](std::size_t r, std::size_t c) -> const std::string& {
    return records[r + 1][c];
  };
  auto check_present = [&](std::size_t r, std::size_t c) {
    if (Trim(cell(r, c)).empty()) {
      throw ValidationError("missing value at row " + std::to_string(r) +
                                ", column '" + header[c] + "'",
                            r, header[c]);
    }
  };
  auto numeric_cell = [&](std::size_t r, std::size_t c) {
    check_present(r, c);
    const auto v = ParseNumber(cell(r, c));
    if (!v) {
      throw ParseError("cannot parse '" + cell(r, c) + "' as a number at row " +
                           std::to_string(r) + ", column '" + header[c] + "'",
                       r, header[c]);
    }
    if (!std::isfinite(*v)) {
      throw ValidationError("non-finite value at row " + std::to_string(r) +
                                ", column '" + header[c] + "'",
                            r, header[c]);
    }
    return *v;
  };

  std::vector<double> y(n);
  for (std::size_t r = 0; r < n; ++r) y[r] = numeric_cell(r, response_col);

  std::vector<std::vector<double>> columns;
  std::vector<FeatureKind> kinds;
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> labels_out;

  for (std::size_t c = 0; c < width; ++c) {
    if (c == response_col) continue;
    const std::string& name = header[c];
    std::optional<FeatureType> type;
    if (auto it = schema.type_overrides.find(name);
        it != schema.type_overrides.end()) {
      type = it->second;
    }
    const auto dict_it = schema.level_labels.find(name);
    if (dict_it != schema.level_labels.end()) {
      if (type == FeatureType::kNumeric) {
        throw SchemaError("column '" + name +
                          "' has a level dictionary but is forced numeric");
      }
      type = FeatureType::kCategorical;
    }
    if (!type) {
      bool numeric = true;
      for (std::size_t r = 0; r < n && numeric; ++r) {
        if (!Trim(cell(r, c)).empty() && !ParseNumber(cell(r, c))) numeric = false;
      }
      type = numeric ? FeatureType::kNumeric : FeatureType::kCategorical;
    }

    std::vector<double> values(n);
    if (*type == FeatureType::kNumeric) {
      for (std::size_t r = 0; r < n; ++r) values[r] = numeric_cell(r, c);
      kinds.push_back(FeatureKind::Numeric());
      labels_out.emplace_back();
    } else {
      std::vector<std::string> labels;
      std::unordered_map<std::string, int> code;
      const bool fixed = dict_it != schema.level_labels.end();
      if (fixed) {
        labels = dict_it->second;
        for (std::size_t l = 0; l < labels.size(); ++l) {
          code.emplace(labels[l], static_cast<int>(l));
        }
      }
      for (std::size_t r = 0; r < n; ++r) {
        check_present(r, c);
        const std::string& s = cell(r, c);
        auto it = code.find(s);
        if (it == code.end()) {
          if (fixed) {
            throw ValidationError("unknown level '" + s + "' at row " +
                                      std::to_string(r) + ", column '" + name +
                                      "'",
                                  r, name);
          }
          it = code.emplace(s, static_cast<int>(labels.size())).first;
          labels.push_back(s);
        }
        values[r] = it->second;
      }
      // A single observed level still needs two declared levels; add an
      // unused placeholder.
      if (labels.size() < 2) labels.push_back(labels.front() + "_other");
      kinds.push_back(FeatureKind::Categorical(static_cast<int>(labels.size())));
      labels_out.push_back(std::move(labels));
    }
    columns.push_back(std::move(values));
    names.push_back(name);
  }
  if (columns.empty()) throw SchemaError("CSV has no feature columns");
  if (n < 1) throw SchemaError("CSV has no data rows");
  return Dataset(std::move(columns), std::move(y), std::move(kinds),
                 std::move(names), std::move(labels_out), schema.response_column);
}

Dataset LoadCsv(const std::string& path, const CsvSchema& schema) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  return ParseCsv(in, schema);
}

std::string FormatDouble(double value) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  return std::string(buf, ptr);
}

void WriteCsvRecord(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    const std::string& f = fields[i];
    if (NeedsQuoting(f)) {
      out << '"';
      for (char c : f) {
        if (c == '"') out << '"';
        out << c;
      }
      out << '"';
    } else {
      out << f;
    }
  }
  out << '\n';
}

void WriteCsv(const Dataset& d, std::ostream& out) {
  std::vector<std::string> fields = d.names();
  fields.push_back(d.response_name());
  WriteCsvRecord(out, fields);
  for (std::size_t i = 0; i < d.rows(); ++i) {
    for (std::size_t j = 0; j < d.cols(); ++j) {
      const double v = d.at(i, j);
      fields[j] = d.kind(j).is_categorical()
                      ? d.level_labels(j)[static_cast<std::size_t>(v)]
                      : FormatDouble(v);
    }
    fields[d.cols()] = FormatDouble(d.response()[i]);
    WriteCsvRecord(out, fields);
  }
}

void WriteCsv(const Dataset& d, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  WriteCsv(d, out);
  if (!out) throw IoError("write to '" + path + "' failed");
}

}  // namespace rfperm
