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

#include <cmath>
#include <sstream>

#include "gtest/gtest.h"
#include "rfperm/errors.h"
#include "rfperm/rng.h"

namespace rfperm {
namespace {

Dataset Parse(const std::string& text, const CsvSchema& schema = {}) {
  std::istringstream in(text);
  return ParseCsv(in, schema);
}

std::string Write(const Dataset& d) {
  std::ostringstream out;
  WriteCsv(d, out);
  return out.str();
}

TEST(CsvTest, ReadsNumericColumns) {
  const Dataset d = Parse("x1,y\n1.0,0\n2.0,1\n3.0,0\n");
  EXPECT_EQ(d.rows(), 3u);
  EXPECT_EQ(d.cols(), 1u);
  EXPECT_EQ(d.kind(0), FeatureKind::Numeric());
  EXPECT_EQ(d.at(2, 0), 3.0);
  EXPECT_EQ(d.response_name(), "y");
}

TEST(CsvTest, StringColumnsEncodeByFirstAppearance) {
  const Dataset d = Parse("c,y\na,1\nb,2\na,3\n");
  EXPECT_EQ(d.kind(0), FeatureKind::Categorical(2));
  EXPECT_EQ(d.at(0, 0), 0.0);
  EXPECT_EQ(d.at(1, 0), 1.0);
  EXPECT_EQ(d.at(2, 0), 0.0);
  EXPECT_EQ(d.level_labels(0), (std::vector<std::string>{"a", "b"}));
}

TEST(CsvTest, NanCellNamesRowAndColumn) {
  try {
    Parse("x1,x2,y\n1,2,3\n4,NaN,6\n");
    FAIL() << "expected ValidationError";
  } catch (const ValidationError& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.column(), "x2");
    EXPECT_NE(std::string(e.what()).find("x2"), std::string::npos);
  }
}

TEST(CsvTest, MissingCellIsRejected) {
  EXPECT_THROW(Parse("x1,y\n1,2\n,3\n"), ValidationError);
}

TEST(CsvTest, MissingResponseIsSchemaError) {
  EXPECT_THROW(Parse("x1,x2\n1,2\n"), SchemaError);
  CsvSchema schema;
  schema.response_column = "target";
  EXPECT_EQ(Parse("target,x1\n1,2\n", schema).cols(), 1u);
}

TEST(CsvTest, ForcedNumericOnTextIsParseError) {
  CsvSchema schema;
  schema.type_overrides["c"] = FeatureType::kNumeric;
  try {
    Parse("c,y\n1,1\nabc,2\n", schema);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 1u);
    EXPECT_EQ(e.column(), "c");
  }
}

TEST(CsvTest, ForcedCategoricalOnNumbers) {
  CsvSchema schema;
  schema.type_overrides["c"] = FeatureType::kCategorical;
  const Dataset d = Parse("c,y\n3,1\n1,2\n3,3\n", schema);
  EXPECT_EQ(d.kind(0), FeatureKind::Categorical(2));
  EXPECT_EQ(d.level_labels(0), (std::vector<std::string>{"3", "1"}));
}

TEST(CsvTest, LevelDictionaryFixesEncoding) {
  CsvSchema schema;
  schema.level_labels["c"] = {"lo", "mid", "hi"};
  const Dataset d = Parse("c,y\nhi,1\nlo,2\n", schema);
  EXPECT_EQ(d.kind(0), FeatureKind::Categorical(3));
  EXPECT_EQ(d.at(0, 0), 2.0);
  EXPECT_EQ(d.at(1, 0), 0.0);
  EXPECT_THROW(Parse("c,y\nhuge,1\n", schema), ValidationError);
}

TEST(CsvTest, QuotedFieldsAndCrlf) {
  const Dataset d = Parse("\"name, with comma\",y\r\n\"a \"\"q\"\"\",1\r\nb,2\r\n");
  EXPECT_EQ(d.name(0), "name, with comma");
  EXPECT_EQ(d.level_labels(0)[0], "a \"q\"");
  const Dataset again = Parse(Write(d));
  EXPECT_EQ(again, d);
}

TEST(CsvTest, RaggedRowIsParseError) {
  EXPECT_THROW(Parse("x1,y\n1,2,3\n"), ParseError);
}

TEST(CsvTest, SchemaForReproducesEncoding) {
  const Dataset train = Parse("c,x,y\nb,1,1\na,2,2\n");
  const Dataset test = Parse("c,x,y\na,5,0\n", SchemaFor(train));
  EXPECT_EQ(test.kinds(), train.kinds());
  EXPECT_EQ(test.at(0, 0), 1.0);
}

Dataset RandomDataset(Rng& rng) {
  const std::size_t n = 1 + rng.Below(20);
  const std::size_t p = 1 + rng.Below(4);
  std::vector<std::vector<double>> cols(p, std::vector<double>(n));
  std::vector<FeatureKind> kinds;
  for (std::size_t j = 0; j < p; ++j) {
    if (rng.Below(2) == 0) {
      const int levels = 2 + static_cast<int>(rng.Below(4));
      kinds.push_back(FeatureKind::Categorical(levels));
      for (auto& v : cols[j]) v = static_cast<double>(rng.Below(levels));
    } else {
      kinds.push_back(FeatureKind::Numeric());
      for (auto& v : cols[j]) v = (rng.Uniform() - 0.5) * std::pow(10.0, rng.Below(12) - 6.0);
    }
  }
  std::vector<double> y(n);
  for (auto& v : y) v = rng.Normal() * 1e3;
  return Dataset(std::move(cols), std::move(y), std::move(kinds));
}

// Loading assigns level codes by first appearance, so the round trip is the
// identity on datasets that came out of LoadCsv.
TEST(CsvPropertyTest, LoadWriteRoundTrip) {
  Rng rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    const Dataset original = RandomDataset(rng);
    const Dataset loaded = Parse(Write(original));
    ASSERT_EQ(loaded.rows(), original.rows());
    for (std::size_t j = 0; j < original.cols(); ++j) {
      for (std::size_t i = 0; i < original.rows(); ++i) {
        if (original.kind(j).is_categorical()) {
          ASSERT_EQ(loaded.level_labels(j)[static_cast<std::size_t>(loaded.at(i, j))],
                    original.level_labels(j)[static_cast<std::size_t>(original.at(i, j))]);
        } else {
          ASSERT_EQ(loaded.at(i, j), original.at(i, j));
        }
      }
    }
    ASSERT_EQ(Parse(Write(loaded)), loaded) << "trial " << trial;
  }
}

TEST(CsvTest, FormatDoubleRoundTrips) {
  Rng rng(8);
  for (int i = 0; i < 1000; ++i) {
    const double v = rng.Normal() * std::pow(10.0, rng.Below(40) - 20.0);
    EXPECT_EQ(std::stod(FormatDouble(v)), v);
  }
}

}  // namespace
}  // namespace rfperm
