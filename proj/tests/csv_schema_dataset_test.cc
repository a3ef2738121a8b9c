// Copyright 2026 The lambdarr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <sstream>

#include "gmock/gmock.h"
#include "gtest/gtest.h"
#include "lambdarr/csv.h"
#include "lambdarr/dataset.h"
#include "lambdarr/schema.h"

namespace lambdarr {
namespace {

using ::testing::ElementsAre;
using ::testing::HasSubstr;

constexpr char kSchemaJson[] = R"({
  "attributes": [
    {"name": "color", "categories": ["red", "green", "blue"]},
    {"name": "note", "categories": ["a,b", "say \"hi\""]},
    {"name": "income", "type": "numeric"}
  ]
})";

TEST(CsvTest, QuotedFieldsAndLineEndings) {
  std::istringstream in(
      "a,b\r\n\"x,1\",\"he said \"\"no\"\"\"\r\n\"multi\nline\",2\n\n");
  auto rows = ReadCsv(in);
  ASSERT_TRUE(rows.ok()) << rows.status();
  ASSERT_EQ(rows->size(), 3u);
  EXPECT_THAT((*rows)[1], ElementsAre("x,1", "he said \"no\""));
  EXPECT_THAT((*rows)[2], ElementsAre("multi\nline", "2"));
}

TEST(CsvTest, UnterminatedQuoteIsAnError) {
  std::istringstream in("a,\"b\n");
  EXPECT_FALSE(ReadCsv(in).ok());
}

TEST(CsvTest, WriteQuotesWhenNeeded) {
  std::ostringstream out;
  const std::vector<std::string> row = {"plain", "a,b", "q\"q", "line\nbreak"};
  WriteCsvRow(out, row);
  EXPECT_EQ(out.str(), "plain,\"a,b\",\"q\"\"q\",\"line\nbreak\"\n");
}

TEST(CsvTest, WrittenRowsReadBack) {
  const std::vector<std::string> row = {"", " padded ", "x\"\"y", "\r\n"};
  std::stringstream ss;
  WriteCsvRow(ss, row);
  auto rows = ReadCsv(ss);
  ASSERT_TRUE(rows.ok());
  ASSERT_EQ(rows->size(), 1u);
  EXPECT_EQ((*rows)[0], row);
}

TEST(CsvTest, ParseDouble) {
  EXPECT_EQ(*ParseDouble(" 1.5 "), 1.5);
  EXPECT_EQ(*ParseDouble("+2e-3"), 2e-3);
  EXPECT_FALSE(ParseDouble("").ok());
  EXPECT_FALSE(ParseDouble("1.5x").ok());
  EXPECT_FALSE(ParseDouble("inf").ok());
  EXPECT_FALSE(ParseDouble("nan").ok());
}

TEST(CsvTest, FormatDoubleRoundTrips) {
  for (double x : {0.1, 1.0 / 3.0, -2.5e-300, 123456789.123456789}) {
    EXPECT_EQ(*ParseDouble(FormatDouble(x)), x);
  }
}

TEST(SchemaTest, FromJson) {
  auto s = Schema::FromJson(kSchemaJson);
  ASSERT_TRUE(s.ok()) << s.status();
  EXPECT_EQ(s->num_attributes(), 3);
  EXPECT_THAT(s->categorical_shape(), ElementsAre(3, 2));
  EXPECT_THAT(s->categorical_names(), ElementsAre("color", "note"));
  EXPECT_THAT(s->numeric_attributes(), ElementsAre(2));
  EXPECT_EQ(*s->CategoryIndex(0, "blue"), 2);
  EXPECT_FALSE(s->CategoryIndex(0, "Blue").ok());
  auto again = Schema::FromJson(s->ToJson());
  ASSERT_TRUE(again.ok());
  EXPECT_EQ(again->ToJson(), s->ToJson());
}

TEST(SchemaTest, NumericLabelsKeepTheirSpelling) {
  auto s = Schema::FromJson(
      R"({"attributes":[{"name":"age","categories":[18, 30, "65+"]}]})");
  ASSERT_TRUE(s.ok());
  EXPECT_THAT(s->attribute(0).categories, ElementsAre("18", "30", "65+"));
}

TEST(SchemaTest, Rejections) {
  EXPECT_FALSE(Schema::FromJson("not json").ok());
  EXPECT_FALSE(Schema::FromJson(R"({"attributes":[]})").ok());
  EXPECT_FALSE(
      Schema::FromJson(R"({"attributes":[{"name":"a","categories":["x"]}]})")
          .ok());
  EXPECT_FALSE(Schema::FromJson(
                   R"({"attributes":[{"name":"a","categories":["x","x"]}]})")
                   .ok());
  EXPECT_FALSE(Schema::FromJson(R"({"attributes":[
      {"name":"a","categories":["x","y"]},
      {"name":"a","categories":["x","y"]}]})")
                   .ok());
  EXPECT_FALSE(Schema::FromJson(
                   R"({"attributes":[{"name":"a","type":"numeric",
                       "categories":["x","y"]}]})")
                   .ok());
  EXPECT_FALSE(
      Schema::FromJson(R"({"attributes":[{"name":"a","type":"ordinal"}]})")
          .ok());
}

TEST(DatasetCsvTest, ReadWriteRoundTrip) {
  auto schema = Schema::FromJson(kSchemaJson);
  std::istringstream in(
      "color,note,income\n"
      "red,\"a,b\",1.25\n"
      "blue,\"say \"\"hi\"\"\",-3\n");
  auto data = ReadDatasetCsv(in, *schema);
  ASSERT_TRUE(data.ok()) << data.status();
  ASSERT_EQ(data->num_rows(), 2u);
  EXPECT_THAT(data->records[0].values, ElementsAre(0, 0));
  EXPECT_THAT(data->records[1].values, ElementsAre(2, 1));
  ASSERT_EQ(data->numeric_columns.size(), 1u);
  EXPECT_THAT(data->numeric_columns[0], ElementsAre(1.25, -3));

  std::stringstream ss;
  WriteDatasetCsv(ss, *data);
  auto back = ReadDatasetCsv(ss, *schema);
  ASSERT_TRUE(back.ok());
  EXPECT_EQ(back->records, data->records);
  EXPECT_EQ(back->numeric_columns, data->numeric_columns);
}

TEST(DatasetCsvTest, ErrorsCarryLineAndColumn) {
  auto schema = Schema::FromJson(kSchemaJson);
  std::istringstream bad_label(
      "color,note,income\nred,\"a,b\",1\npink,\"a,b\",2\n");
  auto r = ReadDatasetCsv(bad_label, *schema);
  ASSERT_FALSE(r.ok());
  EXPECT_THAT(std::string(r.status().message()), HasSubstr("line 3"));
  EXPECT_THAT(std::string(r.status().message()), HasSubstr("'color'"));

  std::istringstream bad_number("color,note,income\nred,\"a,b\",abc\n");
  r = ReadDatasetCsv(bad_number, *schema);
  ASSERT_FALSE(r.ok());
  EXPECT_THAT(std::string(r.status().message()), HasSubstr("'income'"));

  std::istringstream bad_header("colour,note,income\n");
  EXPECT_FALSE(ReadDatasetCsv(bad_header, *schema).ok());
  std::istringstream short_row("color,note,income\nred\n");
  EXPECT_FALSE(ReadDatasetCsv(short_row, *schema).ok());
}

TEST(DatasetTest, ValidateRecords) {
  const std::vector<int> shape = {2, 3};
  EXPECT_TRUE(ValidateRecords({{{0, 2}}, {{1, 0}}}, shape).ok());
  EXPECT_FALSE(ValidateRecords({{{0, 3}}}, shape).ok());
  EXPECT_FALSE(ValidateRecords({{{0}}}, shape).ok());
  EXPECT_FALSE(ValidateRecords({{{-1, 0}}}, shape).ok());
}

}  // namespace
}  // namespace lambdarr
