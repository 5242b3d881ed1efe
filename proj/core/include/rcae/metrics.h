// Copyright 2026 The RCAE Authors
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

// Metric tables and their CSV form (RFC 4180 quoting, header row, 17
// significant digits for floating-point cells).

#ifndef RCAE_METRICS_H_
#define RCAE_METRICS_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <variant>
#include <vector>

namespace rcae {

using MetricValue = std::variant<double, std::int64_t, std::string>;

class MetricTable {
 public:
  MetricTable() = default;
  explicit MetricTable(std::vector<std::string> columns);

  const std::vector<std::string>& columns() const { return columns_; }
  const std::vector<std::vector<MetricValue>>& rows() const { return rows_; }
  std::size_t num_rows() const { return rows_.size(); }

  // Throws kInvalidSpec if the row width differs from the column count.
  void AddRow(std::vector<MetricValue> row);

 private:
  std::vector<std::string> columns_;
  std::vector<std::vector<MetricValue>> rows_;
};

std::string FormatCsv(const MetricTable& table);
void ExportMetrics(const MetricTable& table, const std::filesystem::path& path);

// Parses CSV text into rows of raw cell strings (header included).
std::vector<std::vector<std::string>> ParseCsv(const std::string& text);

std::string FormatDouble(double v);

}  // namespace rcae

#endif  // RCAE_METRICS_H_
