// Copyright 2026 The levyscale Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace levyscale::csv {

// Series files: '#'-prefixed comment lines, then one number per line.
// Tables: comment lines, a header row, then comma-separated rows. Numbers are
// written with 17 significant digits so they parse back bit-exactly.

std::string format_double(double x);

struct SeriesFile {
  std::vector<std::string> comments;  ///< without the leading '#'
  std::vector<double> values;
};

SeriesFile parse_series(std::istream& in);
/// Throws Error{IoError} when the file cannot be opened or a row is not a number.
SeriesFile read_series(const std::string& path);

void write_series(std::ostream& out, const std::vector<std::string>& comments,
                  const std::vector<double>& values);

/// First differences of recorded levels.
std::vector<double> difference(const std::vector<double>& levels);

class Table {
 public:
  explicit Table(std::vector<std::string> columns) : columns_(std::move(columns)) {}

  void add_comment(std::string line) { comments_.push_back(std::move(line)); }
  /// Cells are pre-formatted strings; size must match the column count.
  void add_row(std::vector<std::string> cells);

  const std::vector<std::string>& columns() const noexcept { return columns_; }
  const std::vector<std::vector<std::string>>& rows() const noexcept { return rows_; }

  void write_csv(std::ostream& out) const;
  /// {"comments": [...], "rows": [{column: value, ...}, ...]}; numeric cells
  /// are emitted as JSON numbers.
  void write_json(std::ostream& out) const;

 private:
  std::vector<std::string> columns_;
  std::vector<std::string> comments_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace levyscale::csv
