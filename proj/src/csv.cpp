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

#include "levyscale/csv.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "levyscale/error.hpp"

namespace levyscale::csv {

std::string format_double(double x) {
  char buf[32];
  const int len = std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf, static_cast<std::size_t>(len));
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

bool parse_number(std::string_view s, double& out) {
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

}  // namespace

SeriesFile parse_series(std::istream& in) {
  SeriesFile file;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      file.comments.emplace_back(trim(body.substr(1)));
      continue;
    }
    // Only the first column of a multi-column row is read.
    const auto cell = trim(body.substr(0, body.find(',')));
    double value = 0.0;
    if (!parse_number(cell, value)) {
      throw Error(ErrorCode::IoError,
                  "line " + std::to_string(lineno) + ": not a number: '" + std::string(cell) + "'");
    }
    file.values.push_back(value);
  }
  return file;
}

SeriesFile read_series(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open " + path);
  return parse_series(in);
}

void write_series(std::ostream& out, const std::vector<std::string>& comments,
                  const std::vector<double>& values) {
  for (const auto& c : comments) out << "# " << c << '\n';
  for (double v : values) out << format_double(v) << '\n';
}

std::vector<double> difference(const std::vector<double>& levels) {
  if (levels.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "need at least two levels to difference");
  }
  std::vector<double> out(levels.size() - 1);
  for (std::size_t i = 1; i < levels.size(); ++i) out[i - 1] = levels[i] - levels[i - 1];
  return out;
}

void Table::add_row(std::vector<std::string> cells) {
  if (cells.size() != columns_.size()) {
    throw Error(ErrorCode::InvalidArgument, "row width does not match the header");
  }
  rows_.push_back(std::move(cells));
}

void Table::write_csv(std::ostream& out) const {
  for (const auto& c : comments_) out << "# " << c << '\n';
  for (std::size_t i = 0; i < columns_.size(); ++i) out << (i ? "," : "") << columns_[i];
  out << '\n';
  for (const auto& row : rows_) {
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
    out << '\n';
  }
}

void Table::write_json(std::ostream& out) const {
  nlohmann::ordered_json doc;
  doc["comments"] = comments_;
  auto rows = nlohmann::ordered_json::array();
  for (const auto& row : rows_) {
    nlohmann::ordered_json obj;
    for (std::size_t i = 0; i < row.size(); ++i) {
      double value = 0.0;
      if (parse_number(row[i], value)) {
        obj[columns_[i]] = value;
      } else {
        obj[columns_[i]] = row[i];
      }
    }
    rows.push_back(std::move(obj));
  }
  doc["rows"] = std::move(rows);
  out << doc.dump(2) << '\n';
}

}  // namespace levyscale::csv
