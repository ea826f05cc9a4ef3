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
#include <doctest.h>

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "levyscale/csv.hpp"
#include "levyscale/moments.hpp"

using namespace levyscale;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string tmp(const std::string& name) { return std::string(LEVYSCALE_TEST_TMP) + "/" + name; }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

// Data rows of a CSV table, header and comments dropped.
std::vector<std::vector<std::string>> rows(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  bool header = true;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    if (header) {
      header = false;
      continue;
    }
    std::vector<std::string> cells;
    std::stringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    out.push_back(cells);
  }
  return out;
}

}  // namespace

TEST_CASE("simulate") {
  const auto a = tmp("sim_a.csv"), b = tmp("sim_b.csv");
  REQUIRE(run({"simulate", "--horizon", "10", "--seed", "5", "--output", a}).code == 0);
  REQUIRE(run({"simulate", "--horizon", "10", "--seed", "5", "--output", b}).code == 0);
  const auto text = slurp(a);
  CHECK(text == slurp(b));
  CHECK(text.find("alpha=1.5 sigma=1 gamma=0 seed=5") != std::string::npos);
  CHECK(csv::read_series(a).values.size() == 2520);
}

TEST_CASE("exit codes") {
  const auto bad = run({"simulate", "--alpha", "0.5", "--gamma", "-1.2"});
  CHECK(bad.code == cli::kInvalidInput);
  CHECK(bad.err.find("gamma") != std::string::npos);
  CHECK(run({"simulate", "--bogus"}).code == cli::kInvalidInput);
  CHECK(run({}).code == cli::kInvalidInput);
  CHECK(run({"--help"}).code == cli::kSuccess);
  CHECK(run({"scaling", "--input", tmp("missing.csv")}).code == cli::kIoError);
  CHECK(run({"simulate", "--output", "/nonexistent/dir/x.csv"}).code == cli::kIoError);
  CHECK(run({"simulate", "--format", "xml"}).code == cli::kInvalidInput);
}

TEST_CASE("scaling re-ingests simulate output bit-exactly") {
  const auto series = tmp("round.csv"), grid_file = tmp("round_grid.csv");
  REQUIRE(run({"simulate", "--alpha", "1.2", "--horizon", "6", "--multiplier", "50", "--seed",
               "2", "--output", series})
              .code == 0);
  REQUIRE(run({"scaling", "--alpha", "1.2", "--horizon", "6", "--q", "0.5,1,2", "--input",
               series, "--output", tmp("round_fit.csv"), "--grid-output", grid_file})
              .code == 0);
  const auto s = generate_increments(validate_params(1.2, 1.0, 0.0), 3000, 2);
  const std::vector<double> qs{0.5, 1.0, 2.0};
  const auto grid = moment_grid(s, qs, HorizonScheme(6, 50));
  const auto table = rows(slurp(grid_file));
  REQUIRE(table.size() == 18);
  for (std::size_t iq = 0; iq < 3; ++iq) {
    for (std::size_t it = 0; it < 6; ++it) {
      CHECK(std::stod(table[iq * 6 + it][2]) == grid.values[iq][it]);
    }
  }
}

TEST_CASE("scaling on levels and with truncation") {
  const auto series = tmp("levels.csv");
  auto s = generate_increments(validate_params(1.5, 1.0, 0.0), 2530, 1);
  {
    std::ofstream out(series);
    csv::write_series(out, {"levels"}, levels(s));
  }
  const auto r = run({"scaling", "--levels", "--q", "0,1", "--input", series});
  CHECK(r.code == 0);
  CHECK(r.err.find("TruncationWarning") != std::string::npos);
  const auto t = rows(r.out);
  REQUIRE(t.size() == 2);
  CHECK(t[0][1] == "0");
  CHECK(t[1][4] == csv::format_double(2.0 / 3.0));
}

TEST_CASE("scaling recovers the piecewise exponents") {
  const auto r = run({"scaling", "--alpha", "1.5", "--horizon", "10", "--multiplier", "400",
                      "--q", "0.5,1,2,3"});
  REQUIRE(r.code == 0);
  const auto t = rows(r.out);
  REQUIRE(t.size() == 4);
  const double expected[] = {1.0 / 3.0, 2.0 / 3.0, 1.0, 1.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(std::stod(t[i][1]) - expected[i]) < 0.07);
  CHECK(t[2][5] == "NA");
}

TEST_CASE("scaling on external gaussian increments") {
  const auto series = tmp("gauss.csv");
  {
    const auto g = generate_increments(validate_params(2.0, 1.0, 0.0), 252000, 9);
    std::ofstream out(series);
    csv::write_series(out, {}, g.values);
  }
  const auto r = run({"scaling", "--alpha", "2", "--q", "0.5,1,2,3", "--input", series});
  REQUIRE(r.code == 0);
  const auto t = rows(r.out);
  const double qs[] = {0.5, 1.0, 2.0, 3.0};
  for (int i = 0; i < 4; ++i) CHECK(std::abs(std::stod(t[i][1]) - qs[i] / 2.0) < 0.07);
}

TEST_CASE("json output and config file") {
  const auto conf = tmp("run.toml");
  {
    std::ofstream out(conf);
    out << "alpha = 1.2\nseed = 4\nhorizon = 4\n";
  }
  const auto r = run({"simulate", "--config", conf, "--seed", "6"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("alpha=1.2 sigma=1 gamma=0 seed=6") != std::string::npos);
  std::istringstream sim(r.out);
  CHECK(csv::parse_series(sim).values.size() == 12);

  const auto j = run({"scaling", "--horizon", "4", "--multiplier", "10", "--q", "1", "--format",
                      "json"});
  REQUIRE(j.code == 0);
  CHECK(j.out.find("\"nu_hat\":") != std::string::npos);
}

TEST_CASE("threads do not change results") {
  const auto a = run({"ratio", "--replicas", "8", "--ladder", "1,4", "--threads", "1",
                      "--tolerance", "10"});
  const auto b = run({"ratio", "--replicas", "8", "--ladder", "1,4", "--threads", "4",
                      "--tolerance", "10"});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
}

TEST_CASE("extremes lemma sweep") {
  const auto r = run({"extremes", "--vectors", "200"});
  CHECK(r.code == 0);
  const auto t = rows(r.out);
  REQUIRE(t.size() == 12);
  for (const auto& row : t) CHECK(row[3] == "0");
}

TEST_CASE("extremes rn and tails") {
  CHECK(run({"extremes", "--mode", "rn", "--replicas", "8", "--ladder", "1,40"}).code == 0);
  const auto tails = run({"tails", "--alpha", "0.7", "--multiplier", "100"});
  CHECK(tails.code == 0);
  CHECK(tails.out.find("hill_exponent") != std::string::npos);
}

TEST_CASE("ratio assertion failure exits 1") {
  const auto r = run({"ratio", "--replicas", "4", "--ladder", "1,2", "--tolerance", "0"});
  CHECK(r.code == cli::kAssertionFailure);
}

TEST_CASE("limits modes") {
  const auto inv = run({"limits", "--replicas", "100", "--multiplier", "200"});
  CHECK(inv.code == 0);
  CHECK(rows(inv.out).size() == 1);
  const auto eq = run({"limits", "--mode", "equality", "--q", "1", "--replicas", "100",
                       "--multiplier", "200"});
  CHECK(eq.code == 0);
  const auto div = run({"limits", "--mode", "divergence", "--q", "3", "--p", "3", "--replicas",
                        "10", "--ladder", "4,400"});
  CHECK(div.code == 0);
  CHECK(div.out.find("verdict=converges") != std::string::npos);
  CHECK(run({"limits", "--mode", "nope"}).code == cli::kInvalidInput);
}
