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

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace levyscale::cli {

enum ExitCode : int {
  kSuccess = 0,
  kAssertionFailure = 1,
  kInvalidInput = 2,
  kIoError = 3,
};

/// Fully parsed command line. Flags override the config file, which overrides
/// the defaults below.
struct RunConfig {
  std::string subcommand;
  double alpha = 1.5;
  double sigma = 1.0;
  double gamma = 0.0;
  std::size_t horizon = 0;        ///< 0 selects the subcommand default
  std::uint64_t multiplier = 0;   ///< 0 selects the subcommand default
  std::vector<double> qs;
  std::vector<std::size_t> taus;
  std::uint64_t seed = 0;
  std::size_t replicas = 0;  ///< 0 selects the subcommand default
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::optional<std::string> grid_path;
  bool input_is_levels = false;
  std::string format = "csv";
  int threads = 0;
  std::string mode;
  std::string norming = "auto";
  std::vector<std::uint64_t> ladder;
  std::optional<double> p_exponent;
  double tolerance = 0.15;
  double fraction = 0.05;
  std::size_t vectors = 0;
};

/// Parses argv and runs the subcommand. Tables go to --output or `out`;
/// warnings and errors go to `err`. Returns an ExitCode.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace levyscale::cli
