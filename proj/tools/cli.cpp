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

#include "cli.hpp"

#include <omp.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "levyscale/csv.hpp"
#include "levyscale/error.hpp"
#include "levyscale/extremes.hpp"
#include "levyscale/limits.hpp"

namespace levyscale::cli {
namespace {

using csv::format_double;

// Thrown by a subcommand whose enabled assertions did not all pass; the
// report has already been written.
struct AssertionFailed {
  std::string what;
};

template <typename T>
std::string join(const std::vector<T>& xs) {
  std::ostringstream os;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    os << (i ? "," : "");
    if constexpr (std::is_floating_point_v<T>) {
      os << format_double(xs[i]);
    } else {
      os << xs[i];
    }
  }
  return os.str();
}

std::size_t or_default(std::size_t v, std::size_t d) { return v ? v : d; }

template <typename T>
std::vector<T> or_default(const std::vector<T>& v, std::vector<T> d) {
  return v.empty() ? std::move(d) : v;
}

std::vector<std::string> echo(const RunConfig& cfg) {
  std::vector<std::string> lines{"levyscale " + cfg.subcommand};
  lines.push_back("alpha=" + format_double(cfg.alpha) + " sigma=" + format_double(cfg.sigma) +
                  " gamma=" + format_double(cfg.gamma) + " seed=" + std::to_string(cfg.seed));
  std::string run = "horizon=" + std::to_string(cfg.horizon) +
                    " multiplier=" + std::to_string(cfg.multiplier);
  if (!cfg.qs.empty()) run += " q=" + join(cfg.qs);
  if (!cfg.taus.empty()) run += " tau=" + join(cfg.taus);
  if (cfg.replicas) run += " replicas=" + std::to_string(cfg.replicas);
  if (!cfg.mode.empty()) run += " mode=" + cfg.mode;
  lines.push_back(run);
  if (cfg.input_path) {
    lines.push_back("input=" + *cfg.input_path + (cfg.input_is_levels ? " (levels)" : ""));
  }
  return lines;
}

void emit(const csv::Table& table, const RunConfig& cfg, const std::optional<std::string>& path,
          std::ostream& out) {
  std::ofstream file;
  std::ostream* dest = &out;
  if (path) {
    file.open(*path);
    if (!file) throw Error(ErrorCode::IoError, "cannot write " + *path);
    dest = &file;
  }
  if (cfg.format == "json") {
    table.write_json(*dest);
  } else {
    table.write_csv(*dest);
  }
  if (!*dest) throw Error(ErrorCode::IoError, "write failed");
}

csv::Table make_table(std::vector<std::string> columns, const RunConfig& cfg) {
  csv::Table t(std::move(columns));
  for (auto& line : echo(cfg)) t.add_comment(std::move(line));
  return t;
}

// Unit increments from --input (differenced when --levels) or a fresh path
// of length multiplier * lcm(1..horizon).
std::vector<double> load_or_simulate(const RunConfig& cfg, const StableParams& p) {
  if (cfg.input_path) {
    auto values = csv::read_series(*cfg.input_path).values;
    return cfg.input_is_levels ? csv::difference(values) : values;
  }
  const HorizonScheme scheme(cfg.horizon, cfg.multiplier);
  return generate_increments(p, scheme.n(), cfg.seed).values;
}

int cmd_simulate(RunConfig& cfg, const StableParams& p, std::ostream& out) {
  cfg.horizon = or_default(cfg.horizon, 10);
  cfg.multiplier = or_default(cfg.multiplier, 1);
  const HorizonScheme scheme(cfg.horizon, cfg.multiplier);
  const auto s = generate_increments(p, scheme.n(), cfg.seed);
  auto comments = echo(cfg);
  comments.push_back("n=" + std::to_string(s.size()));
  std::ofstream file;
  std::ostream* dest = &out;
  if (cfg.output_path) {
    file.open(*cfg.output_path);
    if (!file) throw Error(ErrorCode::IoError, "cannot write " + *cfg.output_path);
    dest = &file;
  }
  csv::write_series(*dest, comments, s.values);
  if (!*dest) throw Error(ErrorCode::IoError, "write failed");
  return kSuccess;
}

int cmd_scaling(RunConfig& cfg, const StableParams& p, std::ostream& out, std::ostream& err) {
  cfg.horizon = or_default(cfg.horizon, 10);
  cfg.multiplier = or_default(cfg.multiplier, 1);
  cfg.qs = or_default(cfg.qs, default_q_grid(p.alpha()));
  auto values = load_or_simulate(cfg, p);
  const std::uint64_t lcm = lcm_first(cfg.horizon);
  const std::size_t n = values.size() / lcm * lcm;
  if (n == 0) {
    throw Error(ErrorCode::InvalidArgument, "series of length " + std::to_string(values.size()) +
                                                " is shorter than lcm(1.." +
                                                std::to_string(cfg.horizon) + ")");
  }
  if (n != values.size()) {
    err << "warning: TruncationWarning: length " << values.size()
        << " is not a multiple of lcm(1.." << cfg.horizon << ") = " << lcm << "; using the first "
        << n << " values\n";
    values.resize(n);
  }
  const HorizonScheme scheme(cfg.horizon, n / lcm);
  const IncrementSeries s{p, 1, cfg.seed, std::move(values)};
  const auto grid = moment_grid(s, cfg.qs, scheme);

  auto fits = make_table({"q", "nu_hat", "stderr", "r2", "empirical_nu", "theoretical_nu"}, cfg);
  fits.add_comment("n=" + std::to_string(grid.n));
  for (double q : cfg.qs) {
    const auto fit = fit_scaling(grid, q);
    const auto theo = theoretical_nu(q, p.alpha());
    fits.add_row({format_double(q), format_double(fit.nu_hat), format_double(fit.stderr_slope),
                  format_double(fit.r2), format_double(empirical_nu(q, p.alpha())),
                  theo ? format_double(*theo) : "NA"});
  }
  emit(fits, cfg, cfg.output_path, out);

  if (cfg.grid_path) {
    auto table = make_table({"q", "tau", "M"}, cfg);
    table.add_comment("n=" + std::to_string(grid.n));
    for (std::size_t iq = 0; iq < grid.qs.size(); ++iq) {
      for (std::size_t it = 0; it < grid.taus.size(); ++it) {
        table.add_row({format_double(grid.qs[iq]), std::to_string(grid.taus[it]),
                       format_double(grid.values[iq][it])});
      }
    }
    emit(table, cfg, cfg.grid_path, out);
  }
  return kSuccess;
}

void add_report_rows(csv::Table& table, const ConvergenceReport& rep) {
  for (std::size_t i = 0; i < rep.ns.size(); ++i) {
    table.add_row({format_double(rep.q), std::to_string(rep.tau), std::to_string(rep.ns[i]),
                   format_double(rep.medians[i]), format_double(rep.spreads[i]),
                   format_double(rep.target)});
  }
}

McConfig mc_config(const RunConfig& cfg, const StableParams& p) {
  McConfig mc{p, cfg.qs.front(), cfg.taus, HorizonScheme(cfg.horizon, cfg.multiplier),
              cfg.replicas, cfg.seed};
  mc.validate();
  return mc;
}

int cmd_ratio(RunConfig& cfg, const StableParams& p, std::ostream& out) {
  cfg.horizon = or_default(cfg.horizon, 10);
  cfg.multiplier = or_default(cfg.multiplier, 1);
  cfg.qs = or_default(cfg.qs, {3.0});
  cfg.taus = or_default(cfg.taus, {2});
  cfg.replicas = or_default(cfg.replicas, 20);
  cfg.ladder = or_default(cfg.ladder, kDefaultLadder);
  const auto reports = ratio_convergence_study(mc_config(cfg, p), cfg.ladder);
  auto table = make_table({"q", "tau", "n", "median", "iqr", "target"}, cfg);
  table.add_comment("tolerance=" + format_double(cfg.tolerance));
  bool ok = true;
  for (const auto& rep : reports) {
    add_report_rows(table, rep);
    ok = ok && std::abs(rep.medians.back() / rep.target - 1.0) <= cfg.tolerance;
  }
  emit(table, cfg, cfg.output_path, out);
  if (!ok) throw AssertionFailed{"last median outside tolerance of the target"};
  return kSuccess;
}

NormingKind resolve_norming(const RunConfig& cfg, double alpha) {
  if (cfg.norming == "raw") return NormingKind::Raw;
  if (cfg.norming == "centered") return NormingKind::CenteredLog;
  if (cfg.norming == "power") return NormingKind::PowerNormed;
  const double q = cfg.qs.front();
  if (q == alpha) return NormingKind::CenteredLog;
  return q > alpha ? NormingKind::PowerNormed : NormingKind::Raw;
}

int cmd_limits(RunConfig& cfg, const StableParams& p, std::ostream& out) {
  if (cfg.mode.empty()) cfg.mode = "invariance";
  cfg.qs = or_default(cfg.qs, {3.0});
  if (cfg.mode == "divergence") {
    cfg.horizon = or_default(cfg.horizon, 10);
    cfg.multiplier = or_default(cfg.multiplier, 1);
    cfg.taus = or_default(cfg.taus, {1});
    cfg.replicas = or_default(cfg.replicas, 50);
    cfg.ladder = or_default(cfg.ladder, kDefaultLadder);
    const double pe = cfg.p_exponent.value_or(cfg.qs.front() / p.alpha() - 1.0);
    const auto rep = divergence_demo(mc_config(cfg, p), pe, cfg.ladder);
    const double frac = divergence_pass_fraction(rep, cfg.ladder);
    auto table = make_table({"q", "tau", "n", "median", "iqr", "target"}, cfg);
    table.add_comment("p=" + format_double(pe) + " verdict=" +
                      (rep.verdict == SeriesVerdict::Diverges ? "diverges" : "converges") +
                      " pass_fraction=" + format_double(frac));
    add_report_rows(table, rep.running_max_summary);
    emit(table, cfg, cfg.output_path, out);
    if (frac < 0.8) throw AssertionFailed{"qualitative check passed on fewer than 80% of replicas"};
    return kSuccess;
  }
  // Defaults give N = 25200 = 4200 lcm(1..3).
  cfg.horizon = or_default(cfg.horizon, 3);
  cfg.multiplier = or_default(cfg.multiplier, 4200);
  cfg.replicas = or_default(cfg.replicas, 2000);
  if (cfg.mode == "equality") {
    cfg.taus = or_default(cfg.taus, {2});
    const auto mc = mc_config(cfg, p);
    auto table = make_table({"q", "tau", "statistic", "threshold", "rejects"}, cfg);
    bool ok = true;
    for (std::size_t tau : cfg.taus) {
      const auto res = equality_in_law_test(mc, tau);
      table.add_row({format_double(mc.q), std::to_string(tau), format_double(res.ks.statistic),
                     format_double(res.ks.threshold), res.ks.rejects() ? "1" : "0"});
      ok = ok && !res.ks.rejects();
    }
    emit(table, cfg, cfg.output_path, out);
    if (!ok) throw AssertionFailed{"equality in law rejected"};
    return kSuccess;
  }
  if (cfg.mode != "invariance") {
    throw Error(ErrorCode::InvalidArgument, "unknown limits mode " + cfg.mode);
  }
  cfg.taus = or_default(cfg.taus, {1, 3});
  const auto mc = mc_config(cfg, p);
  const auto spec = make_norming(resolve_norming(cfg, p.alpha()), mc.q, p);
  const auto res = tau_invariance_test(mc, spec);
  auto table = make_table({"q", "tau_a", "tau_b", "statistic", "threshold", "rejects"}, cfg);
  table.add_comment("norming=" + cfg.norming);
  for (const auto& pair : res.pairs) {
    table.add_row({format_double(mc.q), std::to_string(pair.tau_a), std::to_string(pair.tau_b),
                   format_double(pair.ks.statistic), format_double(pair.ks.threshold),
                   pair.ks.rejects() ? "1" : "0"});
  }
  emit(table, cfg, cfg.output_path, out);
  if (!res.pass) throw AssertionFailed{"tau invariance rejected"};
  return kSuccess;
}

int cmd_extremes(RunConfig& cfg, const StableParams& p, std::ostream& out) {
  if (cfg.mode.empty()) cfg.mode = "lemma";
  if (cfg.mode == "rn") {
    cfg.horizon = or_default(cfg.horizon, 10);
    cfg.multiplier = or_default(cfg.multiplier, 1);
    cfg.qs = or_default(cfg.qs, {2.0 * p.alpha()});
    cfg.taus = or_default(cfg.taus, {2});
    cfg.replicas = or_default(cfg.replicas, 20);
    cfg.ladder = or_default(cfg.ladder, kDefaultLadder);
    const auto reports = rn_study(mc_config(cfg, p), cfg.ladder);
    auto table = make_table({"q", "tau", "n", "median", "iqr", "target"}, cfg);
    bool ok = true;
    for (const auto& rep : reports) {
      add_report_rows(table, rep);
      ok = ok && rep.medians.back() < rep.medians.front();
    }
    emit(table, cfg, cfg.output_path, out);
    if (!ok) throw AssertionFailed{"median R_N did not decrease along the ladder"};
    return kSuccess;
  }
  if (cfg.mode != "lemma") throw Error(ErrorCode::InvalidArgument, "unknown extremes mode " + cfg.mode);
  cfg.qs = or_default(cfg.qs, {0.5, 1.0, 1.5, 3.0});
  cfg.taus = or_default(cfg.taus, {2, 3, 5});
  cfg.vectors = or_default(cfg.vectors, 10000);
  const auto cells = lemma2_sweep(cfg.taus, cfg.qs, cfg.vectors, cfg.seed);
  auto table = make_table({"tau", "q", "vectors", "violations", "worst_ratio"}, cfg);
  std::size_t violations = 0;
  for (const auto& c : cells) {
    table.add_row({std::to_string(c.tau), format_double(c.q), std::to_string(c.vectors),
                   std::to_string(c.violations), format_double(c.worst_ratio)});
    violations += c.violations;
  }
  emit(table, cfg, cfg.output_path, out);
  if (violations) throw AssertionFailed{std::to_string(violations) + " inequality violations"};
  return kSuccess;
}

int cmd_tails(RunConfig& cfg, const StableParams& p, std::ostream& out) {
  cfg.horizon = or_default(cfg.horizon, 10);
  cfg.multiplier = or_default(cfg.multiplier, 400);
  const auto values = load_or_simulate(cfg, p);
  std::vector<double> mags(values.size());
  std::transform(values.begin(), values.end(), mags.begin(), [](double x) { return std::abs(x); });
  auto table = make_table({"statistic", "value"}, cfg);
  table.add_row({"n", std::to_string(mags.size())});
  table.add_row({"fraction", format_double(cfg.fraction)});
  table.add_row({"hill_exponent", format_double(estimate_tail_exponent(mags, cfg.fraction))});
  if (p.alpha() < 2.0) {
    const double c = tail_constant(p);
    const double x = quantile(mags, 0.999);
    const auto above = std::count_if(mags.begin(), mags.end(), [x](double m) { return m > x; });
    const double tail = static_cast<double>(above) / static_cast<double>(mags.size());
    table.add_row({"tail_constant", format_double(c)});
    table.add_row({"x_p999", format_double(x)});
    table.add_row({"tail_ratio_p999", format_double(std::pow(x, p.alpha()) * tail / c)});
  }
  emit(table, cfg, cfg.output_path, out);
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app{"Scaling of moments of stable Levy increments", "levyscale"};
  app.set_config("--config", "", "TOML or INI file; flags take precedence");
  app.require_subcommand(1);

  app.add_option("--alpha", cfg.alpha, "Stability index in (0, 2]")->capture_default_str();
  app.add_option("--sigma", cfg.sigma, "Scale")->capture_default_str();
  app.add_option("--gamma", cfg.gamma, "Skewness, any value when alpha = 1")->capture_default_str();
  app.add_option("--horizon", cfg.horizon, "Largest window T; N is a multiple of lcm(1..T)");
  app.add_option("--multiplier", cfg.multiplier, "k in N = k lcm(1..T)");
  app.add_option("--q", cfg.qs, "Moment orders")->delimiter(',');
  app.add_option("--tau", cfg.taus, "Window sizes")->delimiter(',');
  app.add_option("--seed", cfg.seed, "Master seed")->capture_default_str();
  app.add_option("--replicas", cfg.replicas, "Monte Carlo replicas");
  app.add_option("--input", cfg.input_path, "Series file to analyse instead of simulating");
  app.add_flag("--levels", cfg.input_is_levels, "Input holds levels; difference on ingestion");
  app.add_option("--output", cfg.output_path, "Report path (default stdout)");
  app.add_option("--grid-output", cfg.grid_path, "scaling: moment grid path");
  app.add_option("--threads", cfg.threads, "Worker cap; results do not depend on it");
  app.add_option("--format", cfg.format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--mode", cfg.mode, "limits: invariance|equality|divergence; extremes: lemma|rn");
  app.add_option("--norming", cfg.norming, "limits invariance: auto|raw|centered|power")
      ->check(CLI::IsMember({"auto", "raw", "centered", "power"}))
      ->capture_default_str();
  app.add_option("--ladder", cfg.ladder, "Multipliers k of the N ladder")->delimiter(',');
  app.add_option("--p", cfg.p_exponent, "limits divergence: a_N = N^p");
  app.add_option("--tolerance", cfg.tolerance, "ratio: relative tolerance")->capture_default_str();
  app.add_option("--fraction", cfg.fraction, "tails: top fraction for the Hill estimate")
      ->capture_default_str();
  app.add_option("--vectors", cfg.vectors, "extremes lemma: random vectors per (tau, q)");

  const std::vector<std::pair<std::string, std::string>> subcommands{
      {"simulate", "Write N unit increments"},
      {"scaling", "Moment grid and scaling-exponent fits"},
      {"ratio", "Ratio M^tau_N / M^1_N along the N ladder"},
      {"limits", "Distributional limits and the divergence demo"},
      {"extremes", "Inequality sweep or R_N along the N ladder"},
      {"tails", "Tail exponent and tail constant checks"},
  };
  for (const auto& [name, help] : subcommands) {
    app.add_subcommand(name, help)->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kInvalidInput;
  }
  cfg.subcommand = app.get_subcommands().front()->get_name();

  try {
    if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
    if (cfg.threads < 0) throw Error(ErrorCode::InvalidArgument, "--threads must be >= 0");
    const auto p = validate_params(cfg.alpha, cfg.sigma, cfg.gamma);
    if (cfg.subcommand == "simulate") return cmd_simulate(cfg, p, out);
    if (cfg.subcommand == "scaling") return cmd_scaling(cfg, p, out, err);
    if (cfg.subcommand == "ratio") return cmd_ratio(cfg, p, out);
    if (cfg.subcommand == "limits") return cmd_limits(cfg, p, out);
    if (cfg.subcommand == "extremes") return cmd_extremes(cfg, p, out);
    return cmd_tails(cfg, p, out);
  } catch (const AssertionFailed& e) {
    err << "assertion failed: " << e.what << '\n';
    return kAssertionFailure;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::IoError ? kIoError : kInvalidInput;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{"levyscale"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace levyscale::cli
