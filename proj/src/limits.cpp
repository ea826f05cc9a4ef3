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

#include "levyscale/limits.hpp"

#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "levyscale/error.hpp"
#include "levyscale/extremes.hpp"

namespace levyscale {

void McConfig::validate() const {
  if (replicas == 0) throw Error(ErrorCode::InvalidArgument, "replicas must be >= 1");
  for (std::size_t tau : taus) {
    if (tau == 0 || tau > scheme.horizon()) {
      throw Error(ErrorCode::InvalidArgument,
                  "window " + std::to_string(tau) + " outside 1.." +
                      std::to_string(scheme.horizon()));
    }
  }
}

KsResult ks_two_sample(std::span<const double> a, std::span<const double> b) {
  if (a.empty() || b.empty()) throw Error(ErrorCode::EmptySample, "KS needs two non-empty samples");
  std::vector<double> xa(a.begin(), a.end()), xb(b.begin(), b.end());
  std::sort(xa.begin(), xa.end());
  std::sort(xb.begin(), xb.end());
  const double na = static_cast<double>(xa.size());
  const double nb = static_cast<double>(xb.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  // Step through the pooled order statistics, consuming ties on both sides
  // before comparing the two empirical CDFs.
  while (i < xa.size() && j < xb.size()) {
    const double x = std::min(xa[i], xb[j]);
    while (i < xa.size() && xa[i] == x) ++i;
    while (j < xb.size() && xb[j] == x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  KsResult out;
  out.statistic = d;
  out.n1 = xa.size();
  out.n2 = xb.size();
  out.threshold = kKsCritical001 * std::sqrt((na + nb) / (na * nb));
  return out;
}

double quantile(std::vector<double> values, double p) {
  if (values.empty()) throw Error(ErrorCode::EmptySample, "quantile of an empty sample");
  std::sort(values.begin(), values.end());
  const double pos = std::clamp(p, 0.0, 1.0) * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, values.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[hi] - values[lo]);
}

double median(std::vector<double> values) { return quantile(std::move(values), 0.5); }

double interquartile_range(std::vector<double> values) {
  return quantile(values, 0.75) - quantile(values, 0.25);
}

std::vector<double> mc_normed_sample(const McConfig& cfg, std::size_t tau,
                                     const NormingSpec& spec, std::uint64_t stream_offset) {
  cfg.validate();
  const std::size_t n = cfg.scheme.n();
  std::vector<double> out(cfg.replicas);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < cfg.replicas; ++r) {
    const auto s = generate_increments(cfg.params, n, cfg.master_seed, stream_offset + r);
    out[r] = normed_statistic(s, tau, spec);
  }
  return out;
}

TauInvarianceResult tau_invariance_test(const McConfig& cfg, const NormingSpec& spec) {
  if (cfg.taus.size() < 2) {
    throw Error(ErrorCode::InvalidArgument, "tau invariance needs at least two windows");
  }
  std::vector<std::vector<double>> scaled;
  for (std::size_t i = 0; i < cfg.taus.size(); ++i) {
    auto sample = mc_normed_sample(cfg, cfg.taus[i], spec, i * cfg.replicas);
    for (auto& x : sample) x /= static_cast<double>(cfg.taus[i]);
    scaled.push_back(std::move(sample));
  }
  TauInvarianceResult out;
  out.pass = true;
  for (std::size_t i = 0; i < scaled.size(); ++i) {
    for (std::size_t j = i + 1; j < scaled.size(); ++j) {
      TauPair pair{cfg.taus[i], cfg.taus[j], ks_two_sample(scaled[i], scaled[j])};
      out.pass = out.pass && !pair.ks.rejects();
      out.pairs.push_back(pair);
    }
  }
  return out;
}

EqualityInLawResult equality_in_law_test(const McConfig& cfg, std::size_t tau) {
  cfg.validate();
  const std::size_t n = cfg.scheme.n();
  if (tau == 0 || n % tau != 0) {
    throw Error(ErrorCode::TauDoesNotDivide, "window does not divide the sample size");
  }
  const double factor = std::pow(static_cast<double>(tau), cfg.q / cfg.params.alpha());
  EqualityInLawResult out;
  out.direct.resize(cfg.replicas);
  out.rescaled.resize(cfg.replicas);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < cfg.replicas; ++r) {
    const auto full = generate_increments(cfg.params, n, cfg.master_seed, r);
    out.direct[r] = empirical_moment(full, cfg.q, tau);
    const auto unit =
        generate_increments(cfg.params, n / tau, cfg.master_seed, cfg.replicas + r);
    out.rescaled[r] = factor * empirical_moment(unit, cfg.q, 1);
  }
  out.ks = ks_two_sample(out.direct, out.rescaled);
  return out;
}

double cosine_integral(double z) {
  if (!(z > 0.0)) throw Error(ErrorCode::InvalidArgument, "Ci needs z > 0");
  constexpr double euler_gamma = 0.57721566490153286061;
  if (z <= 2.0) {
    // Ci(z) = gamma + ln z + sum_k (-z^2)^k / (2k (2k)!)
    double term = 1.0, sum = 0.0;
    for (int k = 1; k < 60; ++k) {
      term *= -z * z / ((2.0 * k - 1.0) * (2.0 * k));
      const double add = term / (2.0 * k);
      sum += add;
      if (std::abs(add) < 1e-18 * std::abs(sum)) break;
    }
    return euler_gamma + std::log(z) + sum;
  }
  // Modified Lentz evaluation of the continued fraction for E1(iz).
  constexpr double tiny = 1e-300;
  const std::complex<double> one(1.0, 0.0);
  std::complex<double> b(1.0, z);
  std::complex<double> c(1.0 / tiny, 0.0);
  std::complex<double> d = one / b;
  std::complex<double> h = d;
  for (int i = 2; i < 1000; ++i) {
    const double a = -static_cast<double>((i - 1) * (i - 1));
    b += 2.0;
    d = one / (a * d + b);
    c = b + a / c;
    const std::complex<double> del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < 1e-16) break;
  }
  h *= std::complex<double>(std::cos(z), -std::sin(z));
  return -h.real();
}

std::vector<double> lemma1_curve(const StableParams& p, std::span<const std::size_t> ns,
                                 std::size_t draws, std::uint64_t seed, Lemma1Options options) {
  if (ns.empty() || draws == 0) {
    throw Error(ErrorCode::InvalidArgument, "need at least one N and one draw");
  }
  for (std::size_t i = 0; i < ns.size(); ++i) {
    if (ns[i] == 0 || (i > 0 && ns[i] <= ns[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "N ladder must be positive and increasing");
    }
  }
  const double c = tail_constant(p);
  const double alpha = p.alpha();
  const bool corrected = options.estimator == Lemma1Estimator::TailCorrected;
  const double cut = options.tail_cut > 0.0 ? options.tail_cut : static_cast<double>(ns.front());

  // Each chunk owns one RNG stream, and chunk partial sums are reduced in
  // chunk order, so the result does not depend on the thread count.
  constexpr std::size_t chunk = 1 << 16;
  const std::size_t chunks = (draws + chunk - 1) / chunk;
  std::vector<std::vector<double>> partial(chunks, std::vector<double>(ns.size(), 0.0));
#pragma omp parallel for schedule(dynamic)
  for (std::size_t j = 0; j < chunks; ++j) {
    RngStream stream(seed, j);
    const std::size_t count = std::min(chunk, draws - j * chunk);
    auto& acc = partial[j];
    for (std::size_t d = 0; d < count; ++d) {
      double w = std::pow(std::abs(draw_stable(p, stream)), alpha);
      if (corrected) w = std::min(w, cut);
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const double nn = static_cast<double>(ns[i]);
        acc[i] += nn * std::sin(w / nn);
      }
    }
  }
  std::vector<double> out(ns.size(), 0.0);
  for (const auto& acc : partial) {
    for (std::size_t i = 0; i < ns.size(); ++i) out[i] += acc[i];
  }
  for (std::size_t i = 0; i < ns.size(); ++i) {
    const double nn = static_cast<double>(ns[i]);
    out[i] = out[i] / static_cast<double>(draws) - c * std::log(nn);
    if (corrected) out[i] -= c * cosine_integral(cut / nn);
  }
  return out;
}

namespace {

std::vector<std::size_t> ladder_sizes(const McConfig& cfg, std::span<const std::uint64_t> ladder) {
  if (ladder.empty()) throw Error(ErrorCode::InvalidArgument, "empty N ladder");
  std::vector<std::size_t> ns;
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    if (ladder[i] == 0 || (i > 0 && ladder[i] <= ladder[i - 1])) {
      throw Error(ErrorCode::InvalidArgument, "ladder multipliers must increase");
    }
    ns.push_back(static_cast<std::size_t>(ladder[i] * cfg.scheme.lcm()));
  }
  return ns;
}

// Running sums of |window sum|^q over consecutive windows of size tau,
// recorded after `counts[i]` windows (counts increasing).
std::vector<double> prefix_power_sums(std::span<const double> x, double q, std::size_t tau,
                                      std::span<const std::size_t> counts) {
  std::vector<double> out;
  out.reserve(counts.size());
  double acc = 0.0;
  std::size_t next = 0;
  for (std::size_t m = 0; next < counts.size(); ++m) {
    while (next < counts.size() && counts[next] == m) {
      out.push_back(acc);
      ++next;
    }
    if (next == counts.size() || (m + 1) * tau > x.size()) break;
    double s = 0.0;
    for (std::size_t i = 0; i < tau; ++i) s += x[m * tau + i];
    const double a = std::abs(s);
    acc += q == 1.0 ? a : (q == 2.0 ? a * a : std::pow(a, q));
  }
  if (out.size() != counts.size()) {
    throw Error(ErrorCode::InvalidArgument, "checkpoint beyond the end of the series");
  }
  return out;
}

ConvergenceReport summarize(double q, std::size_t tau, std::vector<std::size_t> ns,
                            const std::vector<std::vector<double>>& per_replica, double target) {
  ConvergenceReport rep;
  rep.q = q;
  rep.tau = tau;
  rep.ns = std::move(ns);
  rep.target = target;
  for (std::size_t i = 0; i < rep.ns.size(); ++i) {
    std::vector<double> column;
    column.reserve(per_replica.size());
    for (const auto& row : per_replica) column.push_back(row[i]);
    rep.medians.push_back(median(column));
    rep.spreads.push_back(interquartile_range(column));
  }
  return rep;
}

}  // namespace

std::vector<ConvergenceReport> ratio_convergence_study(const McConfig& cfg,
                                                       std::span<const std::uint64_t> ladder) {
  cfg.validate();
  const auto ns = ladder_sizes(cfg, ladder);
  const std::size_t total = ns.back();
  std::vector<std::size_t> unit_counts(ns.begin(), ns.end());
  // ratios[t][r][i]
  std::vector<std::vector<std::vector<double>>> ratios(
      cfg.taus.size(), std::vector<std::vector<double>>(cfg.replicas));
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < cfg.replicas; ++r) {
    const auto s = generate_increments(cfg.params, total, cfg.master_seed, r);
    const auto unit = prefix_power_sums(s.values, cfg.q, 1, unit_counts);
    for (std::size_t t = 0; t < cfg.taus.size(); ++t) {
      const std::size_t tau = cfg.taus[t];
      std::vector<std::size_t> counts;
      for (std::size_t n : ns) counts.push_back(n / tau);
      const auto windows = prefix_power_sums(s.values, cfg.q, tau, counts);
      auto& row = ratios[t][r];
      for (std::size_t i = 0; i < ns.size(); ++i) {
        const double m_tau = windows[i] / static_cast<double>(counts[i]);
        const double m_one = unit[i] / static_cast<double>(ns[i]);
        row.push_back(m_tau / m_one);
      }
    }
  }
  std::vector<ConvergenceReport> out;
  for (std::size_t t = 0; t < cfg.taus.size(); ++t) {
    const double target =
        std::pow(static_cast<double>(cfg.taus[t]), empirical_nu(cfg.q, cfg.params.alpha()));
    out.push_back(summarize(cfg.q, cfg.taus[t], ns, ratios[t], target));
  }
  return out;
}

std::vector<ConvergenceReport> rn_study(const McConfig& cfg, std::span<const std::uint64_t> ladder) {
  cfg.validate();
  if (cfg.q < cfg.params.alpha()) throw Error(ErrorCode::InvalidOrder, "R_N needs q >= alpha");
  const auto ns = ladder_sizes(cfg, ladder);
  std::vector<std::size_t> taus;
  for (std::size_t tau : cfg.taus) {
    if (tau >= 2) taus.push_back(tau);
  }
  if (taus.empty()) throw Error(ErrorCode::TauTooSmall, "R_N needs a window of size >= 2");
  std::vector<std::vector<std::vector<double>>> values(
      taus.size(), std::vector<std::vector<double>>(cfg.replicas));
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < cfg.replicas; ++r) {
    const auto s = generate_increments(cfg.params, ns.back(), cfg.master_seed, r);
    for (std::size_t t = 0; t < taus.size(); ++t) {
      const auto ext = block_extremes(s, cfg.q, taus[t]);
      double su = 0.0, sv = 0.0;
      std::size_t m = 0;
      for (std::size_t n : ns) {
        for (; m < n / taus[t]; ++m) {
          su += ext.u[m];
          sv += ext.v[m];
        }
        values[t][r].push_back(sv / su);
      }
    }
  }
  std::vector<ConvergenceReport> out;
  for (std::size_t t = 0; t < taus.size(); ++t) {
    out.push_back(summarize(cfg.q, taus[t], ns, values[t], 0.0));
  }
  return out;
}

DivergenceReport divergence_demo(const McConfig& cfg, double p_exponent,
                                 std::span<const std::uint64_t> ladder) {
  cfg.validate();
  if (cfg.taus.empty()) throw Error(ErrorCode::InvalidArgument, "no window size given");
  DivergenceReport rep;
  rep.verdict = feller_classifier(p_exponent, cfg.q, cfg.params.alpha());
  rep.p_exponent = p_exponent;
  rep.tau = cfg.taus.front();
  const auto ns = ladder_sizes(cfg, ladder);
  const std::size_t kmax = static_cast<std::size_t>(ladder.back());
  const std::size_t lcm = static_cast<std::size_t>(cfg.scheme.lcm());
  std::vector<std::size_t> counts(kmax);
  for (std::size_t k = 1; k <= kmax; ++k) counts[k - 1] = k * lcm / rep.tau;
  rep.replicas.resize(cfg.replicas);
#pragma omp parallel for schedule(dynamic)
  for (std::size_t r = 0; r < cfg.replicas; ++r) {
    const auto s = generate_increments(cfg.params, kmax * lcm, cfg.master_seed, r);
    const auto sums = prefix_power_sums(s.values, cfg.q, rep.tau, counts);
    auto& traj = rep.replicas[r];
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= kmax; ++k) {
      const double n = static_cast<double>(k * lcm);
      const double value = sums[k - 1] / static_cast<double>(counts[k - 1]) / std::pow(n, p_exponent);
      best = std::max(best, value);
      traj.statistic.push_back(value);
      traj.running_max.push_back(best);
    }
  }
  std::vector<std::vector<double>> at_ladder(cfg.replicas);
  for (std::size_t r = 0; r < cfg.replicas; ++r) {
    for (std::uint64_t k : ladder) at_ladder[r].push_back(rep.replicas[r].running_max[k - 1]);
  }
  rep.running_max_summary = summarize(cfg.q, rep.tau, ns, at_ladder, 0.0);
  return rep;
}

double divergence_pass_fraction(const DivergenceReport& rep,
                                std::span<const std::uint64_t> ladder) {
  if (rep.replicas.empty()) throw Error(ErrorCode::InvalidArgument, "no replicas");
  if (ladder.size() < 2) throw Error(ErrorCode::InvalidArgument, "need two ladder points");
  const std::size_t first = static_cast<std::size_t>(ladder.front()) - 1;
  const std::size_t last = static_cast<std::size_t>(ladder.back()) - 1;
  std::size_t passed = 0;
  for (const auto& t : rep.replicas) {
    if (last >= t.statistic.size()) throw Error(ErrorCode::InvalidArgument, "ladder too long");
    const bool ok = rep.verdict == SeriesVerdict::Diverges
                        ? t.running_max[last] > t.running_max[first]
                        : t.statistic[last] < 0.1 * t.statistic[first];
    passed += ok ? 1 : 0;
  }
  return static_cast<double>(passed) / static_cast<double>(rep.replicas.size());
}

}  // namespace levyscale
