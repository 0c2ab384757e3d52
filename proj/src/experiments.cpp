// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include "corti/experiments.hpp"

#include <cmath>
#include <string>

#include "corti/error.hpp"
#include "text.hpp"

namespace corti {
namespace {

constexpr const char* kModule = "experiments";

void check_lengths(const Signal& a, const Signal& b) {
  if (a.samples.size() != b.samples.size()) {
    throw Error(kModule, "signals differ in length: " +
                             std::to_string(a.samples.size()) + " vs " +
                             std::to_string(b.samples.size()));
  }
}

}  // namespace

double metric_l1(const Signal& a, const Signal& b) {
  check_lengths(a, b);
  double sum = 0.0;
  for (std::size_t n = 0; n < a.samples.size(); ++n) {
    sum += std::abs(static_cast<double>(a.samples[n]) - b.samples[n]);
  }
  return a.samples.empty() ? 0.0 : sum / static_cast<double>(a.samples.size());
}

double metric_std(const Signal& a, const Signal& b) {
  check_lengths(a, b);
  const std::size_t n = a.samples.size();
  if (n < 2) throw Error(kModule, "need at least 2 samples for a deviation");
  double mean = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mean += static_cast<double>(a.samples[i]) - b.samples[i];
  }
  mean /= static_cast<double>(n);
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double d = (static_cast<double>(a.samples[i]) - b.samples[i]) - mean;
    ss += d * d;
  }
  return std::sqrt(ss / static_cast<double>(n));  // population convention
}

std::vector<double> default_eps_grid() {
  // 12 log-spaced points over [1e-3, 0.3]; endpoints pinned exactly.
  std::vector<double> eps(12);
  const double lo = std::log(1e-3), hi = std::log(0.3);
  for (int k = 0; k < 12; ++k) {
    eps[k] = std::exp(lo + (hi - lo) * k / 11.0);
  }
  eps.front() = 1e-3;
  eps.back() = 0.3;
  return eps;
}

SweepResult denoise_sweep(const Signal& signal, std::span<const double> eps,
                          const PipelineConfig& config, std::uint64_t seed) {
  if (eps.empty()) throw Error(kModule, "noise grid is empty");
  for (std::size_t i = 0; i < eps.size(); ++i) {
    if (!(eps[i] >= 0.0)) throw Error(kModule, "noise levels must be >= 0");
    if (i > 0 && !(eps[i] > eps[i - 1])) {
      throw Error(kModule, "noise levels must be strictly increasing");
    }
  }

  SweepResult result;
  result.base_seed = seed;
  result.config = config;
  result.rows.reserve(eps.size());

  const Signal clean_hat = process(signal, config).output;

  for (std::size_t i = 0; i < eps.size(); ++i) {
    SweepRow row;
    row.eps = eps[i];
    row.seed = seed + i;  // fresh independent noise per row, reproducibly
    Signal noisy = add_noise(signal, eps[i], row.seed);
    Signal noisy_hat = process(noisy, config).output;
    row.l1_before = metric_l1(noisy, signal);
    row.std_before = metric_std(noisy, signal);
    row.l1_after = metric_l1(noisy_hat, clean_hat);
    row.std_after = metric_std(noisy_hat, clean_hat);
    row.l1_after_vs_clean = metric_l1(noisy_hat, signal);
    row.std_after_vs_clean = metric_std(noisy_hat, signal);
    result.rows.push_back(row);
  }
  return result;
}

std::string sweep_csv(const SweepResult& result) {
  using detail::fmt_g;
  std::string out =
      "eps,seed,l1_before,std_before,l1_after,std_after,"
      "l1_after_vs_clean,std_after_vs_clean\n";
  for (const SweepRow& r : result.rows) {
    out += fmt_g(r.eps) + ',' + std::to_string(r.seed) + ',' +
           fmt_g(r.l1_before) + ',' + fmt_g(r.std_before) + ',' +
           fmt_g(r.l1_after) + ',' + fmt_g(r.std_after) + ',' +
           fmt_g(r.l1_after_vs_clean) + ',' + fmt_g(r.std_after_vs_clean) +
           '\n';
  }
  return out;
}

}  // namespace corti
