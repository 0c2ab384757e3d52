// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include <doctest.h>

#include "corti/error.hpp"
#include "corti/experiments.hpp"
#include "corti/signal.hpp"

namespace {

corti::Signal from_samples(std::vector<float> v) {
  corti::Signal s;
  s.sample_rate = 8000.0;
  s.samples = std::move(v);
  return s;
}

// Spearman rank correlation without tie handling; inputs are distinct.
double spearman(const std::vector<double>& xs) {
  const std::size_t n = xs.size();
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return xs[a] < xs[b]; });
  double d2 = 0.0;
  for (std::size_t r = 0; r < n; ++r) {
    const double d = static_cast<double>(order[r]) - static_cast<double>(r);
    d2 += d * d;
  }
  return 1.0 - 6.0 * d2 / (n * (n * n - 1.0));
}

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("metrics on small hand-computed vectors") {
  const corti::Signal a = from_samples({1.0f, 2.0f, 3.0f, 4.0f});
  const corti::Signal b = from_samples({1.0f, 1.0f, 5.0f, 4.0f});
  // |diffs| = {0, 1, 2, 0}: mean 0.75; diffs {0, 1, -2, 0} have mean
  // -0.25, variance ((0.25)^2 + (1.25)^2 + (1.75)^2 + (0.25)^2)/4.
  CHECK(corti::metric_l1(a, b) == doctest::Approx(0.75));
  const double var = (0.0625 + 1.5625 + 3.0625 + 0.0625) / 4.0;
  CHECK(corti::metric_std(a, b) == doctest::Approx(std::sqrt(var)));
  CHECK(corti::metric_l1(a, a) == 0.0);
  CHECK(corti::metric_std(a, a) == 0.0);
}

TEST_CASE("metrics reject mismatched or too-short signals") {
  const corti::Signal a = from_samples({1.0f, 2.0f, 3.0f});
  const corti::Signal b = from_samples({1.0f, 2.0f});
  CHECK_THROWS_AS((void)corti::metric_l1(a, b), corti::Error);
  CHECK_THROWS_AS((void)corti::metric_std(a, b), corti::Error);
  const corti::Signal one = from_samples({1.0f});
  CHECK_THROWS_AS((void)corti::metric_std(one, one), corti::Error);
}

TEST_CASE("default grid is log spaced across the stated range") {
  const std::vector<double> grid = corti::default_eps_grid();
  REQUIRE(grid.size() == 12);
  CHECK(grid.front() == doctest::Approx(1e-3));
  CHECK(grid.back() == doctest::Approx(0.3));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    CHECK(grid[i] > grid[i - 1]);
    if (i >= 2) {
      CHECK(grid[i] / grid[i - 1] ==
            doctest::Approx(grid[i - 1] / grid[i - 2]).epsilon(1e-9));
    }
  }
}

TEST_CASE("sweep rows track the injected noise level") {
  const corti::Signal s = corti::gen_chirp(400.0, 800.0, 0.5, 8000.0, 0.5);
  const std::vector<double> eps = {0.0, 0.01, 0.05};
  const corti::SweepResult res =
      corti::denoise_sweep(s, eps, corti::PipelineConfig{}, 42);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.base_seed == 42);

  // eps 0 adds nothing: both before and after distances are exactly zero.
  CHECK(res.rows[0].l1_before == 0.0);
  CHECK(res.rows[0].std_before == 0.0);
  CHECK(res.rows[0].l1_after == 0.0);
  CHECK(res.rows[0].std_after == 0.0);

  for (int k = 1; k < 3; ++k) {
    CHECK(res.rows[k].eps == eps[k]);
    CHECK(res.rows[k].seed == 42 + static_cast<std::uint64_t>(k));
    // The injected noise has standard deviation eps.
    CHECK(std::abs(res.rows[k].std_before - eps[k]) / eps[k] < 0.05);
    // Gaussian mean absolute value is sqrt(2/pi) of the deviation.
    CHECK(std::abs(res.rows[k].l1_before -
                   std::sqrt(2.0 / M_PI) * eps[k]) /
              eps[k] <
          0.05);
    CHECK(res.rows[k].l1_after > 0.0);
    CHECK(res.rows[k].l1_after_vs_clean > 0.0);
    CHECK(std::isfinite(res.rows[k].std_after_vs_clean));
  }
}

TEST_CASE("before metrics grow monotonically along the default grid") {
  const corti::Signal s = corti::gen_chirp(400.0, 800.0, 0.5, 8000.0, 0.5);
  const std::vector<double> eps = corti::default_eps_grid();
  const corti::SweepResult res =
      corti::denoise_sweep(s, eps, corti::PipelineConfig{}, 7);
  std::vector<double> l1s, stds;
  for (const corti::SweepRow& r : res.rows) {
    l1s.push_back(r.l1_before);
    stds.push_back(r.std_before);
  }
  CHECK(spearman(l1s) > 0.99);
  CHECK(spearman(stds) > 0.99);
}

TEST_CASE("sweep validates its noise grid") {
  const corti::Signal s = corti::gen_chirp(400.0, 800.0, 0.5, 8000.0, 0.5);
  const std::vector<double> decreasing = {0.05, 0.01};
  CHECK_THROWS_AS(
      (void)corti::denoise_sweep(s, decreasing, corti::PipelineConfig{}, 1),
      corti::Error);
  const std::vector<double> negative = {-0.01, 0.05};
  CHECK_THROWS_AS(
      (void)corti::denoise_sweep(s, negative, corti::PipelineConfig{}, 1),
      corti::Error);
  const std::vector<double> empty;
  CHECK_THROWS_AS(
      (void)corti::denoise_sweep(s, empty, corti::PipelineConfig{}, 1),
      corti::Error);
}

TEST_CASE("sweep results serialize deterministically") {
  const corti::Signal s = corti::gen_chirp(400.0, 800.0, 0.5, 8000.0, 0.5);
  const std::vector<double> eps = {0.01, 0.1};
  const corti::SweepResult a =
      corti::denoise_sweep(s, eps, corti::PipelineConfig{}, 5);
  const corti::SweepResult b =
      corti::denoise_sweep(s, eps, corti::PipelineConfig{}, 5);
  const std::string csv_a = corti::sweep_csv(a);
  const std::string csv_b = corti::sweep_csv(b);
  CHECK(csv_a == csv_b);

  // Header plus one line per row, newline terminated.
  std::size_t lines = 0;
  for (const char c : csv_a) lines += c == '\n';
  CHECK(lines == 3);
  CHECK(csv_a.rfind("eps,", 0) == 0);
  CHECK(csv_a.back() == '\n');
}

}  // TEST_SUITE
