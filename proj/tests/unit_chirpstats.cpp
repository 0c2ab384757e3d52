// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include <doctest.h>

#include "corti/chirpstats.hpp"
#include "corti/error.hpp"
#include "corti/signal.hpp"
#include "corti/wav.hpp"
#include "support/unit_helpers.hpp"

namespace {

// Standard Cauchy draws through the quantile transform, 53-bit uniforms.
std::vector<double> cauchy_draws(std::size_t n, double x0, double gamma,
                                 std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    out[i] = x0 + gamma * std::tan(M_PI * (u - 0.5));
  }
  return out;
}

}  // namespace

TEST_SUITE("chirpstats") {

TEST_CASE("quartile fit on a four-point sample") {
  // Type-7 quartiles of {-1, 0, 1, 2} are -0.25 and 1.25: x0 is their
  // midpoint, gamma half their spread.
  const std::vector<double> xs = {2.0, -1.0, 1.0, 0.0};
  const corti::CauchyFit fit = corti::fit_cauchy(xs);
  CHECK(fit.x0 == doctest::Approx(0.5));
  CHECK(fit.gamma == doctest::Approx(0.75));
  CHECK(fit.n == 4);
}

TEST_CASE("fit is invariant under permutation") {
  std::vector<double> xs = cauchy_draws(501, 2.0, 0.5, 9);
  const corti::CauchyFit a = corti::fit_cauchy(xs);
  std::reverse(xs.begin(), xs.end());
  const corti::CauchyFit b = corti::fit_cauchy(xs);
  CHECK(a.x0 == b.x0);
  CHECK(a.gamma == b.gamma);
}

TEST_CASE("fit is equivariant under affine maps") {
  const std::vector<double> xs = cauchy_draws(1001, 0.0, 1.0, 10);
  const corti::CauchyFit base = corti::fit_cauchy(xs);
  std::vector<double> mapped(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) mapped[i] = -3.0 * xs[i] + 7.0;
  const corti::CauchyFit m = corti::fit_cauchy(mapped);
  CHECK(m.x0 == doctest::Approx(-3.0 * base.x0 + 7.0));
  // Negative scale flips the quartiles but not the spread.
  CHECK(m.gamma == doctest::Approx(3.0 * base.gamma));
}

TEST_CASE("identical samples give zero scale") {
  const std::vector<double> xs(50, 4.25);
  const corti::CauchyFit fit = corti::fit_cauchy(xs);
  CHECK(fit.x0 == doctest::Approx(4.25));
  CHECK(fit.gamma == 0.0);
}

TEST_CASE("fit rejects tiny and non-finite samples") {
  CHECK_THROWS_AS((void)corti::fit_cauchy(std::vector<double>{1.0, 2.0, 3.0}),
                  corti::Error);
  std::vector<double> bad = {1.0, 2.0, 3.0, 4.0};
  bad[2] = std::numeric_limits<double>::quiet_NaN();
  CHECK_THROWS_AS((void)corti::fit_cauchy(bad), corti::Error);
}

TEST_CASE("cdf values at landmark points") {
  corti::CauchyFit fit;
  fit.x0 = 1.0;
  fit.gamma = 2.0;
  CHECK(corti::cauchy_cdf(1.0, fit) == doctest::Approx(0.5));
  CHECK(corti::cauchy_cdf(3.0, fit) == doctest::Approx(0.75));
  CHECK(corti::cauchy_cdf(1e9, fit) == doctest::Approx(1.0));
  CHECK(corti::cauchy_cdf(-1e9, fit) == doctest::Approx(0.0).epsilon(1e-8));
  corti::CauchyFit flat;
  flat.x0 = 0.0;
  flat.gamma = 0.0;
  CHECK_THROWS_AS((void)corti::cauchy_cdf(0.0, flat), corti::Error);
}

TEST_CASE("interval half width follows the quantile of the level") {
  corti::CauchyFit fit;
  fit.x0 = 0.0;
  fit.gamma = 2.0;
  const double hw = corti::cauchy_interval_half_width(fit, 0.95);
  CHECK(hw == doctest::Approx(2.0 * std::tan(0.475 * M_PI)));
  // Central interval: cdf(x0 + hw) - cdf(x0 - hw) recovers the level.
  CHECK(corti::cauchy_cdf(hw, fit) - corti::cauchy_cdf(-hw, fit) ==
        doctest::Approx(0.95));
  CHECK(corti::cauchy_interval_half_width(fit, 0.5) == doctest::Approx(2.0));
}

TEST_CASE("ks statistic on a single sample is one half") {
  corti::CauchyFit fit;
  fit.x0 = 0.0;
  fit.gamma = 1.0;
  const std::vector<double> xs = {0.0};
  CHECK(corti::ks_statistic(xs, fit) == doctest::Approx(0.5));
}

TEST_CASE("samples at model quantiles reach the known floor") {
  // Points at F^{-1}((i - 0.5) / n) leave identical gaps on both sides of
  // every step, so the sup distance is exactly 0.5 / n.
  corti::CauchyFit fit;
  fit.x0 = 0.5;
  fit.gamma = 1.5;
  const int n = 10;
  std::vector<double> xs(n);
  for (int i = 0; i < n; ++i) {
    const double p = (i + 0.5) / n;
    xs[i] = fit.x0 + fit.gamma * std::tan(M_PI * (p - 0.5));
  }
  CHECK(corti::ks_statistic(xs, fit) == doctest::Approx(0.05).epsilon(1e-10));
}

TEST_CASE("ks statistic matches a brute-force sup") {
  const std::vector<double> xs = cauchy_draws(37, 0.3, 2.0, 21);
  const corti::CauchyFit fit = corti::fit_cauchy(xs);
  const double ks = corti::ks_statistic(xs, fit);
  CHECK(ks >= 0.0);
  CHECK(ks <= 1.0);

  std::vector<double> sorted = xs;
  std::sort(sorted.begin(), sorted.end());
  const double lo = sorted.front() - 4.0 * fit.gamma;
  const double hi = sorted.back() + 4.0 * fit.gamma;
  auto ecdf_at = [&](double x) {
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / sorted.size();
  };
  auto ecdf_below = [&](double x) {
    const auto it = std::lower_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / sorted.size();
  };
  double brute = 0.0;
  for (int k = 0; k < 10000; ++k) {
    const double x = lo + (hi - lo) * k / 9999.0;
    brute = std::max(brute, std::abs(ecdf_at(x) - corti::cauchy_cdf(x, fit)));
  }
  // The sup sits at sample points: check both one-sided gaps there.
  for (const double x : sorted) {
    const double f = corti::cauchy_cdf(x, fit);
    brute = std::max(brute, std::abs(ecdf_at(x) - f));
    brute = std::max(brute, std::abs(ecdf_below(x) - f));
  }
  CHECK(std::abs(ks - brute) <= 1e-6);
}

TEST_CASE("coverage counts the central interval") {
  corti::CauchyFit fit;
  fit.x0 = 2.0;
  fit.gamma = 1.0;
  const std::vector<double> at_center(10, 2.0);
  CHECK(corti::coverage(at_center, fit, 0.95) == doctest::Approx(1.0));

  const std::vector<double> xs = cauchy_draws(500, 2.0, 1.0, 33);
  const double cov = corti::coverage(xs, fit, 0.9);
  const double hw = corti::cauchy_interval_half_width(fit, 0.9);
  int inside = 0;
  for (const double x : xs) {
    if (std::abs(x - fit.x0) <= hw) ++inside;
  }
  CHECK(cov == doctest::Approx(static_cast<double>(inside) / xs.size()));
}

TEST_CASE("large synthetic sample recovers its parameters") {
  const std::vector<double> xs = cauchy_draws(100000, 0.0, 1.0, 77);
  const corti::CauchyFit fit = corti::fit_cauchy(xs);
  CHECK(std::abs(fit.x0) <= 0.02);
  CHECK(std::abs(fit.gamma - 1.0) <= 0.05);
  CHECK(std::abs(corti::coverage(xs, fit, 0.95) - 0.95) <= 0.01);
  const corti::GoodnessReport rep = corti::goodness(xs, fit, 0.95);
  CHECK(rep.fit.n == 100000);
  CHECK(rep.ks < 0.02);
  CHECK(rep.p_used == 0.95);
}

TEST_CASE("well-specified samples keep the ks distance small") {
  std::vector<double> ds;
  for (std::uint64_t s = 0; s < 10; ++s) {
    const std::vector<double> xs = cauchy_draws(5000, -1.0, 0.3, 100 + s);
    ds.push_back(corti::ks_statistic(xs, corti::fit_cauchy(xs)));
  }
  std::sort(ds.begin(), ds.end());
  CHECK(ds[5] < 0.05);
}

TEST_CASE("corpus summary fits every readable file and flags the rest") {
  const std::filesystem::path dir = corti_test::scratch_dir("chirp_corpus");
  std::vector<std::string> paths;
  int k = 0;
  for (const double rate : {700.0, 1200.0, 1800.0}) {
    const corti::Signal s = corti::gen_chirp(400.0, rate, 0.5, 8000.0, 0.8);
    const std::string p = (dir / ("c" + std::to_string(k++) + ".wav")).string();
    corti::write_wav(s, p, corti::WavFormat::kFloat32);
    paths.push_back(p);
  }
  paths.push_back((dir / "missing.wav").string());

  const std::vector<corti::CorpusRow> rows =
      corti::corpus_summary(paths, corti::StftOptions{}, 1e-8);
  REQUIRE(rows.size() == 4);
  for (int i = 0; i < 3; ++i) {
    CHECK(rows[i].ok);
    CHECK(rows[i].n_samples > 100);
    CHECK(std::isfinite(rows[i].fit.x0));
    CHECK(rows[i].fit.gamma > 0.0);
    CHECK(rows[i].ks >= 0.0);
    CHECK(rows[i].coverage95 >= 0.0);
  }
  CHECK_FALSE(rows[3].ok);
  CHECK_FALSE(rows[3].error.empty());

  const std::string csv = corti::corpus_csv(rows);
  const std::string csv2 = corti::corpus_csv(corti::corpus_summary(
      paths, corti::StftOptions{}, 1e-8));
  CHECK(csv == csv2);
  CHECK(csv.find("missing.wav") != std::string::npos);

  const std::vector<corti::CorpusRow> none =
      corti::corpus_summary({}, corti::StftOptions{}, 1e-8);
  CHECK(none.empty());
}

}  // TEST_SUITE
