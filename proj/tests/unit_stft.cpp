// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include <doctest.h>

#include "corti/error.hpp"
#include "corti/signal.hpp"
#include "corti/stft.hpp"

namespace {

corti::Signal white_noise(std::size_t n, double sr, std::uint64_t seed) {
  corti::Signal s;
  s.sample_rate = sr;
  s.samples.assign(n, 0.0f);
  return corti::add_noise(s, 1.0, seed);
}

double wrap_angle(double a) {
  while (a > M_PI) a -= 2.0 * M_PI;
  while (a < -M_PI) a += 2.0 * M_PI;
  return a;
}

corti::Spectrogram analyze(const corti::Signal& s) {
  return corti::stft(s, corti::StftConfig::defaults_for(s.sample_rate));
}

}  // namespace

TEST_SUITE("stft") {

TEST_CASE("default analysis geometry tracks the sample rate") {
  const corti::StftConfig a = corti::StftConfig::defaults_for(8000.0);
  CHECK(a.window_size == 256);
  CHECK(a.hop == 64);
  CHECK(a.window_kind == corti::WindowKind::kHann);
  const corti::StftConfig b = corti::StftConfig::defaults_for(44100.0);
  CHECK(b.window_size == 1024);
  CHECK(b.hop == 256);
}

TEST_CASE("options override defaults field by field") {
  corti::StftOptions opt;
  opt.window_size = 512;
  const corti::StftConfig c = opt.resolve(8000.0);
  CHECK(c.window_size == 512);
  CHECK(c.hop == 128);
  corti::StftOptions both;
  both.window_size = 512;
  both.hop = 64;
  CHECK(both.resolve(8000.0).hop == 64);
  // Explicit pairs still have to overlap-add to a constant.
  corti::StftOptions bad;
  bad.window_size = 512;
  bad.hop = 100;
  CHECK_THROWS_AS((void)bad.resolve(8000.0), corti::Error);
}

TEST_CASE("window kinds map to and from names") {
  CHECK(corti::window_kind_from_name("hann") == corti::WindowKind::kHann);
  CHECK(corti::window_kind_from_name("rect") == corti::WindowKind::kRect);
  CHECK_FALSE(corti::window_kind_from_name("hamming").has_value());
  CHECK(std::string(corti::window_kind_name(corti::WindowKind::kHann)) ==
        "hann");
}

TEST_CASE("hann window is periodic, bounded, and even about the center") {
  corti::StftConfig cfg;
  cfg.window_size = 256;
  cfg.hop = 64;
  const std::vector<double> w = cfg.window();
  REQUIRE(w.size() == 256);
  CHECK(w[0] == 0.0);
  CHECK(w[128] == doctest::Approx(1.0));
  for (std::size_t k = 0; k < w.size(); ++k) {
    CHECK(w[k] >= 0.0);
    CHECK(w[k] <= 1.0);
  }
  double asym = 0.0;
  for (std::size_t k = 1; k < w.size(); ++k) {
    asym = std::max(asym, std::abs(w[k] - w[w.size() - k]));
  }
  CHECK(asym < 1e-15);
}

TEST_CASE("overlap-add validation accepts covering hops and rejects others") {
  corti::StftConfig ok;
  ok.window_size = 256;
  ok.hop = 64;
  CHECK_NOTHROW(ok.validate());
  corti::StftConfig bad = ok;
  bad.hop = 96;  // 256 is not a multiple of 96: the window sum ripples
  CHECK_THROWS_AS(bad.validate(), corti::Error);
  corti::StftConfig rect;
  rect.window_size = 256;
  rect.hop = 128;
  rect.window_kind = corti::WindowKind::kRect;
  CHECK_NOTHROW(rect.validate());
  corti::StftConfig tiny;
  tiny.window_size = 0;
  CHECK_THROWS_AS(tiny.validate(), corti::Error);
}

TEST_CASE("zero signal transforms to a zero spectrogram and back") {
  corti::Signal s;
  s.sample_rate = 8000.0;
  s.samples.assign(4000, 0.0f);
  const corti::Spectrogram spec = analyze(s);
  CHECK(spec.n_bins == 129);
  CHECK(spec.sample_rate == 8000.0);
  for (const std::complex<double>& v : spec.values) {
    CHECK(v == std::complex<double>{0.0, 0.0});
  }
  const corti::Signal back = corti::istft(spec);
  for (const float v : back.samples) CHECK(v == 0.0f);
}

TEST_CASE("a pure tone concentrates at its own bin") {
  const corti::Signal s = corti::gen_sine(440.0, 1.0, 8000.0);
  const corti::Spectrogram spec = analyze(s);
  // 440 Hz at 31.25 Hz per bin: nearest bin is 14.
  const int mid = spec.n_frames / 2;
  int peak = 0;
  double best = 0.0;
  for (int j = 0; j < spec.n_bins; ++j) {
    const double m = std::abs(spec.at(mid, j));
    if (m > best) {
      best = m;
      peak = j;
    }
  }
  CHECK(peak == 14);
  CHECK(spec.bin_freqs[14] == doctest::Approx(437.5));
  CHECK(spec.frame_times[1] - spec.frame_times[0] ==
        doctest::Approx(64.0 / 8000.0));
}

TEST_CASE("frame-to-frame phase advances at the offset frequency") {
  // Coefficients are phase-referenced to global time zero, so between
  // frames a tone's phase moves only by the gap between the tone and the
  // bin center: 2 pi (f - bin_freq) * hop_s.
  const corti::Signal s = corti::gen_sine(440.0, 1.0, 8000.0);
  const corti::Spectrogram spec = analyze(s);
  const int mid = spec.n_frames / 2;
  const std::complex<double> a = spec.at(mid, 14);
  const std::complex<double> b = spec.at(mid + 1, 14);
  const double advance = std::arg(b * std::conj(a));
  const double expect =
      wrap_angle(2.0 * M_PI * (440.0 - spec.bin_freqs[14]) * 64.0 / 8000.0);
  CHECK(std::abs(wrap_angle(advance - expect)) < 0.02);
}

TEST_CASE("spectrogram magnitude is linear in amplitude") {
  const corti::Signal one = corti::gen_sine(440.0, 0.5, 8000.0, 1.0);
  const corti::Signal two = corti::gen_sine(440.0, 0.5, 8000.0, 2.0);
  const corti::Spectrogram sa = analyze(one);
  const corti::Spectrogram sb = analyze(two);
  REQUIRE(sa.values.size() == sb.values.size());
  double worst = 0.0;
  for (std::size_t k = 0; k < sa.values.size(); ++k) {
    worst = std::max(worst,
                     std::abs(sb.values[k] - 2.0 * sa.values[k]));
  }
  const double scale = 2.0 * std::abs(*std::max_element(
      sa.values.begin(), sa.values.end(),
      [](const std::complex<double>& x, const std::complex<double>& y) {
        return std::abs(x) < std::abs(y);
      }));
  CHECK(worst <= 1e-6 * scale);
}

TEST_CASE("round trip reconstructs the interior to 1e-6") {
  const corti::Signal s = corti::gen_chirp(300.0, 500.0, 1.0, 8000.0, 0.7);
  const corti::Spectrogram spec = analyze(s);
  const corti::Signal back = corti::istft(spec);
  REQUIRE(back.samples.size() >= s.samples.size());
  double num = 0.0, den = 0.0;
  for (std::size_t n = 256; n + 256 < s.samples.size(); ++n) {
    const double d = static_cast<double>(back.samples[n]) - s.samples[n];
    num += d * d;
    den += static_cast<double>(s.samples[n]) * s.samples[n];
  }
  CHECK(std::sqrt(num / den) <= 1e-6);
}

TEST_CASE("windowed energy matches the spectral sum") {
  // Per-frame Parseval with the fftw convention: sum_j |X_j|^2 over the full
  // spectrum equals N * sum_n |x_n w_n|^2. Reassembling the full spectrum
  // from the half spectrum doubles interior bins.
  const corti::Signal s = white_noise(64000, 8000.0, 11);
  const corti::Spectrogram spec = analyze(s);
  const corti::StftConfig cfg = spec.config;
  const std::vector<double> w = cfg.window();
  const int N = cfg.window_size;
  double spec_energy = 0.0;
  for (int i = 0; i < spec.n_frames; ++i) {
    for (int j = 0; j < spec.n_bins; ++j) {
      const double m2 = std::norm(spec.at(i, j));
      const bool interior = j != 0 && j != spec.n_bins - 1;
      spec_energy += (interior ? 2.0 : 1.0) * m2;
    }
  }
  double time_energy = 0.0;
  for (int i = 0; i < spec.n_frames; ++i) {
    const std::size_t off = static_cast<std::size_t>(i) * cfg.hop;
    for (int n = 0; n < N; ++n) {
      const double v = s.samples[off + n] * w[n];
      time_energy += v * v;
    }
  }
  CHECK(spec_energy / (N * time_energy) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("istft rejects inconsistent metadata") {
  const corti::Signal s = corti::gen_sine(440.0, 0.25, 8000.0);
  corti::Spectrogram spec = analyze(s);
  corti::Spectrogram bad = spec;
  bad.bin_freqs[3] += 1.0;
  CHECK_THROWS_AS((void)corti::istft(bad), corti::Error);
  corti::Spectrogram short_values = spec;
  short_values.values.pop_back();
  CHECK_THROWS_AS((void)corti::istft(short_values), corti::Error);
}

TEST_CASE("signals shorter than one window are rejected") {
  const corti::Signal s = corti::gen_sine(440.0, 0.01, 8000.0);  // 80 samples
  CHECK_THROWS_AS((void)analyze(s), corti::Error);
}

}  // TEST_SUITE
