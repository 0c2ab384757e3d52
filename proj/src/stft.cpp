// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include "corti/stft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <mutex>
#include <string>

#include "corti/error.hpp"

namespace corti {
namespace {

constexpr const char* kModule = "stft";

// FFTW plan creation/destruction is not thread-safe; execution on distinct
// buffers is.
std::mutex g_plan_mutex;

struct FftBuffers {
  int n = 0;
  double* real = nullptr;
  fftw_complex* cplx = nullptr;
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;

  explicit FftBuffers(int size) : n(size) {
    real = fftw_alloc_real(static_cast<std::size_t>(n));
    cplx = fftw_alloc_complex(static_cast<std::size_t>(n / 2 + 1));
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fwd = fftw_plan_dft_r2c_1d(n, real, cplx, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(n, cplx, real, FFTW_ESTIMATE);
  }
  ~FftBuffers() {
    std::lock_guard<std::mutex> lock(g_plan_mutex);
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
    fftw_free(real);
    fftw_free(cplx);
  }
  FftBuffers(const FftBuffers&) = delete;
  FftBuffers& operator=(const FftBuffers&) = delete;
};

int next_pow2(int n) {
  int p = 1;
  while (p < n) p *= 2;
  return p;
}

}  // namespace

const char* window_kind_name(WindowKind kind) {
  switch (kind) {
    case WindowKind::kHann:
      return "hann";
    case WindowKind::kRect:
      return "rect";
  }
  return "?";
}

std::optional<WindowKind> window_kind_from_name(const std::string& name) {
  if (name == "hann") return WindowKind::kHann;
  if (name == "rect") return WindowKind::kRect;
  return std::nullopt;
}

StftConfig StftConfig::defaults_for(double sample_rate) {
  if (!(sample_rate > 0.0)) throw Error(kModule, "sample rate must be positive");
  StftConfig cfg;
  cfg.window_size = next_pow2(
      static_cast<int>(std::ceil(0.023 * sample_rate)));
  cfg.hop = cfg.window_size / 4;
  return cfg;
}

std::vector<double> StftConfig::window() const {
  std::vector<double> w(static_cast<std::size_t>(window_size));
  switch (window_kind) {
    case WindowKind::kHann:
      // Periodic variant: period N, not N-1, which is what makes shifted
      // copies sum to a constant at hop = N/4 and N/2.
      for (int n = 0; n < window_size; ++n) {
        w[n] = 0.5 - 0.5 * std::cos(2.0 * M_PI * n / window_size);
      }
      break;
    case WindowKind::kRect:
      std::fill(w.begin(), w.end(), 1.0);
      break;
  }
  return w;
}

void StftConfig::validate() const {
  if (window_size <= 0) throw Error(kModule, "window size must be positive");
  if (hop <= 0 || hop > window_size) {
    throw Error(kModule, "hop must satisfy 0 < hop <= window size, got " +
                             std::to_string(hop) + " vs " +
                             std::to_string(window_size));
  }
  std::vector<double> w = window();
  for (double v : w) {
    if (!(v >= 0.0 && v <= 1.0)) {
      throw Error(kModule, "window values must lie in [0, 1]");
    }
  }
  // Constant-overlap-add: the tiling sum over all hop-shifted copies must be
  // flat, or synthesis weighting varies audibly across the frame cycle.
  double mn = 1e300, mx = -1e300;
  for (int r = 0; r < hop; ++r) {
    double c = 0.0;
    for (int n = r; n < window_size; n += hop) c += w[n];
    mn = std::min(mn, c);
    mx = std::max(mx, c);
  }
  double mean = 0.5 * (mn + mx);
  if (!(mean > 0.0) || (mx - mn) > 1e-10 * mean) {
    throw Error(kModule,
                "window/hop pair is not constant-overlap-add (deviation " +
                    std::to_string(mx - mn) + " over mean " +
                    std::to_string(mean) + ")");
  }
}

StftConfig StftOptions::resolve(double sample_rate) const {
  StftConfig cfg;
  cfg.window_kind = window_kind;
  if (window_size) {
    cfg.window_size = *window_size;
  } else {
    if (!(window_ms > 0.0)) throw Error(kModule, "window duration must be positive");
    cfg.window_size =
        next_pow2(static_cast<int>(std::ceil(window_ms * 1e-3 * sample_rate)));
  }
  if (hop) {
    cfg.hop = *hop;
  } else {
    if (hop_divisor < 1) throw Error(kModule, "hop divisor must be >= 1");
    cfg.hop = cfg.window_size / hop_divisor;
  }
  cfg.validate();
  return cfg;
}

void Spectrogram::validate() const {
  config.validate();
  if (!(sample_rate > 0.0)) throw Error(kModule, "spectrogram has no sample rate");
  if (n_frames <= 0 || n_bins != config.window_size / 2 + 1) {
    throw Error(kModule, "spectrogram shape does not match its window size");
  }
  if (values.size() != static_cast<std::size_t>(n_frames) * n_bins ||
      frame_times.size() != static_cast<std::size_t>(n_frames) ||
      bin_freqs.size() != static_cast<std::size_t>(n_bins)) {
    throw Error(kModule, "spectrogram axis lengths disagree with its shape");
  }
  const double df = bin_hz();
  for (int j = 0; j < n_bins; ++j) {
    if (std::abs(bin_freqs[j] - j * df) > 1e-9 * sample_rate) {
      throw Error(kModule, "frequency axis is not j*sample_rate/window_size");
    }
  }
  const double dt = hop_seconds();
  for (int i = 0; i < n_frames; ++i) {
    if (std::abs(frame_times[i] - i * dt) > 1e-9) {
      throw Error(kModule, "time axis does not advance by hop/sample_rate");
    }
  }
  for (const std::complex<double>& v : values) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) {
      throw Error(kModule, "spectrogram contains non-finite entries");
    }
  }
}

Spectrogram stft(const Signal& signal, const StftConfig& config) {
  config.validate();
  if (!(signal.sample_rate > 0.0)) throw Error(kModule, "signal has no sample rate");
  const int N = config.window_size;
  const int hop = config.hop;
  const std::size_t len = signal.samples.size();
  if (len < static_cast<std::size_t>(N)) {
    throw Error(kModule, "signal (" + std::to_string(len) +
                             " samples) shorter than one window (" +
                             std::to_string(N) + ")");
  }

  Spectrogram spec;
  spec.config = config;
  spec.sample_rate = signal.sample_rate;
  spec.n_frames = static_cast<int>((len - N) / hop) + 1;
  spec.n_bins = N / 2 + 1;
  spec.values.resize(static_cast<std::size_t>(spec.n_frames) * spec.n_bins);
  spec.frame_times.resize(spec.n_frames);
  spec.bin_freqs.resize(spec.n_bins);
  for (int i = 0; i < spec.n_frames; ++i) {
    spec.frame_times[i] = static_cast<double>(i) * hop / signal.sample_rate;
  }
  for (int j = 0; j < spec.n_bins; ++j) {
    spec.bin_freqs[j] = static_cast<double>(j) * signal.sample_rate / N;
  }

  const std::vector<double> w = config.window();
  FftBuffers fft(N);
  for (int i = 0; i < spec.n_frames; ++i) {
    const std::size_t off = static_cast<std::size_t>(i) * hop;
    for (int m = 0; m < N; ++m) {
      fft.real[m] = static_cast<double>(signal.samples[off + m]) * w[m];
    }
    fftw_execute(fft.fwd);
    // The DFT above indexes samples from the frame start; the transform is
    // defined against absolute sample index, so rotate the phase reference
    // back to time zero: X_j *= e^{-2 pi i (i*hop) j / N}.
    const double theta =
        -2.0 * M_PI * static_cast<double>(off % static_cast<std::size_t>(N)) / N;
    for (int j = 0; j < spec.n_bins; ++j) {
      std::complex<double> x(fft.cplx[j][0], fft.cplx[j][1]);
      spec.at(i, j) = x * std::polar(1.0, theta * j);
    }
  }
  return spec;
}

Signal istft(const Spectrogram& spec) {
  spec.validate();
  const int N = spec.config.window_size;
  const int hop = spec.config.hop;
  const std::vector<double> w = spec.config.window();
  const std::size_t out_len =
      static_cast<std::size_t>(spec.n_frames - 1) * hop + N;

  std::vector<double> acc(out_len, 0.0);
  std::vector<double> norm(out_len, 0.0);
  FftBuffers fft(N);

  for (int i = 0; i < spec.n_frames; ++i) {
    const std::size_t off = static_cast<std::size_t>(i) * hop;
    const double theta =
        2.0 * M_PI * static_cast<double>(off % static_cast<std::size_t>(N)) / N;
    for (int j = 0; j < spec.n_bins; ++j) {
      std::complex<double> x = spec.at(i, j) * std::polar(1.0, theta * j);
      fft.cplx[j][0] = x.real();
      fft.cplx[j][1] = x.imag();
    }
    fftw_execute(fft.bwd);  // unnormalized; scale by 1/N below
    // Weighted overlap-add: apply the analysis window again and divide by
    // the accumulated squared window afterwards. Exact for any COLA window,
    // and tapers frame-boundary discontinuities of modified spectra.
    for (int m = 0; m < N; ++m) {
      acc[off + m] += fft.real[m] / N * w[m];
      norm[off + m] += w[m] * w[m];
    }
  }

  Signal out;
  out.sample_rate = spec.sample_rate;
  out.samples.resize(out_len);
  // Clamp the normalizer: near the signal ends only a window tail covers a
  // sample, and dividing by w^2 there turns any spectral modification into
  // an unbounded edge spike. Below the floor the output tapers instead.
  double mx = 0.0;
  for (const double v : norm) mx = std::max(mx, v);
  const double lo = std::max(1e-2 * mx, 1e-300);
  for (std::size_t n = 0; n < out_len; ++n) {
    out.samples[n] = static_cast<float>(acc[n] / std::max(norm[n], lo));
  }
  return out;
}

}  // namespace corti
