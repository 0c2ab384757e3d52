// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_STFT_HPP
#define CORTI_STFT_HPP

#include <complex>
#include <optional>
#include <string>
#include <vector>

#include "corti/signal.hpp"

namespace corti {

enum class WindowKind { kHann, kRect };

const char* window_kind_name(WindowKind kind);
std::optional<WindowKind> window_kind_from_name(const std::string& name);

// Resolved analysis parameters, in samples.
struct StftConfig {
  int window_size = 0;
  int hop = 0;
  WindowKind window_kind = WindowKind::kHann;

  // 23 ms worth of samples rounded up to the next power of two, hop = N/4.
  static StftConfig defaults_for(double sample_rate);

  // Taper values in [0, 1]. Hann is the periodic variant so that shifted
  // copies tile: sum_i w(n - i*hop) is constant for hop = N/4 and N/2.
  std::vector<double> window() const;

  // Rejects nonpositive sizes, hop > window_size, and window/hop pairs whose
  // overlap-add deviates from constant by more than 1e-10 relative.
  void validate() const;
};

// Declarative form used by config files: either explicit sizes or a duration
// in milliseconds plus a hop divisor, resolved once the sample rate is known.
struct StftOptions {
  std::optional<int> window_size;
  std::optional<int> hop;
  double window_ms = 23.0;
  int hop_divisor = 4;
  WindowKind window_kind = WindowKind::kHann;

  StftConfig resolve(double sample_rate) const;
};

// Complex half spectrum, frame-major. Bin j of frame i approximates the
// continuous windowed transform at time frame_times[i], frequency
// bin_freqs[j]; the phase reference is global time zero, not the frame start,
// so a steady tone's phase advances by 2*pi*f*hop/sr per frame.
struct Spectrogram {
  int n_frames = 0;
  int n_bins = 0;  // window_size/2 + 1
  std::vector<std::complex<double>> values;  // [frame][bin]
  std::vector<double> frame_times;           // left edge of frame i, seconds
  std::vector<double> bin_freqs;             // j * sample_rate / window_size
  StftConfig config;
  double sample_rate = 0.0;

  std::complex<double>& at(int frame, int bin) {
    return values[static_cast<std::size_t>(frame) * n_bins + bin];
  }
  const std::complex<double>& at(int frame, int bin) const {
    return values[static_cast<std::size_t>(frame) * n_bins + bin];
  }

  double hop_seconds() const {
    return static_cast<double>(config.hop) / sample_rate;
  }
  double bin_hz() const { return sample_rate / config.window_size; }

  // Axis/shape consistency; throws on mismatch. istft calls this.
  void validate() const;
};

// Frames start at i*hop; the signal must cover at least one full window.
Spectrogram stft(const Signal& signal, const StftConfig& config);

// Weighted overlap-add inverse: the analysis window is applied again on
// synthesis and the result divided by the pointwise sum of squared windows
// (clamped below at 1% of its peak, so under-covered edge samples taper
// rather than amplify). Output length is (n_frames - 1)*hop + window_size
// samples; within any region where the analysis frames fully tiled the
// input, this inverts stft to rounding error.
Signal istft(const Spectrogram& spec);

}  // namespace corti

#endif
