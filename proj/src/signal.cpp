// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include "corti/signal.hpp"

#include <cmath>
#include <string>

#include "corti/error.hpp"
#include "rng.hpp"

namespace corti {
namespace {

constexpr const char* kModule = "signal";

void check_rate(double sample_rate) {
  if (!(sample_rate > 0.0) || !std::isfinite(sample_rate)) {
    throw Error(kModule,
                "sample rate must be positive, got " + std::to_string(sample_rate));
  }
}

std::size_t sample_count(double duration_s, double sample_rate) {
  if (!(duration_s >= 0.0) || !std::isfinite(duration_s)) {
    throw Error(kModule, "duration must be non-negative");
  }
  return static_cast<std::size_t>(std::llround(duration_s * sample_rate));
}

// Shared between sine and chirp so that rate = 0 reproduces the sine
// bit for bit (identical expression tree, not just identical math).
Signal synth(double f0, double rate, double duration_s, double sample_rate,
             double amplitude) {
  Signal out;
  out.sample_rate = sample_rate;
  std::size_t n = sample_count(duration_s, sample_rate);
  out.samples.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    double t = static_cast<double>(i) / sample_rate;
    double phase = 2.0 * M_PI * (f0 * t + 0.5 * rate * t * t);
    out.samples[i] = static_cast<float>(amplitude * std::sin(phase));
  }
  return out;
}

}  // namespace

Signal gen_sine(double freq_hz, double duration_s, double sample_rate,
                double amplitude) {
  check_rate(sample_rate);
  if (!(freq_hz > 0.0) || !(freq_hz < sample_rate / 2.0)) {
    throw Error(kModule, "frequency " + std::to_string(freq_hz) +
                             " Hz outside (0, Nyquist) at sample rate " +
                             std::to_string(sample_rate));
  }
  return synth(freq_hz, 0.0, duration_s, sample_rate, amplitude);
}

Signal gen_chirp(double f0_hz, double rate_hz_per_s, double duration_s,
                 double sample_rate, double amplitude) {
  check_rate(sample_rate);
  // Linear sweep: the extremes of f0 + rate*t over [0, duration] are at the
  // endpoints.
  double f_end = f0_hz + rate_hz_per_s * duration_s;
  double lo = std::min(f0_hz, f_end);
  double hi = std::max(f0_hz, f_end);
  if (!(lo > 0.0) || !(hi < sample_rate / 2.0)) {
    throw Error(kModule, "instantaneous frequency sweeps [" +
                             std::to_string(lo) + ", " + std::to_string(hi) +
                             "] Hz, outside (0, Nyquist) at sample rate " +
                             std::to_string(sample_rate));
  }
  return synth(f0_hz, rate_hz_per_s, duration_s, sample_rate, amplitude);
}

Signal add_noise(const Signal& in, double eps, std::uint64_t seed) {
  if (!(eps >= 0.0) || !std::isfinite(eps)) {
    throw Error(kModule, "noise level must be >= 0, got " + std::to_string(eps));
  }
  if (eps == 0.0) {
    return in;
  }
  Signal out = in;
  detail::NormalRng rng(seed);
  for (float& s : out.samples) {
    s = static_cast<float>(static_cast<double>(s) + eps * rng());
  }
  return out;
}

}  // namespace corti
