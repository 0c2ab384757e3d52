// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_SIGNAL_HPP
#define CORTI_SIGNAL_HPP

#include <cstdint>
#include <vector>

namespace corti {

// Mono audio buffer. Samples are kept in float32, the same width they have
// on disk in format-3 WAV files, so a float write/read round trip is exact.
// All spectral arithmetic downstream runs in double.
struct Signal {
  std::vector<float> samples;
  double sample_rate = 0.0;

  double duration() const {
    return sample_rate > 0.0 ? static_cast<double>(samples.size()) / sample_rate
                             : 0.0;
  }
};

// Name of the noise generator, recorded in run reports. The normal variates
// come from mt19937_64 through our own Box-Muller transform;
// std::normal_distribution is implementation-defined and would break
// cross-platform byte-identical reruns.
inline constexpr const char* kNoiseRng = "mt19937_64+box-muller";

// samples[n] = amplitude * sin(2*pi*freq_hz*n/sample_rate).
// Requires 0 < freq_hz < sample_rate/2.
Signal gen_sine(double freq_hz, double duration_s, double sample_rate,
                double amplitude = 1.0);

// Linear chirp, instantaneous frequency f0_hz + rate_hz_per_s * t.
// samples[n] = amplitude * sin(2*pi*(f0*t + rate*t^2/2)), t = n/sample_rate.
// The instantaneous frequency must stay inside (0, sample_rate/2) over the
// whole duration. rate_hz_per_s = 0 reproduces gen_sine bit for bit.
Signal gen_chirp(double f0_hz, double rate_hz_per_s, double duration_s,
                 double sample_rate, double amplitude = 1.0);

// out[n] = in[n] + eps * g[n], g i.i.d. standard normal from `seed`.
// eps = 0 returns a bit-identical copy. eps < 0 is a domain error.
Signal add_noise(const Signal& in, double eps, std::uint64_t seed);

}  // namespace corti

#endif
