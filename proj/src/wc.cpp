// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include "corti/wc.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "corti/error.hpp"

namespace corti {
namespace {

constexpr const char* kModule = "wc";

void check_axes(const LiftedImage& input, const KernelOperator& op) {
  if (input.n_bins != op.n_omega() || input.n_nu != op.n_nu()) {
    throw Error(kModule, "lifted image shape does not match the kernel grid");
  }
  for (int j = 0; j < input.n_bins; ++j) {
    if (std::abs(input.bin_freqs[j] - op.omega_axis()[j]) > 1e-9) {
      throw Error(kModule, "frequency axes of image and kernel disagree");
    }
  }
  for (int q = 0; q < input.n_nu; ++q) {
    double scale = std::max(1.0, std::abs(input.nu_centers[q]));
    if (std::abs(input.nu_centers[q] - op.nu_axis()[q]) > 1e-9 * scale) {
      throw Error(kModule, "chirpiness axes of image and kernel disagree");
    }
  }
}

}  // namespace

void WCParams::validate(double hop_seconds) const {
  if (!(alpha > 0.0)) throw Error(kModule, "decay rate must be positive");
  if (!(beta > 0.0)) throw Error(kModule, "input gain must be positive");
  if (!(gamma >= 0.0)) throw Error(kModule, "interaction gain must be >= 0");
  // kappa = 0 is allowed: it zeroes the sigmoid, turning the interaction off.
  if (!(kappa >= 0.0)) throw Error(kModule, "sigmoid slope must be >= 0");
  if (!(delta > 0.0)) throw Error(kModule, "delay must be positive");
  if (substeps < 1) throw Error(kModule, "need at least one substep");
  if (!(hop_seconds > 0.0)) throw Error(kModule, "frame hop must be positive");

  const double dt = hop_seconds / substeps;
  if (!(alpha * dt < 2.0)) {
    throw Error(kModule, "explicit Euler unstable: alpha*dt = " +
                             std::to_string(alpha * dt) +
                             " >= 2; raise substeps or lower alpha");
  }
  const double frames = delta / hop_seconds;
  if (std::abs(frames - std::round(frames)) > 1e-9 * std::max(1.0, frames)) {
    throw Error(kModule, "delay (" + std::to_string(delta) +
                             " s) must be a whole number of frame hops (" +
                             std::to_string(hop_seconds) + " s)");
  }
}

std::complex<double> sigmoid(std::complex<double> z, double kappa) {
  const double rho = std::abs(z);
  if (rho == 0.0) return {0.0, 0.0};
  const double clamped = std::min(1.0, std::max(0.0, kappa * rho));
  return z * (clamped / rho);  // modulus clamped, phase untouched
}

LiftedImage solve(const LiftedImage& input, const WCParams& params,
                  const KernelOperator& op, std::vector<double>* energy_trace) {
  check_axes(input, op);
  if (!(input.sample_rate > 0.0) || input.config.hop <= 0) {
    throw Error(kModule, "lifted image carries no valid frame timing");
  }
  const double hop_s = static_cast<double>(input.config.hop) / input.sample_rate;
  params.validate(hop_s);

  const double dt = hop_s / params.substeps;
  const long delay_frames = std::lround(params.delta / hop_s);
  const long delay_steps = delay_frames * params.substeps;
  const std::size_t plane = input.plane_size();
  const bool coupled = params.gamma > 0.0 && params.kappa > 0.0;

  LiftedImage out = input;
  std::fill(out.values.begin(), out.values.end(), std::complex<double>{0, 0});
  if (energy_trace) energy_trace->assign(input.n_frames, 0.0);

  std::vector<std::complex<double>> a(plane, {0.0, 0.0});
  std::vector<std::complex<double>> sig, inter;
  // History at substep resolution: slot n mod (delay_steps+1) holds a(n*dt).
  // A read of a(t - delta) at step n hits slot n - delay_steps, which is
  // overwritten only after it can no longer be needed.
  std::vector<std::vector<std::complex<double>>> ring;
  if (coupled) {
    sig.resize(plane);
    inter.resize(plane);
    ring.assign(static_cast<std::size_t>(delay_steps) + 1,
                std::vector<std::complex<double>>(plane, {0.0, 0.0}));
  }

  long n = 0;  // global substep index; a holds a(n*dt)
  for (int f = 0; f < input.n_frames; ++f) {
    const std::complex<double>* I = input.frame(f);
    for (int s = 0; s < params.substeps; ++s) {
      if (coupled) {
        const long past = n - delay_steps;
        // a(t) == 0 for t <= 0 covers the pre-history reads.
        if (past > 0) {
          const std::vector<std::complex<double>>& delayed =
              ring[past % (delay_steps + 1)];
          for (std::size_t c = 0; c < plane; ++c) {
            sig[c] = sigmoid(delayed[c], params.kappa);
          }
          op.apply(sig.data(), inter.data());
        } else {
          std::fill(inter.begin(), inter.end(), std::complex<double>{0, 0});
        }
        for (std::size_t c = 0; c < plane; ++c) {
          a[c] += dt * (-params.alpha * a[c] + params.beta * I[c] +
                        params.gamma * inter[c]);
        }
      } else {
        for (std::size_t c = 0; c < plane; ++c) {
          a[c] += dt * (-params.alpha * a[c] + params.beta * I[c]);
        }
      }
      ++n;
      if (coupled) ring[n % (delay_steps + 1)] = a;
    }
    // The recorded activation for frame f is a((f+1)*hop): the state the
    // frame's input drove the field to, not the state it started from.
    std::copy(a.begin(), a.end(), out.frame(f));
    if (energy_trace) {
      double e = 0.0;
      for (const std::complex<double>& v : a) e += std::norm(v);
      (*energy_trace)[f] = e;
    }
  }
  return out;
}

}  // namespace corti
