// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_WC_HPP
#define CORTI_WC_HPP

#include <complex>
#include <vector>

#include "corti/kernel.hpp"
#include "corti/lift.hpp"

namespace corti {

// Defaults keep the rest state stable: the delayed feedback loop has small-
// signal gain gamma*kappa/alpha, and above 1 any nonzero cell self-excites
// until the sigmoid clamps, turning the medium into a pattern generator.
struct WCParams {
  double alpha = 20.0;  // leak rate, 1/s
  double beta = 1.0;    // input gain, 1/s
  double gamma = 2.0;   // interaction gain, 1/s; 0 disables the coupling
  double kappa = 2.0;   // sigmoid slope
  double delta = 0.0;   // interaction delay, seconds
  int substeps = 8;     // Euler steps per frame

  void validate(double hop_seconds) const;
};

// Modulus clamp with phase pass-through:
// sigmoid(rho e^{i theta}) = min(1, max(0, kappa rho)) e^{i theta}; 0 at 0.
std::complex<double> sigmoid(std::complex<double> z, double kappa);

// Integrates  d a/dt = -alpha a + beta I(t) + gamma K[sigmoid(a(t - delta))]
// with a == 0 for t <= 0, I held constant over each input frame
// (zero-order hold), explicit Euler with dt = hop/substeps. The delay line
// stores activations at substep resolution; delta must be a whole number of
// hops so delayed reads land exactly on stored states. The activation
// recorded for frame i is a((i+1) hop), the end of the interval driven by
// frame i, so a fast-relaxing solver (alpha*hop >> 1) reproduces its input
// rather than a one-frame-late copy.
//
// energy_trace, when given, receives sum |a|^2 per recorded frame.
LiftedImage solve(const LiftedImage& input, const WCParams& params,
                  const KernelOperator& op,
                  std::vector<double>* energy_trace = nullptr);

}  // namespace corti

#endif
