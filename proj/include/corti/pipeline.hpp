// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_PIPELINE_HPP
#define CORTI_PIPELINE_HPP

#include <optional>
#include <string>
#include <vector>

#include "corti/chirpstats.hpp"
#include "corti/kernel.hpp"
#include "corti/lift.hpp"
#include "corti/signal.hpp"
#include "corti/stft.hpp"
#include "corti/wc.hpp"

namespace corti {

struct LiftOptions {
  double eta = 1e-8;     // gradient mask threshold, relative
  double p_value = 0.95;  // Cauchy interval mass covered by the nu grid
  int n_nu = 41;          // odd
};

struct KernelOptions {
  std::optional<double> delta;  // default: one hop
  std::optional<double> b;      // default: 2*(nu spacing)^2/delta
};

struct WcOptions {
  double alpha = 20.0;
  double beta = 1.0;
  double gamma = 2.0;
  double kappa = 2.0;
  std::optional<double> delta;  // default: one hop
  int substeps = 8;
};

struct PipelineConfig {
  StftOptions stft;
  LiftOptions lift;
  KernelOptions kernel;
  WcOptions wc;
  double mix = 1.0;  // 1 = processed, 0 = plain analysis/synthesis round trip
};

// Everything a run actually used, for the JSON report. No hidden defaults:
// optional knobs are resolved here with a flag saying they were derived.
struct RunReport {
  StftConfig stft;
  double sample_rate = 0.0;
  LiftOptions lift;
  double kernel_delta = 0.0;
  double kernel_b = 0.0;
  bool kernel_delta_auto = true;
  bool kernel_b_auto = true;
  WCParams wc;
  bool wc_delta_auto = true;
  double mix = 1.0;
  GoodnessReport chirpiness;
  std::size_t n_unmasked = 0;
  double nu_half_width = 0.0;
  double nu_spacing = 0.0;
  KernelDiagnostics kernel_diag;
  double gain_estimate = 0.0;  // least-squares fit of output against input

  std::string to_json() const;
};

struct ProcessResult {
  Signal output;
  RunReport report;
  std::vector<double> energy_trace;  // filled when trace_energy is set
};

// stft -> chirpiness -> lift -> delayed WC solve -> project -> istft.
// Output length equals input length. The input must cover >= 4 windows so
// the analysis interior exists.
ProcessResult process(const Signal& signal, const PipelineConfig& config,
                      bool trace_energy = false);

}  // namespace corti

#endif
