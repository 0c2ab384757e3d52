// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_EXPERIMENTS_HPP
#define CORTI_EXPERIMENTS_HPP

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "corti/pipeline.hpp"
#include "corti/signal.hpp"

namespace corti {

// Mean absolute difference, sum |a-b| / N.
double metric_l1(const Signal& a, const Signal& b);

// Population standard deviation of the sample-wise difference.
double metric_std(const Signal& a, const Signal& b);

struct SweepRow {
  double eps = 0.0;
  std::uint64_t seed = 0;  // the row's own seed (base + index)
  double l1_before = 0.0;   // noisy vs clean input
  double std_before = 0.0;
  double l1_after = 0.0;    // processed-noisy vs processed-clean
  double std_after = 0.0;
  double l1_after_vs_clean = 0.0;  // processed-noisy vs clean input
  double std_after_vs_clean = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  std::uint64_t base_seed = 0;
  PipelineConfig config;
};

// 12 log-spaced noise levels covering inaudible (1e-3) to severe (0.3)
// for unit-scale signals.
std::vector<double> default_eps_grid();

// Processes the clean signal once, then for each eps adds fresh seeded noise
// (seed + row index), processes, and records both comparison conventions:
// distances between processed outputs, and processed-noisy against the clean
// input. eps values must be strictly increasing and non-negative.
SweepResult denoise_sweep(const Signal& signal, std::span<const double> eps,
                          const PipelineConfig& config, std::uint64_t seed);

// CSV with a header row; %.12g numbers, no locale, '\n' endings, so reruns
// byte-match.
std::string sweep_csv(const SweepResult& result);

}  // namespace corti

#endif
