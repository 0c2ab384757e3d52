// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_CHIRPSTATS_HPP
#define CORTI_CHIRPSTATS_HPP

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "corti/stft.hpp"

namespace corti {

// Location/scale of a Cauchy law fitted by robust moments:
// x0 = sample median, gamma = half the interquartile range.
// Quantiles interpolate linearly between order statistics (the numpy/R
// default, "type 7"); the convention is recorded in run reports because it
// moves gamma by O(1/n) and the acceptance checks pin it.
struct CauchyFit {
  double x0 = 0.0;
  double gamma = 0.0;
  std::size_t n = 0;
};

inline constexpr const char* kQuantileConvention = "type7-linear";

// Requires at least 4 samples, all finite (NaNs are a domain error that
// reports how many were seen, rather than a silent drop).
CauchyFit fit_cauchy(std::span<const double> samples);

double cauchy_cdf(double x, const CauchyFit& fit);

// Central interval covering probability p: x0 +- gamma*tan(p*pi/2).
// p must lie in (0, 1).
double cauchy_interval_half_width(const CauchyFit& fit, double p);

// Exact one-sample Kolmogorov-Smirnov statistic against the fitted law,
// max_i max(i/n - F(x_(i)), F(x_(i)) - (i-1)/n) over sorted samples.
double ks_statistic(std::span<const double> samples, const CauchyFit& fit);

// Fraction of samples inside the central p-interval (inclusive bounds).
double coverage(std::span<const double> samples, const CauchyFit& fit,
                double p);

struct GoodnessReport {
  CauchyFit fit;
  double ks = 0.0;
  double coverage_p = 0.0;  // empirical mass of the central p-interval
  double p_used = 0.0;
};

GoodnessReport goodness(std::span<const double> samples, const CauchyFit& fit,
                        double p);

// One corpus file's worth of chirpiness statistics. `ok` is false when the
// file could not be processed; `error` then carries the reason and the
// numeric fields are zero.
struct CorpusRow {
  std::string path;
  bool ok = false;
  std::string error;
  std::size_t n_samples = 0;
  CauchyFit fit;
  double ks = 0.0;
  double coverage95 = 0.0;
};

// Runs stft -> chirpiness -> fit on every file, in input order. Per-file
// failures are recorded in the row, not thrown, so one bad file cannot sink
// a corpus run.
std::vector<CorpusRow> corpus_summary(const std::vector<std::string>& paths,
                                      const StftOptions& options, double eta);

std::string corpus_csv(const std::vector<CorpusRow>& rows);

}  // namespace corti

#endif
