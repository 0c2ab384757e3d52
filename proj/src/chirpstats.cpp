// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include "corti/chirpstats.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "corti/error.hpp"
#include "corti/lift.hpp"
#include "corti/wav.hpp"
#include "text.hpp"

namespace corti {
namespace {

constexpr const char* kModule = "chirpstats";

void require_scale(const CauchyFit& fit) {
  if (!(fit.gamma > 0.0)) {
    throw Error(kModule, "fit has zero scale (all samples equal?)");
  }
}

// Linear interpolation between order statistics ("type 7"): the convention
// shared by numpy and R defaults. h = (n-1)p lands between floor(h) and
// floor(h)+1.
double quantile_sorted(const std::vector<double>& sorted, double p) {
  const std::size_t n = sorted.size();
  double h = static_cast<double>(n - 1) * p;
  std::size_t lo = static_cast<std::size_t>(h);
  if (lo + 1 >= n) return sorted.back();
  return sorted[lo] + (h - lo) * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace

CauchyFit fit_cauchy(std::span<const double> samples) {
  std::size_t nan_count = 0;
  for (double v : samples) {
    if (std::isnan(v)) ++nan_count;
  }
  if (nan_count > 0) {
    throw Error(kModule, std::to_string(nan_count) + " of " +
                             std::to_string(samples.size()) +
                             " samples are NaN; refusing to fit");
  }
  if (samples.size() < 4) {
    throw Error(kModule, "need at least 4 samples, got " +
                             std::to_string(samples.size()));
  }
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());

  CauchyFit fit;
  fit.n = s.size();
  const std::size_t n = s.size();
  fit.x0 = n % 2 == 1 ? s[n / 2] : 0.5 * (s[n / 2 - 1] + s[n / 2]);
  fit.gamma = 0.5 * (quantile_sorted(s, 0.75) - quantile_sorted(s, 0.25));
  return fit;
}

double cauchy_cdf(double x, const CauchyFit& fit) {
  require_scale(fit);
  return 0.5 + std::atan((x - fit.x0) / fit.gamma) / M_PI;
}

double cauchy_interval_half_width(const CauchyFit& fit, double p) {
  require_scale(fit);
  if (!(p > 0.0 && p < 1.0)) {
    throw Error(kModule, "interval level must lie in (0, 1)");
  }
  return fit.gamma * std::tan(p * M_PI / 2.0);
}

double ks_statistic(std::span<const double> samples, const CauchyFit& fit) {
  require_scale(fit);
  if (samples.empty()) throw Error(kModule, "KS statistic needs samples");
  std::vector<double> s(samples.begin(), samples.end());
  std::sort(s.begin(), s.end());
  // The sup of |F_n - F| over a step function vs a continuous CDF is
  // attained at a sample point, approached from one side or the other.
  const double n = static_cast<double>(s.size());
  double d = 0.0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    double f = cauchy_cdf(s[i], fit);
    d = std::max(d, std::max((i + 1) / n - f, f - i / n));
  }
  return d;
}

double coverage(std::span<const double> samples, const CauchyFit& fit,
                double p) {
  double half = cauchy_interval_half_width(fit, p);
  if (samples.empty()) throw Error(kModule, "coverage needs samples");
  std::size_t inside = 0;
  for (double v : samples) {
    if (v >= fit.x0 - half && v <= fit.x0 + half) ++inside;
  }
  return static_cast<double>(inside) / static_cast<double>(samples.size());
}

GoodnessReport goodness(std::span<const double> samples, const CauchyFit& fit,
                        double p) {
  GoodnessReport rep;
  rep.fit = fit;
  rep.ks = ks_statistic(samples, fit);
  rep.coverage_p = coverage(samples, fit, p);
  rep.p_used = p;
  return rep;
}

std::vector<CorpusRow> corpus_summary(const std::vector<std::string>& paths,
                                      const StftOptions& options, double eta) {
  std::vector<CorpusRow> rows;
  rows.reserve(paths.size());
  for (const std::string& path : paths) {
    CorpusRow row;
    row.path = path;
    try {
      Signal sig = read_wav(path);
      Spectrogram spec = stft(sig, options.resolve(sig.sample_rate));
      ChirpinessField field = chirpiness_field(spec, eta);
      std::vector<double> nu = field.unmasked_values();
      row.n_samples = nu.size();
      row.fit = fit_cauchy(nu);
      row.ks = ks_statistic(nu, row.fit);
      row.coverage95 = coverage(nu, row.fit, 0.95);
      row.ok = true;
    } catch (const Error& e) {
      // A bad file yields a flagged row; the rest of the corpus proceeds.
      row.ok = false;
      row.error = e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string corpus_csv(const std::vector<CorpusRow>& rows) {
  using detail::fmt_g;
  std::string out = "path,ok,x0,gamma,ks,coverage95,n_samples,error\n";
  for (const CorpusRow& r : rows) {
    std::string err = r.error;
    for (char& c : err) {
      if (c == ',' || c == '\n' || c == '"') c = ';';
    }
    out += r.path + ',' + (r.ok ? "1" : "0") + ',' + fmt_g(r.fit.x0) + ',' +
           fmt_g(r.fit.gamma) + ',' + fmt_g(r.ks) + ',' + fmt_g(r.coverage95) +
           ',' + std::to_string(r.n_samples) + ',' + err + '\n';
  }
  return out;
}

}  // namespace corti
