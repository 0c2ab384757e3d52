// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include "corti/lift.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corti/error.hpp"

namespace corti {
namespace {

constexpr const char* kModule = "lift";

}  // namespace

std::size_t ChirpinessField::unmasked_count() const {
  std::size_t c = 0;
  for (std::uint8_t m : masked) c += m == 0;
  return c;
}

std::vector<double> ChirpinessField::unmasked_values() const {
  std::vector<double> out;
  out.reserve(nu.size());
  for (std::size_t i = 0; i < nu.size(); ++i) {
    if (!masked[i]) out.push_back(nu[i]);
  }
  return out;
}

ChirpinessField chirpiness_field(const Spectrogram& spec, double eta) {
  spec.validate();
  if (!(eta >= 0.0)) throw Error(kModule, "mask threshold must be >= 0");
  if (spec.n_frames < 2 || spec.n_bins < 2) {
    throw Error(kModule, "need at least 2 frames and 2 bins for gradients");
  }
  const int nf = spec.n_frames;
  const int nb = spec.n_bins;
  const double dt = spec.hop_seconds();
  const double df = spec.bin_hz();

  ChirpinessField field;
  field.n_frames = nf;
  field.n_bins = nb;
  field.frame_times = spec.frame_times;
  field.bin_freqs = spec.bin_freqs;
  const std::size_t total = static_cast<std::size_t>(nf) * nb;
  field.nu.assign(total, 0.0);
  field.masked.assign(total, 0);
  field.grad_tau.resize(total);
  field.grad_omega.resize(total);

  std::vector<double> mag(total);
  for (std::size_t i = 0; i < total; ++i) mag[i] = std::abs(spec.values[i]);

  auto at = [&](int i, int j) { return mag[static_cast<std::size_t>(i) * nb + j]; };

  double max_gw = 0.0;
  for (int i = 0; i < nf; ++i) {
    for (int j = 0; j < nb; ++j) {
      // Central differences on the interior, one-sided on the border.
      double gt =
          i == 0        ? (at(1, j) - at(0, j)) / dt
          : i == nf - 1 ? (at(nf - 1, j) - at(nf - 2, j)) / dt
                        : (at(i + 1, j) - at(i - 1, j)) / (2.0 * dt);
      double gw =
          j == 0        ? (at(i, 1) - at(i, 0)) / df
          : j == nb - 1 ? (at(i, nb - 1) - at(i, nb - 2)) / df
                        : (at(i, j + 1) - at(i, j - 1)) / (2.0 * df);
      std::size_t idx = field.idx(i, j);
      field.grad_tau[idx] = gt;
      field.grad_omega[idx] = gw;
      max_gw = std::max(max_gw, std::abs(gw));
    }
  }

  // The level-line slope nu = -grad_tau/grad_omega is meaningless where the
  // frequency gradient vanishes; such cells are masked, not given a value.
  const double threshold = eta * max_gw;
  for (std::size_t idx = 0; idx < total; ++idx) {
    if (std::abs(field.grad_omega[idx]) <= threshold) {
      field.masked[idx] = 1;
    } else {
      field.nu[idx] = -field.grad_tau[idx] / field.grad_omega[idx];
    }
  }
  return field;
}

double NuGrid::spacing() const {
  return centers.size() > 1 ? half_width / ((centers.size() - 1) / 2) : 0.0;
}

int NuGrid::nearest_slot(double nu) const {
  const int m = (size() - 1) / 2;
  double step = spacing();
  if (!(step > 0.0)) return m;
  long k = m + std::lround((nu - fit.x0) / step);
  return static_cast<int>(std::clamp(k, 0L, static_cast<long>(size() - 1)));
}

NuGrid build_nu_grid(const ChirpinessField& field, double p, int n_nu) {
  if (n_nu < 3 || n_nu % 2 == 0) {
    throw Error(kModule, "slot count must be odd and >= 3, got " +
                             std::to_string(n_nu));
  }
  std::vector<double> samples = field.unmasked_values();
  if (samples.size() < 100) {
    throw Error(kModule,
                "only " + std::to_string(samples.size()) +
                    " unmasked chirpiness samples; a longer signal is needed "
                    "for a usable fit");
  }
  NuGrid grid;
  grid.fit = fit_cauchy(samples);
  grid.p_value = p;
  if (!(grid.fit.gamma > 0.0)) {
    throw Error(kModule,
                "chirpiness scale is degenerate (all samples equal); a signal "
                "with some frequency variation is needed");
  }
  grid.half_width = cauchy_interval_half_width(grid.fit, p);
  grid.centers.resize(n_nu);
  const int m = (n_nu - 1) / 2;
  const double step = grid.half_width / m;
  // Built symmetrically around x0 so centers[m+k] - x0 == x0 - centers[m-k]
  // exactly, and the boundary slots sit exactly on the interval ends.
  for (int k = 0; k < n_nu; ++k) {
    grid.centers[k] = grid.fit.x0 + (k - m) * step;
  }
  return grid;
}

LiftedImage lift(const Spectrogram& spec, const ChirpinessField& field,
                 const NuGrid& grid) {
  if (field.n_frames != spec.n_frames || field.n_bins != spec.n_bins) {
    throw Error(kModule, "chirpiness field shape does not match spectrogram");
  }
  if (grid.size() < 3) throw Error(kModule, "nu grid too small");

  LiftedImage img;
  img.n_frames = spec.n_frames;
  img.n_bins = spec.n_bins;
  img.n_nu = grid.size();
  img.frame_times = spec.frame_times;
  img.bin_freqs = spec.bin_freqs;
  img.nu_centers = grid.centers;
  img.config = spec.config;
  img.sample_rate = spec.sample_rate;
  img.values.assign(static_cast<std::size_t>(img.n_frames) * img.plane_size(),
                    {0.0, 0.0});

  const int central = (grid.size() - 1) / 2;
  for (int i = 0; i < img.n_frames; ++i) {
    for (int j = 0; j < img.n_bins; ++j) {
      std::size_t idx = field.idx(i, j);
      int slot = field.masked[idx] ? central : grid.nearest_slot(field.nu[idx]);
      img.at(i, slot, j) = spec.at(i, j);
    }
  }
  return img;
}

Spectrogram project(const LiftedImage& image) {
  Spectrogram spec;
  spec.n_frames = image.n_frames;
  spec.n_bins = image.n_bins;
  spec.frame_times = image.frame_times;
  spec.bin_freqs = image.bin_freqs;
  spec.config = image.config;
  spec.sample_rate = image.sample_rate;
  spec.values.assign(static_cast<std::size_t>(spec.n_frames) * spec.n_bins,
                     {0.0, 0.0});
  for (int i = 0; i < image.n_frames; ++i) {
    const std::complex<double>* frame = image.frame(i);
    for (int q = 0; q < image.n_nu; ++q) {
      const std::complex<double>* row = frame + static_cast<std::size_t>(q) * image.n_bins;
      std::complex<double>* out = &spec.at(i, 0);
      for (int j = 0; j < image.n_bins; ++j) out[j] += row[j];
    }
  }
  return spec;
}

}  // namespace corti
