// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include "corti/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "corti/error.hpp"
#include "rng.hpp"

namespace corti {
namespace {

constexpr const char* kModule = "kernel";

void check_axis(std::span<const double> axis, const char* name) {
  if (axis.size() < 3) {
    throw Error(kModule, std::string(name) + " axis needs >= 3 points");
  }
  const double dx = axis[1] - axis[0];
  if (!(dx > 0.0) || !std::isfinite(dx)) {
    throw Error(kModule, std::string(name) + " axis is not increasing");
  }
  const double scale =
      std::max({std::abs(axis.front()), std::abs(axis.back()), dx});
  for (std::size_t i = 1; i < axis.size(); ++i) {
    if (std::abs(axis[i] - axis[i - 1] - dx) > 1e-9 * scale) {
      throw Error(kModule, std::string(name) + " axis is not uniform");
    }
  }
}

}  // namespace

void KernelParams::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw Error(kModule, "transition time must be positive");
  }
  if (!(b > 0.0) || !std::isfinite(b)) {
    throw Error(kModule, "diffusion strength must be positive");
  }
}

double kolmogorov_density(double omega, double nu, double omega_src,
                          double nu_src, const KernelParams& params) {
  const double d = params.delta;
  const double bd = params.b * d;
  const double zw = omega - omega_src - nu_src * d;
  const double zv = nu - nu_src;
  const double e =
      3.0 * zw * zw / (bd * d * d) - 3.0 * zw * zv / (bd * d) + zv * zv / bd;
  return std::sqrt(3.0) / (2.0 * M_PI * bd * d) * std::exp(-e);
}

KernelOperator KernelOperator::discretize(std::span<const double> omega_axis,
                                          std::span<const double> nu_axis,
                                          const KernelParams& params) {
  params.validate();
  check_axis(omega_axis, "omega");
  check_axis(nu_axis, "nu");

  KernelOperator op;
  op.params_ = params;
  op.omega_axis_.assign(omega_axis.begin(), omega_axis.end());
  op.nu_axis_.assign(nu_axis.begin(), nu_axis.end());

  const int nw = op.n_omega();
  const int nv = op.n_nu();
  const double dw = omega_axis[1] - omega_axis[0];
  const double dv = nu_axis[1] - nu_axis[0];
  const double sigma_nu = std::sqrt(2.0 * params.b * params.delta);
  const double sigma_om =
      std::sqrt(2.0 * params.b * params.delta * params.delta * params.delta / 3.0);

  // Stencils are truncated at 6 sigma of each marginal (< 1e-8 mass) and
  // clamped to the grid span; a fully off-grid row is caught below via its
  // zero sum.
  const int rv = static_cast<int>(std::ceil(6.0 * sigma_nu / dv));
  for (int q = 0; q < nv; ++q) {
    const double drift = nu_axis[q] * params.delta;  // mean omega displacement
    int d_lo = static_cast<int>(std::floor((drift - 6.0 * sigma_om) / dw));
    int d_hi = static_cast<int>(std::ceil((drift + 6.0 * sigma_om) / dw));
    d_lo = std::clamp(d_lo, -(nw - 1), nw - 1);
    d_hi = std::clamp(d_hi, -(nw - 1), nw - 1);
    for (int r = std::max(0, q - rv); r <= std::min(nv - 1, q + rv); ++r) {
      Stencil st;
      st.nu_src = q;
      st.nu_dst = r;
      st.d_min = d_lo;
      st.taps.resize(static_cast<std::size_t>(d_hi - d_lo) + 1);
      for (int d = d_lo; d <= d_hi; ++d) {
        st.taps[d - d_lo] = kolmogorov_density(d * dw, nu_axis[r], 0.0,
                                               nu_axis[q], params) *
                            dw * dv;
      }
      op.stencils_.push_back(std::move(st));
    }
  }

  // Raw mass reaching the grid from each source cell, via per-stencil prefix
  // sums (the in-grid destination range depends on the source bin).
  std::vector<double> row_sum(static_cast<std::size_t>(nv) * nw, 0.0);
  std::vector<double> prefix;
  for (const Stencil& st : op.stencils_) {
    const int taps = static_cast<int>(st.taps.size());
    prefix.assign(static_cast<std::size_t>(taps) + 1, 0.0);
    for (int k = 0; k < taps; ++k) prefix[k + 1] = prefix[k] + st.taps[k];
    double* row = row_sum.data() + static_cast<std::size_t>(st.nu_src) * nw;
    for (int i = 0; i < nw; ++i) {
      int lo = std::max(st.d_min, -i);
      int hi = std::min(st.d_min + taps - 1, nw - 1 - i);
      if (lo <= hi) row[i] += prefix[hi - st.d_min + 1] - prefix[lo - st.d_min];
    }
  }

  op.inv_row_sum_.resize(row_sum.size());
  op.diag_.n_rows = static_cast<int>(row_sum.size());
  op.diag_.min_raw_row_sum = row_sum.empty() ? 0.0 : row_sum[0];
  for (std::size_t c = 0; c < row_sum.size(); ++c) {
    const double s = row_sum[c];
    op.diag_.min_raw_row_sum = std::min(op.diag_.min_raw_row_sum, s);
    if (s < 0.5) ++op.diag_.low_mass_rows;
    if (s > 0.0) {
      op.inv_row_sum_[c] = 1.0 / s;
    } else {
      // Nothing of this source's mass lands on the grid (extreme drift).
      // Routing it to itself keeps the operator mass-preserving; the count
      // is surfaced so a misconfigured grid is visible.
      op.inv_row_sum_[c] = 0.0;
      op.identity_.push_back(static_cast<std::uint32_t>(c));
      ++op.diag_.offgrid_rows;
    }
  }
  return op;
}

void KernelOperator::apply(const std::complex<double>* in,
                           std::complex<double>* out) const {
  const int nw = n_omega();
  const std::size_t cells = static_cast<std::size_t>(n_nu()) * nw;

  // Row normalization folded into the source field: g = in / raw_row_sum.
  // The remaining work is pure shifted AXPY over contiguous doubles.
  std::vector<std::complex<double>> scaled(cells);
  for (std::size_t c = 0; c < cells; ++c) scaled[c] = in[c] * inv_row_sum_[c];
  std::fill(out, out + cells, std::complex<double>{0.0, 0.0});

  for (const Stencil& st : stencils_) {
    const double* src = reinterpret_cast<const double*>(
        scaled.data() + static_cast<std::size_t>(st.nu_src) * nw);
    double* dst =
        reinterpret_cast<double*>(out + static_cast<std::size_t>(st.nu_dst) * nw);
    const int taps = static_cast<int>(st.taps.size());
    for (int k = 0; k < taps; ++k) {
      const int d = st.d_min + k;
      const int lo = std::max(0, -d);
      const int hi = std::min(nw, nw - d);
      if (lo >= hi) continue;
      const double t = st.taps[k];
      const double* s = src + 2 * lo;
      double* o = dst + 2 * (lo + d);
      const int n2 = 2 * (hi - lo);
      for (int m = 0; m < n2; ++m) o[m] += t * s[m];
    }
  }
  for (std::uint32_t c : identity_) out[c] += in[c];
}

void KernelOperator::apply(std::span<const std::complex<double>> in,
                           std::span<std::complex<double>> out) const {
  const std::size_t cells = static_cast<std::size_t>(n_nu()) * n_omega();
  if (in.size() != cells || out.size() != cells) {
    throw Error(kModule, "field shape does not match the operator grid");
  }
  apply(in.data(), out.data());
}

std::vector<double> KernelOperator::row(int omega_src, int nu_src) const {
  const int nw = n_omega();
  const int nv = n_nu();
  if (omega_src < 0 || omega_src >= nw || nu_src < 0 || nu_src >= nv) {
    throw Error(kModule, "source cell outside the grid");
  }
  std::vector<double> out(static_cast<std::size_t>(nv) * nw, 0.0);
  const std::size_t cell = static_cast<std::size_t>(nu_src) * nw + omega_src;
  const double inv = inv_row_sum_[cell];
  if (inv == 0.0) {
    out[cell] = 1.0;
    return out;
  }
  for (const Stencil& st : stencils_) {
    if (st.nu_src != nu_src) continue;
    double* dst_row = out.data() + static_cast<std::size_t>(st.nu_dst) * nw;
    for (int k = 0; k < static_cast<int>(st.taps.size()); ++k) {
      const int dst = omega_src + st.d_min + k;
      if (dst >= 0 && dst < nw) dst_row[dst] += st.taps[k] * inv;
    }
  }
  return out;
}

McMoments mc_oracle(double omega_src, double nu_src, const KernelParams& params,
                    long n_paths, int n_steps, std::uint64_t seed) {
  params.validate();
  if (n_paths < 10000) throw Error(kModule, "need at least 1e4 paths");
  if (n_steps < 100) throw Error(kModule, "need at least 100 steps");

  const double dt = params.delta / n_steps;
  const double diff = std::sqrt(2.0 * params.b * dt);
  // Accumulate deviations from the known mean so the variance sums carry no
  // mean^2 bulk to cancel.
  const double om_c = omega_src + nu_src * params.delta;
  double s_om = 0.0, s_nu = 0.0, s_om2 = 0.0, s_nu2 = 0.0, s_onu = 0.0;

  detail::NormalRng rng(seed);
  for (long p = 0; p < n_paths; ++p) {
    double nu = nu_src;
    double om = omega_src;
    for (int s = 0; s < n_steps; ++s) {
      const double nu_next = nu + diff * rng();
      // Trapezoid in the omega quadrature: with the left-endpoint rule the
      // discrete Var(omega) is biased low by 1.5/n_steps relative, which at
      // the minimum step count would swamp a 4/sqrt(n_paths) comparison.
      om += dt * 0.5 * (nu + nu_next);
      nu = nu_next;
    }
    const double a = om - om_c;
    const double v = nu - nu_src;
    s_om += a;
    s_nu += v;
    s_om2 += a * a;
    s_nu2 += v * v;
    s_onu += a * v;
  }

  const double n = static_cast<double>(n_paths);
  McMoments m;
  m.n_paths = n_paths;
  const double ma = s_om / n;
  const double mv = s_nu / n;
  m.mean_omega = om_c + ma;
  m.mean_nu = nu_src + mv;
  m.var_omega = s_om2 / n - ma * ma;
  m.var_nu = s_nu2 / n - mv * mv;
  m.cov = s_onu / n - ma * mv;
  return m;
}

}  // namespace corti
