// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_KERNEL_HPP
#define CORTI_KERNEL_HPP

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace corti {

struct KernelParams {
  double delta = 0.0;  // transition time, seconds
  double b = 0.0;      // diffusion strength, (Hz/s)^2 per second

  void validate() const;  // both must be > 0 and finite
};

// Transition density at time delta of the degenerate diffusion
//   d omega = nu dt,   d nu = sqrt(2b) dW,
// i.e. the Gaussian with mean (omega' + nu'*delta, nu') and covariance
// [[2b d^3/3, b d^2], [b d^2, 2b d]]. Closed form:
//   k = sqrt(3)/(2 pi b d^2) * exp(-(3 zw^2/(b d^3) - 3 zw zv/(b d^2)
//                                    + zv^2/(b d)))
// with zw = omega - omega' - nu'*delta, zv = nu - nu'. The diffusion smears
// nu directly and omega only through the drift, hence Var(omega)/Var(nu) =
// delta^2/3 and correlation sqrt(3)/2 regardless of parameters.
double kolmogorov_density(double omega, double nu, double omega_src,
                          double nu_src, const KernelParams& params);

struct KernelDiagnostics {
  int n_rows = 0;
  int low_mass_rows = 0;   // raw (pre-normalization) row sum < 0.5
  int offgrid_rows = 0;    // raw sum == 0; replaced by an identity row
  double min_raw_row_sum = 0.0;
};

// The density discretized as a row-normalized transition operator on
// (nu, omega) fields over uniform axes. The density depends on omega only
// through omega - omega', so one (nu_src, nu_dst) pair needs a single 1-D
// stencil shared by every source bin; apply() is then a handful of shifted
// AXPY passes per pair instead of a dense matrix product.
class KernelOperator {
 public:
  static KernelOperator discretize(std::span<const double> omega_axis,
                                   std::span<const double> nu_axis,
                                   const KernelParams& params);

  // out[nu][omega] = sum over sources of normalized weight * in[src].
  // Both buffers are n_nu * n_omega, omega fastest; out is overwritten.
  void apply(const std::complex<double>* in, std::complex<double>* out) const;
  void apply(std::span<const std::complex<double>> in,
             std::span<std::complex<double>> out) const;

  // Dense normalized row of one source cell, size n_nu * n_omega (omega
  // fastest). Exact view of what apply() uses; meant for tests and dumps.
  std::vector<double> row(int omega_src, int nu_src) const;

  const KernelDiagnostics& diagnostics() const { return diag_; }
  const KernelParams& params() const { return params_; }
  const std::vector<double>& omega_axis() const { return omega_axis_; }
  const std::vector<double>& nu_axis() const { return nu_axis_; }
  int n_omega() const { return static_cast<int>(omega_axis_.size()); }
  int n_nu() const { return static_cast<int>(nu_axis_.size()); }

 private:
  // Destination-bin weights for one (nu_src, nu_dst) pair: dst = src + d for
  // d in [d_min, d_min + taps.size()), weight taps[d - d_min] (raw, i.e.
  // density * cell area; normalization is folded in at apply time).
  struct Stencil {
    int nu_src = 0;
    int nu_dst = 0;
    int d_min = 0;
    std::vector<double> taps;
  };

  KernelParams params_;
  std::vector<double> omega_axis_;
  std::vector<double> nu_axis_;
  std::vector<Stencil> stencils_;
  std::vector<double> inv_row_sum_;       // [nu][omega]; 0 for identity rows
  std::vector<std::uint32_t> identity_;   // flat cell indices of identity rows
  KernelDiagnostics diag_;
};

struct McMoments {
  double mean_omega = 0.0;
  double mean_nu = 0.0;
  double var_omega = 0.0;
  double var_nu = 0.0;
  double cov = 0.0;
  long n_paths = 0;
};

// Euler-Maruyama of the defining SDE, used only as an independent check of
// kolmogorov_density. omega integrates the trapezoid of nu over each step;
// the left-Riemann rule has an O(1/n_steps) variance bias that would eat the
// whole 4/sqrt(n_paths) comparison budget at the minimum step count.
McMoments mc_oracle(double omega_src, double nu_src, const KernelParams& params,
                    long n_paths, int n_steps, std::uint64_t seed);

}  // namespace corti

#endif
