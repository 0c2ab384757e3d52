// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include "corti/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <json.hpp>

#include "corti/error.hpp"

namespace corti {
namespace {

constexpr const char* kModule = "pipeline";

using ordered_json = nlohmann::ordered_json;

}  // namespace

std::string RunReport::to_json() const {
  ordered_json j;
  j["stft"] = {{"window_size", stft.window_size},
               {"hop", stft.hop},
               {"window_kind", window_kind_name(stft.window_kind)},
               {"sample_rate", sample_rate}};
  j["lift"] = {{"eta", lift.eta},
               {"p_value", lift.p_value},
               {"n_nu", lift.n_nu}};
  j["kernel"] = {{"delta_s", kernel_delta},
                 {"b", kernel_b},
                 {"delta_auto", kernel_delta_auto},
                 {"b_auto", kernel_b_auto}};
  j["wc"] = {{"alpha", wc.alpha},     {"beta", wc.beta},
             {"gamma", wc.gamma},     {"kappa", wc.kappa},
             {"delta_s", wc.delta},   {"delta_auto", wc_delta_auto},
             {"substeps", wc.substeps}};
  j["mix"] = mix;
  j["chirpiness"] = {{"x0", chirpiness.fit.x0},
                     {"gamma", chirpiness.fit.gamma},
                     {"n_samples", n_unmasked},
                     {"ks_statistic", chirpiness.ks},
                     {"coverage", chirpiness.coverage_p},
                     {"coverage_level", chirpiness.p_used},
                     {"quantile_convention", kQuantileConvention}};
  j["nu_grid"] = {{"half_width", nu_half_width}, {"spacing", nu_spacing}};
  j["kernel_diagnostics"] = {{"rows", kernel_diag.n_rows},
                             {"low_mass_rows", kernel_diag.low_mass_rows},
                             {"offgrid_rows", kernel_diag.offgrid_rows},
                             {"min_raw_row_sum", kernel_diag.min_raw_row_sum}};
  j["gain_estimate"] = gain_estimate;
  return j.dump(2);
}

ProcessResult process(const Signal& signal, const PipelineConfig& config,
                      bool trace_energy) {
  if (!(config.mix >= 0.0 && config.mix <= 1.0)) {
    throw Error(kModule, "mix must lie in [0, 1]");
  }
  if (!(signal.sample_rate > 0.0)) {
    throw Error(kModule, "input signal has no sample rate");
  }
  StftConfig stft_cfg = config.stft.resolve(signal.sample_rate);
  if (signal.samples.size() <
      static_cast<std::size_t>(4) * stft_cfg.window_size) {
    throw Error(kModule, "input (" + std::to_string(signal.samples.size()) +
                             " samples) must cover at least 4 analysis "
                             "windows (" +
                             std::to_string(4 * stft_cfg.window_size) + ")");
  }

  Spectrogram spec = stft(signal, stft_cfg);

  // Every stage maps zero to zero, but the chirpiness fit needs energy to
  // estimate anything; a silent input short-circuits to a silent output
  // instead of tripping the too-few-samples error meant for short signals.
  bool silent = true;
  for (const std::complex<double>& v : spec.values) {
    if (v != std::complex<double>{0.0, 0.0}) {
      silent = false;
      break;
    }
  }
  if (silent) {
    ProcessResult result;
    result.output.sample_rate = signal.sample_rate;
    result.output.samples.assign(signal.samples.size(), 0.0f);
    if (trace_energy) result.energy_trace.assign(spec.n_frames, 0.0);
    RunReport& rep = result.report;
    rep.stft = stft_cfg;
    rep.sample_rate = signal.sample_rate;
    rep.lift = config.lift;
    rep.wc.alpha = config.wc.alpha;
    rep.wc.beta = config.wc.beta;
    rep.wc.gamma = config.wc.gamma;
    rep.wc.kappa = config.wc.kappa;
    rep.wc.delta = config.wc.delta.value_or(spec.hop_seconds());
    rep.wc.substeps = config.wc.substeps;
    rep.wc_delta_auto = !config.wc.delta.has_value();
    rep.kernel_delta = config.kernel.delta.value_or(rep.wc.delta);
    rep.kernel_b = config.kernel.b.value_or(0.0);
    rep.kernel_delta_auto = !config.kernel.delta.has_value();
    rep.kernel_b_auto = !config.kernel.b.has_value();
    rep.mix = config.mix;
    rep.chirpiness.p_used = config.lift.p_value;
    return result;
  }

  ChirpinessField field = chirpiness_field(spec, config.lift.eta);
  NuGrid grid = build_nu_grid(field, config.lift.p_value, config.lift.n_nu);
  LiftedImage img = lift(spec, field, grid);

  const double hop_s = spec.hop_seconds();
  WCParams wc;
  wc.alpha = config.wc.alpha;
  wc.beta = config.wc.beta;
  wc.gamma = config.wc.gamma;
  wc.kappa = config.wc.kappa;
  wc.delta = config.wc.delta.value_or(hop_s);
  wc.substeps = config.wc.substeps;

  // The kernel's transition time defaults to the interaction delay (the
  // influence the delayed field exerts is the one that had `delta` seconds
  // to spread); its diffusion defaults to a spread of 2 nu slots per delta.
  KernelParams kp;
  kp.delta = config.kernel.delta.value_or(wc.delta);
  const double dnu = grid.spacing();
  kp.b = config.kernel.b.value_or(2.0 * dnu * dnu / kp.delta);

  KernelOperator op =
      KernelOperator::discretize(spec.bin_freqs, grid.centers, kp);

  ProcessResult result;
  LiftedImage act = solve(img, wc, op,
                          trace_energy ? &result.energy_trace : nullptr);
  Signal out = istft(project(act));
  out.samples.resize(signal.samples.size(), 0.0f);

  if (config.mix < 1.0) {
    Signal base = istft(spec);
    base.samples.resize(signal.samples.size(), 0.0f);
    for (std::size_t n = 0; n < out.samples.size(); ++n) {
      out.samples[n] = static_cast<float>(
          config.mix * out.samples[n] + (1.0 - config.mix) * base.samples[n]);
    }
  }

  // Least-squares scalar fit of the output against the input; surfaces the
  // alpha/beta amplitude trade-off instead of silently normalizing.
  double num = 0.0, den = 0.0;
  for (std::size_t n = 0; n < out.samples.size(); ++n) {
    num += static_cast<double>(out.samples[n]) * signal.samples[n];
    den += static_cast<double>(signal.samples[n]) * signal.samples[n];
  }

  RunReport& rep = result.report;
  rep.stft = stft_cfg;
  rep.sample_rate = signal.sample_rate;
  rep.lift = config.lift;
  rep.kernel_delta = kp.delta;
  rep.kernel_b = kp.b;
  rep.kernel_delta_auto = !config.kernel.delta.has_value();
  rep.kernel_b_auto = !config.kernel.b.has_value();
  rep.wc = wc;
  rep.wc_delta_auto = !config.wc.delta.has_value();
  rep.mix = config.mix;
  std::vector<double> nu_samples = field.unmasked_values();
  rep.chirpiness = goodness(nu_samples, grid.fit, config.lift.p_value);
  rep.n_unmasked = nu_samples.size();
  rep.nu_half_width = grid.half_width;
  rep.nu_spacing = grid.spacing();
  rep.kernel_diag = op.diagnostics();
  rep.gain_estimate = den > 0.0 ? num / den : 0.0;

  result.output = std::move(out);
  return result;
}

}  // namespace corti
