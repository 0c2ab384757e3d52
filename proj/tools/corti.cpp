// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0
//
// corti: lift-process-project sound transform and its experiment harness.
// Subcommands: synth, process, denoise-sweep, chirpiness, kernel-dump.
// Exit codes: 0 success, 1 usage error, 2 data/processing error.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "corti/config.hpp"
#include "corti/dump.hpp"
#include "corti/error.hpp"
#include "corti/experiments.hpp"
#include "corti/pipeline.hpp"
#include "corti/signal.hpp"
#include "corti/wav.hpp"

namespace {

using corti::Error;
using ordered_json = nlohmann::ordered_json;

// Bad invocations exit 1; bad data exits 2 (corti::Error).
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

corti::WavFormat parse_bits(const std::string& bits) {
  if (bits == "16") return corti::WavFormat::kPcm16;
  if (bits == "24") return corti::WavFormat::kPcm24;
  if (bits == "f32") return corti::WavFormat::kFloat32;
  throw UsageError("--bits must be 16, 24 or f32, got '" + bits + "'");
}

// Flag > CORTI_SEED environment variable > 0.
std::uint64_t resolve_seed(const CLI::App* cmd, std::uint64_t flag_value) {
  if (cmd->count("--seed") > 0) return flag_value;
  const char* env = std::getenv("CORTI_SEED");
  if (env == nullptr || *env == '\0') return 0;
  try {
    return std::stoull(env);
  } catch (const std::exception&) {
    throw UsageError(std::string("CORTI_SEED is not an integer: ") + env);
  }
}

void write_text(const std::string& path, const std::string& text) {
  corti::write_file(path, [&](std::ostream& out) { out << text; });
}

void write_report(const std::string& beside, ordered_json j) {
  write_text(beside + ".report.json", j.dump(2) + "\n");
}

// Pipeline parameters shared by `process` and `denoise-sweep`: a config file
// plus per-parameter override flags, flags winning.
struct PipelineFlags {
  std::string config_path;
  int window_size = 0;
  int hop = 0;
  double window_ms = 0.0;
  int hop_divisor = 0;
  std::string window_kind;
  double eta = 0.0, p_value = 0.0;
  int n_nu = 0;
  double kernel_delta = 0.0, kernel_b = 0.0;
  double alpha = 0.0, beta = 0.0, gamma = 0.0, kappa = 0.0, wc_delta = 0.0;
  int substeps = 0;
  double mix = 0.0;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--config", config_path, "JSON config file");
    cmd->add_option("--window-size", window_size, "analysis window, samples");
    cmd->add_option("--hop", hop, "frame hop, samples");
    cmd->add_option("--window-ms", window_ms,
                    "analysis window, milliseconds (rounded up to a power of "
                    "two; default 23)");
    cmd->add_option("--hop-divisor", hop_divisor,
                    "hop = window/divisor (default 4)");
    cmd->add_option("--window", window_kind, "window taper: hann or rect");
    cmd->add_option("--eta", eta, "gradient mask threshold (default 1e-8)");
    cmd->add_option("--p-value", p_value,
                    "chirpiness interval mass (default 0.95)");
    cmd->add_option("--n-nu", n_nu, "chirpiness slots, odd (default 41)");
    cmd->add_option("--kernel-delta", kernel_delta,
                    "kernel transition time, s (default: the delay)");
    cmd->add_option("--kernel-b", kernel_b,
                    "kernel diffusion strength (default: 2*spacing^2/delta)");
    cmd->add_option("--alpha", alpha, "decay rate, 1/s (default 20)");
    cmd->add_option("--beta", beta, "input gain, 1/s (default 1)");
    cmd->add_option("--gamma", gamma, "interaction gain, 1/s (default 2)");
    cmd->add_option("--kappa", kappa, "sigmoid slope (default 2)");
    cmd->add_option("--wc-delta", wc_delta,
                    "interaction delay, s (default: one hop)");
    cmd->add_option("--substeps", substeps, "Euler substeps per frame (default 8)");
    cmd->add_option("--mix", mix, "processed/passthrough mix in [0,1] (default 1)");
  }

  corti::PipelineConfig resolve(const CLI::App* cmd) const {
    corti::PipelineConfig cfg;
    if (!config_path.empty()) cfg = corti::load_config_file(config_path);
    if (cmd->count("--window-size")) cfg.stft.window_size = window_size;
    if (cmd->count("--hop")) cfg.stft.hop = hop;
    if (cmd->count("--window-ms")) cfg.stft.window_ms = window_ms;
    if (cmd->count("--hop-divisor")) cfg.stft.hop_divisor = hop_divisor;
    if (cmd->count("--window")) {
      auto kind = corti::window_kind_from_name(window_kind);
      if (!kind) throw Error("cli", "unknown window kind '" + window_kind + "'");
      cfg.stft.window_kind = *kind;
    }
    if (cmd->count("--eta")) cfg.lift.eta = eta;
    if (cmd->count("--p-value")) cfg.lift.p_value = p_value;
    if (cmd->count("--n-nu")) cfg.lift.n_nu = n_nu;
    if (cmd->count("--kernel-delta")) cfg.kernel.delta = kernel_delta;
    if (cmd->count("--kernel-b")) cfg.kernel.b = kernel_b;
    if (cmd->count("--alpha")) cfg.wc.alpha = alpha;
    if (cmd->count("--beta")) cfg.wc.beta = beta;
    if (cmd->count("--gamma")) cfg.wc.gamma = gamma;
    if (cmd->count("--kappa")) cfg.wc.kappa = kappa;
    if (cmd->count("--wc-delta")) cfg.wc.delta = wc_delta;
    if (cmd->count("--substeps")) cfg.wc.substeps = substeps;
    if (cmd->count("--mix")) cfg.mix = mix;
    return cfg;
  }
};

int run(int argc, char** argv) {
  CLI::App app{
      "corti: chirpiness-lifted sound processing.\n"
      "Audio is analyzed to a spectrogram, lifted along a third axis of\n"
      "chirpiness (frequency slope), evolved by a delayed neural-field\n"
      "equation with a drift-diffusion coupling kernel, and resynthesized.\n"
      "Multichannel input is averaged to mono."};
  app.require_subcommand(1);
  argv = app.ensure_utf8(argv);

  // ---- synth ----
  CLI::App* synth = app.add_subcommand("synth", "Generate a test WAV");
  double sine_freq = 0.0;
  std::vector<double> chirp;  // f0, rate
  double dur = 1.0, sr = 8000.0, amp = 1.0;
  std::string synth_out, synth_bits = "16";
  auto* sine_opt = synth->add_option("--sine", sine_freq, "sine frequency, Hz");
  auto* chirp_opt =
      synth->add_option("--chirp", chirp, "linear chirp: start Hz, rate Hz/s")
          ->expected(2);
  sine_opt->excludes(chirp_opt);
  synth->add_option("--dur", dur, "duration, s")->required();
  synth->add_option("--sr", sr, "sample rate, Hz")->required();
  synth->add_option("--amp", amp, "amplitude (default 1)");
  synth->add_option("--out", synth_out, "output WAV path")->required();
  synth->add_option("--bits", synth_bits, "sample format: 16, 24, f32");

  // ---- process ----
  CLI::App* proc = app.add_subcommand("process", "Run the transform on a WAV");
  std::string proc_in, proc_out, proc_bits = "16";
  std::string dump_spec, dump_spec_bin, dump_chirp, trace_path;
  PipelineFlags proc_flags;
  proc->add_option("--in", proc_in, "input WAV")->required();
  proc->add_option("--out", proc_out, "output WAV")->required();
  proc->add_option("--bits", proc_bits, "output sample format: 16, 24, f32");
  proc_flags.add_to(proc);
  proc->add_option("--dump-spec", dump_spec, "write input spectrogram CSV here");
  proc->add_option("--dump-spec-bin", dump_spec_bin,
                   "write input spectrogram binary here");
  proc->add_option("--dump-chirpiness", dump_chirp,
                   "write chirpiness field CSV here");
  proc->add_option("--trace-energy", trace_path,
                   "write per-frame activation energy CSV here");

  // ---- denoise-sweep ----
  CLI::App* sweep = app.add_subcommand(
      "denoise-sweep", "Noise-robustness sweep: distances before/after");
  std::string sweep_in, sweep_out;
  std::vector<double> sweep_eps;
  std::uint64_t sweep_seed = 0;
  PipelineFlags sweep_flags;
  sweep->add_option("--in", sweep_in, "input WAV")->required();
  sweep->add_option("--out", sweep_out, "output CSV")->required();
  sweep->add_option("--eps", sweep_eps,
                    "noise levels, ascending (default: 12 log-spaced in "
                    "[1e-3, 0.3])")
      ->delimiter(',');
  sweep->add_option("--seed", sweep_seed,
                    "base noise seed (row i uses seed+i; CORTI_SEED env as "
                    "fallback)");
  sweep_flags.add_to(sweep);

  // ---- chirpiness ----
  CLI::App* corpus = app.add_subcommand(
      "chirpiness", "Fit chirpiness statistics across a corpus of WAVs");
  std::vector<std::string> corpus_files;
  std::string corpus_out;
  double corpus_eta = 1e-8;
  double corpus_window_ms = 23.0;
  int corpus_hop_div = 4;
  corpus->add_option("files", corpus_files, "input WAV files");
  corpus->add_option("--out", corpus_out, "output CSV")->required();
  corpus->add_option("--eta", corpus_eta, "gradient mask threshold");
  corpus->add_option("--window-ms", corpus_window_ms, "analysis window, ms");
  corpus->add_option("--hop-divisor", corpus_hop_div, "hop = window/divisor");

  // ---- kernel-dump ----
  CLI::App* kdump = app.add_subcommand(
      "kernel-dump", "Materialize one row of the discretized coupling kernel");
  double kd_delta = 0.0, kd_b = 0.0;
  double om_min = 0.0, om_max = 0.0, nu_min = 0.0, nu_max = 0.0;
  int n_om = 0, n_nu = 0;
  double src_om = 0.0, src_nu = 0.0;
  std::string kdump_out;
  kdump->add_option("--delta", kd_delta, "transition time, s")->required();
  kdump->add_option("--b", kd_b, "diffusion strength")->required();
  kdump->add_option("--omega-min", om_min, "frequency axis start, Hz")->required();
  kdump->add_option("--omega-max", om_max, "frequency axis end, Hz")->required();
  kdump->add_option("--n-omega", n_om, "frequency axis points")->required();
  kdump->add_option("--nu-min", nu_min, "chirpiness axis start, Hz/s")->required();
  kdump->add_option("--nu-max", nu_max, "chirpiness axis end, Hz/s")->required();
  kdump->add_option("--n-nu", n_nu, "chirpiness axis points")->required();
  kdump->add_option("--src-omega", src_om, "source frequency, Hz (nearest cell)")
      ->required();
  kdump->add_option("--src-nu", src_nu, "source chirpiness, Hz/s (nearest cell)")
      ->required();
  kdump->add_option("--out", kdump_out, "output CSV")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // CLI11's own exit codes collapse onto the documented contract:
    // 0 for --help/--version, 1 for any actual usage problem.
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  if (synth->parsed()) {
    corti::Signal sig;
    ordered_json params;
    if (synth->count("--sine")) {
      sig = corti::gen_sine(sine_freq, dur, sr, amp);
      params = {{"kind", "sine"}, {"freq_hz", sine_freq}};
    } else if (synth->count("--chirp")) {
      sig = corti::gen_chirp(chirp[0], chirp[1], dur, sr, amp);
      params = {{"kind", "chirp"}, {"f0_hz", chirp[0]}, {"rate_hz_s", chirp[1]}};
    } else {
      throw UsageError("synth needs --sine or --chirp");
    }
    params["duration_s"] = dur;
    params["sample_rate"] = sr;
    params["amplitude"] = amp;
    params["bits"] = synth_bits;
    corti::WavWriteStats st = corti::write_wav(sig, synth_out, parse_bits(synth_bits));
    write_report(synth_out, {{"tool", "corti"},
                             {"subcommand", "synth"},
                             {"output", synth_out},
                             {"params", params},
                             {"clipped_samples", st.clipped}});
    return 0;
  }

  if (proc->parsed()) {
    corti::PipelineConfig cfg = proc_flags.resolve(proc);
    corti::Signal in = corti::read_wav(proc_in);
    corti::ProcessResult res = corti::process(in, cfg, !trace_path.empty());
    corti::WavWriteStats st =
        corti::write_wav(res.output, proc_out, parse_bits(proc_bits));

    if (!dump_spec.empty() || !dump_spec_bin.empty() || !dump_chirp.empty()) {
      // Recomputed here so the dumps always describe the analysis input;
      // cheap next to the solve.
      corti::Spectrogram spec =
          corti::stft(in, cfg.stft.resolve(in.sample_rate));
      if (!dump_spec.empty()) {
        corti::write_file(dump_spec, [&](std::ostream& o) {
          corti::spectrogram_csv(spec, o);
        });
      }
      if (!dump_spec_bin.empty()) {
        corti::write_file(dump_spec_bin, [&](std::ostream& o) {
          corti::spectrogram_binary(spec, o);
        });
      }
      if (!dump_chirp.empty()) {
        corti::ChirpinessField field = corti::chirpiness_field(spec, cfg.lift.eta);
        corti::write_file(dump_chirp, [&](std::ostream& o) {
          corti::chirpiness_csv(field, o);
        });
      }
    }
    if (!trace_path.empty()) {
      std::vector<double> times(res.energy_trace.size());
      const double hop_s =
          static_cast<double>(res.report.stft.hop) / res.report.sample_rate;
      for (std::size_t i = 0; i < times.size(); ++i) times[i] = i * hop_s;
      corti::write_file(trace_path, [&](std::ostream& o) {
        corti::energy_csv(times, res.energy_trace, o);
      });
    }
    write_report(proc_out, {{"tool", "corti"},
                            {"subcommand", "process"},
                            {"input", proc_in},
                            {"output", proc_out},
                            {"bits", proc_bits},
                            {"clipped_samples", st.clipped},
                            {"run", ordered_json::parse(res.report.to_json())}});
    return 0;
  }

  if (sweep->parsed()) {
    corti::PipelineConfig cfg = sweep_flags.resolve(sweep);
    std::uint64_t seed = resolve_seed(sweep, sweep_seed);
    std::vector<double> eps =
        sweep_eps.empty() ? corti::default_eps_grid() : sweep_eps;
    corti::Signal in = corti::read_wav(sweep_in);
    corti::SweepResult res = corti::denoise_sweep(in, eps, cfg, seed);
    write_text(sweep_out, corti::sweep_csv(res));
    write_report(sweep_out,
                 {{"tool", "corti"},
                  {"subcommand", "denoise-sweep"},
                  {"input", sweep_in},
                  {"output", sweep_out},
                  {"rng", {{"algorithm", corti::kNoiseRng}, {"base_seed", seed}}},
                  {"eps", eps},
                  {"config", ordered_json::parse(corti::config_json(cfg))}});
    return 0;
  }

  if (corpus->parsed()) {
    corti::StftOptions opts;
    opts.window_ms = corpus_window_ms;
    opts.hop_divisor = corpus_hop_div;
    std::vector<corti::CorpusRow> rows =
        corti::corpus_summary(corpus_files, opts, corpus_eta);
    write_text(corpus_out, corti::corpus_csv(rows));
    write_report(corpus_out, {{"tool", "corti"},
                              {"subcommand", "chirpiness"},
                              {"output", corpus_out},
                              {"n_files", corpus_files.size()},
                              {"eta", corpus_eta},
                              {"window_ms", corpus_window_ms},
                              {"hop_divisor", corpus_hop_div},
                              {"quantile_convention", corti::kQuantileConvention}});
    return 0;
  }

  if (kdump->parsed()) {
    if (n_om < 3 || n_nu < 3) throw Error("cli", "axes need >= 3 points");
    std::vector<double> om_axis(n_om), nu_axis(n_nu);
    for (int i = 0; i < n_om; ++i) {
      om_axis[i] = om_min + (om_max - om_min) * i / (n_om - 1);
    }
    for (int i = 0; i < n_nu; ++i) {
      nu_axis[i] = nu_min + (nu_max - nu_min) * i / (n_nu - 1);
    }
    corti::KernelParams kp{kd_delta, kd_b};
    corti::KernelOperator op = corti::KernelOperator::discretize(om_axis, nu_axis, kp);
    // Nearest grid cell to the requested physical source point.
    int src_i = 0, src_q = 0;
    for (int i = 1; i < n_om; ++i) {
      if (std::abs(om_axis[i] - src_om) < std::abs(om_axis[src_i] - src_om)) src_i = i;
    }
    for (int q = 1; q < n_nu; ++q) {
      if (std::abs(nu_axis[q] - src_nu) < std::abs(nu_axis[src_q] - src_nu)) src_q = q;
    }
    corti::write_file(kdump_out, [&](std::ostream& o) {
      corti::kernel_row_csv(op, src_i, src_q, o);
    });
    write_report(kdump_out,
                 {{"tool", "corti"},
                  {"subcommand", "kernel-dump"},
                  {"output", kdump_out},
                  {"delta_s", kd_delta},
                  {"b", kd_b},
                  {"src_omega", om_axis[src_i]},
                  {"src_nu", nu_axis[src_q]},
                  {"diagnostics",
                   {{"rows", op.diagnostics().n_rows},
                    {"low_mass_rows", op.diagnostics().low_mass_rows},
                    {"offgrid_rows", op.diagnostics().offgrid_rows},
                    {"min_raw_row_sum", op.diagnostics().min_raw_row_sum}}}});
    return 0;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const UsageError& e) {
    std::cerr << "corti: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    // corti::Error and anything unexpected: a data/processing failure.
    std::cerr << "corti: " << e.what() << "\n";
    return 2;
  }
}
