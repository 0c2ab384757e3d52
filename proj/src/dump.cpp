// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include "corti/dump.hpp"

#include <cstdint>
#include <fstream>
#include <ostream>

#include "corti/error.hpp"
#include "text.hpp"

namespace corti {
namespace {

constexpr const char* kModule = "dump";

using detail::fmt_g;

void put_u32(std::ostream& out, std::uint32_t v) {
  out.write(reinterpret_cast<const char*>(&v), 4);
}

}  // namespace

void spectrogram_csv(const Spectrogram& spec, std::ostream& out) {
  out << "frame_time,bin_freq,re,im\n";
  for (int i = 0; i < spec.n_frames; ++i) {
    for (int j = 0; j < spec.n_bins; ++j) {
      const std::complex<double>& v = spec.at(i, j);
      out << fmt_g(spec.frame_times[i]) << ',' << fmt_g(spec.bin_freqs[j])
          << ',' << fmt_g(v.real()) << ',' << fmt_g(v.imag()) << '\n';
    }
  }
}

void spectrogram_binary(const Spectrogram& spec, std::ostream& out) {
  out.write("CORTISP1", 8);
  put_u32(out, static_cast<std::uint32_t>(spec.n_frames));
  put_u32(out, static_cast<std::uint32_t>(spec.n_bins));
  put_u32(out, static_cast<std::uint32_t>(spec.config.window_size));
  put_u32(out, static_cast<std::uint32_t>(spec.config.hop));
  out.write(reinterpret_cast<const char*>(&spec.sample_rate), 8);
  out.write(reinterpret_cast<const char*>(spec.values.data()),
            static_cast<std::streamsize>(spec.values.size() * 16));
}

void chirpiness_csv(const ChirpinessField& field, std::ostream& out) {
  out << "frame_time,bin_freq,nu,masked\n";
  for (int i = 0; i < field.n_frames; ++i) {
    for (int j = 0; j < field.n_bins; ++j) {
      std::size_t idx = field.idx(i, j);
      out << fmt_g(field.frame_times[i]) << ',' << fmt_g(field.bin_freqs[j])
          << ',' << fmt_g(field.nu[idx]) << ','
          << (field.masked[idx] ? '1' : '0') << '\n';
    }
  }
}

void kernel_row_csv(const KernelOperator& op, int omega_src, int nu_src,
                    std::ostream& out) {
  const std::vector<double> row = op.row(omega_src, nu_src);
  out << "omega,nu,weight\n";
  for (int q = 0; q < op.n_nu(); ++q) {
    for (int j = 0; j < op.n_omega(); ++j) {
      out << fmt_g(op.omega_axis()[j]) << ',' << fmt_g(op.nu_axis()[q]) << ','
          << fmt_g(row[static_cast<std::size_t>(q) * op.n_omega() + j]) << '\n';
    }
  }
}

void energy_csv(const std::vector<double>& frame_times,
                const std::vector<double>& energy, std::ostream& out) {
  if (frame_times.size() != energy.size()) {
    throw Error(kModule, "trace and time axis lengths differ");
  }
  out << "frame_time,energy\n";
  for (std::size_t i = 0; i < energy.size(); ++i) {
    out << fmt_g(frame_times[i]) << ',' << fmt_g(energy[i]) << '\n';
  }
}

void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& writer) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(kModule, path + ": cannot open for writing");
  writer(out);
  out.flush();
  if (!out) throw Error(kModule, path + ": write failed");
}

}  // namespace corti
