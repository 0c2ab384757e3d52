// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_DUMP_HPP
#define CORTI_DUMP_HPP

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "corti/kernel.hpp"
#include "corti/lift.hpp"
#include "corti/stft.hpp"

namespace corti {

// Plot-friendly dumps. All CSV: header row, %.12g, '\n' endings.

void spectrogram_csv(const Spectrogram& spec, std::ostream& out);

// Compact binary layout: magic "CORTISP1", then u32 {n_frames, n_bins,
// window_size, hop}, f64 sample_rate, then frame-major complex<f64> pairs.
// Little-endian, no padding.
void spectrogram_binary(const Spectrogram& spec, std::ostream& out);

void chirpiness_csv(const ChirpinessField& field, std::ostream& out);

// One kernel row as (omega, nu, weight) triples over the destination grid.
void kernel_row_csv(const KernelOperator& op, int omega_src, int nu_src,
                    std::ostream& out);

// (frame_time, energy) pairs.
void energy_csv(const std::vector<double>& frame_times,
                const std::vector<double>& energy, std::ostream& out);

// Opens `path` for binary writing, runs `writer`, closes; I/O failures carry
// the path.
void write_file(const std::string& path,
                const std::function<void(std::ostream&)>& writer);

}  // namespace corti

#endif
