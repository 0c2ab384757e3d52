// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_WAV_HPP
#define CORTI_WAV_HPP

#include <cstddef>
#include <string>

#include "corti/signal.hpp"

namespace corti {

enum class WavFormat { kPcm16, kPcm24, kFloat32 };

struct WavWriteStats {
  std::size_t clipped = 0;  // samples clamped to full scale (PCM formats only)
};

// Reads a RIFF/WAVE file: PCM 16/24-bit or IEEE float32, mono or multichannel
// (channels are averaged to mono). Truncated or malformed files are an I/O
// error whose message includes the byte offset where parsing stopped.
Signal read_wav(const std::string& path);

// Writes `signal` as mono WAV in the given sample format. PCM samples outside
// [-1, 1) are clamped and counted; float32 is written verbatim.
WavWriteStats write_wav(const Signal& signal, const std::string& path,
                        WavFormat format = WavFormat::kPcm16);

}  // namespace corti

#endif
