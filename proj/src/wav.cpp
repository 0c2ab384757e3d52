// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include "corti/wav.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <string>
#include <vector>

#include "corti/error.hpp"

namespace corti {
namespace {

constexpr const char* kModule = "wav";

static_assert(std::endian::native == std::endian::little,
              "WAV I/O assumes a little-endian host");

[[noreturn]] void fail(const std::string& path, std::size_t offset,
                       const std::string& what) {
  throw Error(kModule, path + ": " + what + " (byte offset " +
                           std::to_string(offset) + ")");
}

// Cursor over an in-memory file image; every read knows where it is so
// malformed files can be reported by offset.
struct Cursor {
  const std::vector<unsigned char>& buf;
  const std::string& path;
  std::size_t pos = 0;

  std::size_t remaining() const { return buf.size() - pos; }

  void need(std::size_t n, const char* what) {
    if (remaining() < n) fail(path, pos, std::string("truncated ") + what);
  }
  std::uint32_t u32(const char* what) {
    need(4, what);
    std::uint32_t v;
    std::memcpy(&v, buf.data() + pos, 4);
    pos += 4;
    return v;
  }
  std::uint16_t u16(const char* what) {
    need(2, what);
    std::uint16_t v;
    std::memcpy(&v, buf.data() + pos, 2);
    pos += 2;
    return v;
  }
  std::string tag() {
    need(4, "chunk tag");
    std::string t(reinterpret_cast<const char*>(buf.data() + pos), 4);
    pos += 4;
    return t;
  }
};

struct Format {
  std::uint16_t code = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t bits = 0;
  bool seen = false;
};

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;

Signal decode_data(const Format& fmt, const unsigned char* data,
                   std::size_t size, const std::string& path,
                   std::size_t data_offset) {
  const int ch = fmt.channels;
  const std::size_t bytes_per_sample = fmt.bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * ch;
  if (size % frame_bytes != 0) {
    fail(path, data_offset + size - size % frame_bytes,
         "data chunk is not a whole number of frames");
  }
  const std::size_t n_frames = size / frame_bytes;

  Signal out;
  out.sample_rate = fmt.sample_rate;
  out.samples.resize(n_frames);

  for (std::size_t i = 0; i < n_frames; ++i) {
    double acc = 0.0;
    const unsigned char* p = data + i * frame_bytes;
    for (int c = 0; c < ch; ++c, p += bytes_per_sample) {
      if (fmt.code == kFormatFloat) {
        float v;
        std::memcpy(&v, p, 4);
        acc += v;
      } else if (fmt.bits == 16) {
        std::int16_t v;
        std::memcpy(&v, p, 2);
        acc += v / 32768.0;
      } else {  // 24-bit: place in the top bytes, arithmetic-shift back down
        std::uint32_t u = (static_cast<std::uint32_t>(p[0]) << 8) |
                          (static_cast<std::uint32_t>(p[1]) << 16) |
                          (static_cast<std::uint32_t>(p[2]) << 24);
        acc += (static_cast<std::int32_t>(u) >> 8) / 8388608.0;
      }
    }
    // Mono mix; a single-channel float file passes through untouched
    // (acc/1 is exact), which is what makes the float round trip an identity.
    out.samples[i] = static_cast<float>(acc / ch);
  }
  return out;
}

}  // namespace

Signal read_wav(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(kModule, path + ": cannot open for reading");
  std::vector<unsigned char> buf((std::istreambuf_iterator<char>(in)),
                                 std::istreambuf_iterator<char>());
  Cursor cur{buf, path};

  if (cur.tag() != "RIFF") fail(path, 0, "not a RIFF file");
  cur.u32("RIFF size");
  if (cur.tag() != "WAVE") fail(path, 8, "not a WAVE file");

  Format fmt;
  const unsigned char* data = nullptr;
  std::size_t data_size = 0;
  std::size_t data_offset = 0;

  while (cur.remaining() > 0) {
    if (cur.remaining() < 8) fail(path, cur.pos, "truncated chunk header");
    std::size_t chunk_start = cur.pos;
    std::string id = cur.tag();
    std::uint32_t size = cur.u32("chunk size");
    cur.need(size, "chunk body");
    if (id == "fmt ") {
      if (size < 16) fail(path, chunk_start, "fmt chunk too short");
      std::size_t body = cur.pos;
      fmt.code = cur.u16("format code");
      fmt.channels = cur.u16("channel count");
      fmt.sample_rate = cur.u32("sample rate");
      cur.u32("byte rate");
      cur.u16("block align");
      fmt.bits = cur.u16("bits per sample");
      fmt.seen = true;
      cur.pos = body + size;
    } else if (id == "data") {
      data = buf.data() + cur.pos;
      data_size = size;
      data_offset = cur.pos;
      cur.pos += size;
    } else {
      cur.pos += size;  // fact, LIST, cue, ...
    }
    if (size % 2 == 1 && cur.remaining() > 0) ++cur.pos;  // chunk padding
  }

  if (!fmt.seen) fail(path, buf.size(), "missing fmt chunk");
  if (data == nullptr) fail(path, buf.size(), "missing data chunk");
  if (fmt.channels == 0) fail(path, 0, "zero channels");
  if (fmt.sample_rate == 0) fail(path, 0, "zero sample rate");

  bool supported = (fmt.code == kFormatFloat && fmt.bits == 32) ||
                   (fmt.code == kFormatPcm && (fmt.bits == 16 || fmt.bits == 24));
  if (!supported) {
    fail(path, 0,
         "unsupported sample format (code " + std::to_string(fmt.code) + ", " +
             std::to_string(fmt.bits) + " bits); PCM16, PCM24 and float32 are");
  }
  return decode_data(fmt, data, data_size, path, data_offset);
}

namespace {

void put_u32(std::string& s, std::uint32_t v) {
  s.append(reinterpret_cast<const char*>(&v), 4);
}
void put_u16(std::string& s, std::uint16_t v) {
  s.append(reinterpret_cast<const char*>(&v), 2);
}

}  // namespace

WavWriteStats write_wav(const Signal& signal, const std::string& path,
                        WavFormat format) {
  if (!(signal.sample_rate > 0.0)) {
    throw Error(kModule, path + ": signal has no sample rate");
  }
  const std::uint32_t sr = static_cast<std::uint32_t>(signal.sample_rate);
  const bool is_float = format == WavFormat::kFloat32;
  const int bits = format == WavFormat::kPcm16 ? 16 : format == WavFormat::kPcm24 ? 24 : 32;
  const std::uint16_t block = static_cast<std::uint16_t>(bits / 8);
  const std::size_t n = signal.samples.size();
  const std::uint32_t data_size = static_cast<std::uint32_t>(n * block);

  WavWriteStats stats;
  std::string out;
  out.reserve(64 + data_size);
  const std::uint32_t pad = data_size % 2;
  out += "RIFF";
  // fmt(24) + data header(8) [+ fact(12) for float] + payload (+ pad)
  put_u32(out, 4 + 24 + (is_float ? 12 : 0) + 8 + data_size + pad);
  out += "WAVE";
  out += "fmt ";
  put_u32(out, 16);
  put_u16(out, is_float ? kFormatFloat : kFormatPcm);
  put_u16(out, 1);  // mono
  put_u32(out, sr);
  put_u32(out, sr * block);
  put_u16(out, block);
  put_u16(out, static_cast<std::uint16_t>(bits));
  if (is_float) {
    out += "fact";
    put_u32(out, 4);
    put_u32(out, static_cast<std::uint32_t>(n));
  }
  out += "data";
  put_u32(out, data_size);

  if (is_float) {
    out.append(reinterpret_cast<const char*>(signal.samples.data()),
               n * sizeof(float));
  } else {
    const double scale = bits == 16 ? 32768.0 : 8388608.0;
    const long long lo = bits == 16 ? -32768 : -8388608;
    const long long hi = -lo - 1;
    for (float f : signal.samples) {
      long long q;
      if (!std::isfinite(f)) {
        q = 0;
        ++stats.clipped;
      } else {
        q = std::llround(static_cast<double>(f) * scale);
        if (q < lo || q > hi) {
          q = q < lo ? lo : hi;
          ++stats.clipped;
        }
      }
      if (bits == 16) {
        std::int16_t v = static_cast<std::int16_t>(q);
        out.append(reinterpret_cast<const char*>(&v), 2);
      } else {
        std::uint32_t u = static_cast<std::uint32_t>(static_cast<std::int32_t>(q));
        char b[3] = {static_cast<char>(u & 0xff), static_cast<char>((u >> 8) & 0xff),
                     static_cast<char>((u >> 16) & 0xff)};
        out.append(b, 3);
      }
    }
  }
  if (data_size % 2 == 1) out.push_back('\0');

  std::ofstream os(path, std::ios::binary | std::ios::trunc);
  if (!os) throw Error(kModule, path + ": cannot open for writing");
  os.write(out.data(), static_cast<std::streamsize>(out.size()));
  if (!os) throw Error(kModule, path + ": write failed");
  return stats;
}

}  // namespace corti
