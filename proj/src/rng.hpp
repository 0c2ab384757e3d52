// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_SRC_RNG_HPP
#define CORTI_SRC_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>

namespace corti::detail {

// Deterministic standard-normal stream. mt19937_64 is pinned by the C++
// standard, and the Box-Muller transform below only uses functions with
// correctly-rounded-enough behavior across libms, so a seed reproduces the
// same bytes everywhere. std::normal_distribution would not.
class NormalRng {
 public:
  explicit NormalRng(std::uint64_t seed) : gen_(seed) {}

  double operator()() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    // u1 in (0, 1]: guards the log; u2 in [0, 1).
    double u1 = 1.0 - uniform();
    double u2 = uniform();
    double r = std::sqrt(-2.0 * std::log(u1));
    double theta = 2.0 * M_PI * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  double uniform() {  // 53-bit mantissa in [0, 1)
    return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
  }

  std::mt19937_64 gen_;
  double spare_ = 0.0;
  bool have_spare_ = false;
};

}  // namespace corti::detail

#endif
