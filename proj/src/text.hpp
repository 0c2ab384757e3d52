// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_SRC_TEXT_HPP
#define CORTI_SRC_TEXT_HPP

#include <charconv>
#include <string>

namespace corti::detail {

// %.12g-style formatting via to_chars: locale-independent, so CSV/JSON
// outputs are byte-stable no matter the host environment.
inline std::string fmt_g(double v, int precision = 12) {
  char buf[40];
  auto res = std::to_chars(buf, buf + sizeof buf, v,
                           std::chars_format::general, precision);
  return std::string(buf, res.ptr);
}

}  // namespace corti::detail

#endif
