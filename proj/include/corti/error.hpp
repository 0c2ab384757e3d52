// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_ERROR_HPP
#define CORTI_ERROR_HPP

#include <stdexcept>
#include <string>

namespace corti {

// All recoverable failures (bad input data, bad configuration, I/O trouble)
// surface as Error with the name of the module that rejected the input.
// Programming errors stay asserts; nothing else is thrown on purpose.
class Error : public std::runtime_error {
 public:
  Error(std::string module, const std::string& message)
      : std::runtime_error("[" + module + "] " + message),
        module_(std::move(module)) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

}  // namespace corti

#endif
