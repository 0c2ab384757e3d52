// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef CORTI_CONFIG_HPP
#define CORTI_CONFIG_HPP

#include <string>

#include "corti/pipeline.hpp"

namespace corti {

// Parses a JSON config document: one top-level object per stage
// ("stft", "lift", "kernel", "wc") plus scalar "mix". Strict: unknown keys
// anywhere are a configuration error naming the key.
PipelineConfig load_config(const std::string& json_text);
PipelineConfig load_config_file(const std::string& path);

// The config as it would be written back; optionals that are unset stay null.
std::string config_json(const PipelineConfig& config);

}  // namespace corti

#endif
