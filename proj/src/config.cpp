// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include "corti/config.hpp"

#include <fstream>
#include <functional>
#include <initializer_list>
#include <sstream>
#include <string>
#include <utility>

#include <json.hpp>

#include "corti/error.hpp"

namespace corti {
namespace {

constexpr const char* kModule = "config";

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

[[noreturn]] void bad(const std::string& what) { throw Error(kModule, what); }

using Handler = std::pair<const char*, std::function<void(const json&)>>;

// Strict walk: every present key must match a handler, so typos surface as
// errors instead of silently keeping defaults.
void walk(const json& obj, const std::string& name,
          std::initializer_list<Handler> handlers) {
  if (!obj.is_object()) {
    bad("'" + name + "' must be a JSON object");
  }
  for (const auto& [key, value] : obj.items()) {
    const Handler* found = nullptr;
    for (const Handler& h : handlers) {
      if (key == h.first) {
        found = &h;
        break;
      }
    }
    std::string path = name.empty() ? key : name + "." + key;
    if (!found) bad("unknown key '" + path + "'");
    // null means "not set": config_json writes unset optionals as null, and
    // that output must load back unchanged.
    if (value.is_null()) continue;
    try {
      found->second(value);
    } catch (const json::exception& e) {
      bad("key '" + path + "': " + e.what());
    }
  }
}

}  // namespace

PipelineConfig load_config(const std::string& json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    bad(std::string("invalid JSON: ") + e.what());
  }

  PipelineConfig cfg;
  walk(doc, "",
       {{"stft",
         [&](const json& s) {
           walk(s, "stft",
                {{"window_size",
                  [&](const json& v) { cfg.stft.window_size = v.get<int>(); }},
                 {"hop", [&](const json& v) { cfg.stft.hop = v.get<int>(); }},
                 {"window_ms",
                  [&](const json& v) { cfg.stft.window_ms = v.get<double>(); }},
                 {"hop_divisor",
                  [&](const json& v) { cfg.stft.hop_divisor = v.get<int>(); }},
                 {"window_kind", [&](const json& v) {
                    auto kind = window_kind_from_name(v.get<std::string>());
                    if (!kind) {
                      bad("unknown window kind '" + v.get<std::string>() + "'");
                    }
                    cfg.stft.window_kind = *kind;
                  }}});
         }},
        {"lift",
         [&](const json& s) {
           walk(s, "lift",
                {{"eta", [&](const json& v) { cfg.lift.eta = v.get<double>(); }},
                 {"p_value",
                  [&](const json& v) { cfg.lift.p_value = v.get<double>(); }},
                 {"n_nu", [&](const json& v) { cfg.lift.n_nu = v.get<int>(); }}});
         }},
        {"kernel",
         [&](const json& s) {
           walk(s, "kernel",
                {{"delta",
                  [&](const json& v) { cfg.kernel.delta = v.get<double>(); }},
                 {"b", [&](const json& v) { cfg.kernel.b = v.get<double>(); }}});
         }},
        {"wc",
         [&](const json& s) {
           walk(s, "wc",
                {{"alpha", [&](const json& v) { cfg.wc.alpha = v.get<double>(); }},
                 {"beta", [&](const json& v) { cfg.wc.beta = v.get<double>(); }},
                 {"gamma", [&](const json& v) { cfg.wc.gamma = v.get<double>(); }},
                 {"kappa", [&](const json& v) { cfg.wc.kappa = v.get<double>(); }},
                 {"delta", [&](const json& v) { cfg.wc.delta = v.get<double>(); }},
                 {"substeps",
                  [&](const json& v) { cfg.wc.substeps = v.get<int>(); }}});
         }},
        {"mix", [&](const json& v) { cfg.mix = v.get<double>(); }}});
  return cfg;
}

PipelineConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) bad(path + ": cannot open config file");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return load_config(buf.str());
  } catch (const Error& e) {
    bad(path + ": " + e.what());
  }
}

std::string config_json(const PipelineConfig& cfg) {
  ordered_json j;
  j["stft"] = ordered_json::object();
  if (cfg.stft.window_size) {
    j["stft"]["window_size"] = *cfg.stft.window_size;
  } else {
    j["stft"]["window_ms"] = cfg.stft.window_ms;
  }
  if (cfg.stft.hop) {
    j["stft"]["hop"] = *cfg.stft.hop;
  } else {
    j["stft"]["hop_divisor"] = cfg.stft.hop_divisor;
  }
  j["stft"]["window_kind"] = window_kind_name(cfg.stft.window_kind);
  j["lift"] = {{"eta", cfg.lift.eta},
               {"p_value", cfg.lift.p_value},
               {"n_nu", cfg.lift.n_nu}};
  j["kernel"] = {{"delta", cfg.kernel.delta ? ordered_json(*cfg.kernel.delta)
                                            : ordered_json(nullptr)},
                 {"b", cfg.kernel.b ? ordered_json(*cfg.kernel.b)
                                    : ordered_json(nullptr)}};
  j["wc"] = {{"alpha", cfg.wc.alpha},
             {"beta", cfg.wc.beta},
             {"gamma", cfg.wc.gamma},
             {"kappa", cfg.wc.kappa},
             {"delta", cfg.wc.delta ? ordered_json(*cfg.wc.delta)
                                    : ordered_json(nullptr)},
             {"substeps", cfg.wc.substeps}};
  j["mix"] = cfg.mix;
  return j.dump(2);
}

}  // namespace corti
