// Copyright (c) 2026 The Corti Authors
// SPDX-License-Identifier: Apache-2.0

#include <filesystem>
#include <fstream>
#include <string>

#include <doctest.h>

#include "corti/config.hpp"
#include "corti/error.hpp"
#include "corti/stft.hpp"
#include "support/unit_helpers.hpp"

namespace {

std::string error_text(const std::string& json_text) {
  try {
    (void)corti::load_config(json_text);
  } catch (const corti::Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST_SUITE("config") {

TEST_CASE("a full document reaches every field") {
  const std::string doc = R"({
    "stft": {"window_size": 512, "hop": 128, "window_kind": "rect",
             "window_ms": 30.0, "hop_divisor": 8},
    "lift": {"eta": 1e-6, "p_value": 0.9, "n_nu": 21},
    "kernel": {"delta": 0.01, "b": 5e4},
    "wc": {"alpha": 10.0, "beta": 2.0, "gamma": 0.5, "kappa": 3.0,
           "delta": 0.02, "substeps": 16},
    "mix": 0.7
  })";
  const corti::PipelineConfig cfg = corti::load_config(doc);
  CHECK(cfg.stft.window_size.value() == 512);
  CHECK(cfg.stft.hop.value() == 128);
  CHECK(cfg.stft.window_kind == corti::WindowKind::kRect);
  CHECK(cfg.stft.window_ms == 30.0);
  CHECK(cfg.stft.hop_divisor == 8);
  CHECK(cfg.lift.eta == 1e-6);
  CHECK(cfg.lift.p_value == 0.9);
  CHECK(cfg.lift.n_nu == 21);
  CHECK(cfg.kernel.delta.value() == 0.01);
  CHECK(cfg.kernel.b.value() == 5e4);
  CHECK(cfg.wc.alpha == 10.0);
  CHECK(cfg.wc.beta == 2.0);
  CHECK(cfg.wc.gamma == 0.5);
  CHECK(cfg.wc.kappa == 3.0);
  CHECK(cfg.wc.delta.value() == 0.02);
  CHECK(cfg.wc.substeps == 16);
  CHECK(cfg.mix == 0.7);
}

TEST_CASE("an empty document keeps the defaults") {
  const corti::PipelineConfig cfg = corti::load_config("{}");
  CHECK_FALSE(cfg.stft.window_size.has_value());
  CHECK_FALSE(cfg.kernel.delta.has_value());
  CHECK_FALSE(cfg.kernel.b.has_value());
  CHECK_FALSE(cfg.wc.delta.has_value());
  CHECK(cfg.wc.alpha == 20.0);
  CHECK(cfg.wc.gamma == 2.0);
  CHECK(cfg.wc.kappa == 2.0);
  CHECK(cfg.wc.substeps == 8);
  CHECK(cfg.lift.eta == 1e-8);
  CHECK(cfg.lift.p_value == 0.95);
  CHECK(cfg.lift.n_nu == 41);
  CHECK(cfg.mix == 1.0);
}

TEST_CASE("unknown keys fail with their full path") {
  CHECK(error_text(R"({"stft": {"windowz": 1}})")
            .find("unknown key 'stft.windowz'") != std::string::npos);
  CHECK(error_text(R"({"bogus": {}})").find("unknown key 'bogus'") !=
        std::string::npos);
  CHECK(error_text(R"({"wc": {"delta_ms": 5}})")
            .find("unknown key 'wc.delta_ms'") != std::string::npos);
}

TEST_CASE("type mismatches name the offending key") {
  const std::string msg = error_text(R"({"stft": {"window_size": "big"}})");
  CHECK(msg.find("stft.window_size") != std::string::npos);
  CHECK(error_text(R"({"mix": []})").find("mix") != std::string::npos);
  CHECK_THROWS_AS((void)corti::load_config(R"({"stft": 3})"), corti::Error);
}

TEST_CASE("malformed json is reported as such") {
  CHECK(error_text("{").find("invalid JSON") != std::string::npos);
  CHECK(error_text("").find("invalid JSON") != std::string::npos);
}

TEST_CASE("unknown window kinds are rejected") {
  CHECK_THROWS_AS(
      (void)corti::load_config(R"({"stft": {"window_kind": "hamming"}})"),
      corti::Error);
}

TEST_CASE("serialization round trips including unset optionals") {
  const corti::PipelineConfig defaults;
  const std::string first = corti::config_json(defaults);
  const corti::PipelineConfig reloaded = corti::load_config(first);
  CHECK(corti::config_json(reloaded) == first);
  CHECK_FALSE(reloaded.kernel.b.has_value());

  corti::PipelineConfig custom;
  custom.wc.gamma = 0.25;
  custom.kernel.b = 123.5;
  custom.stft.window_size = 512;
  const corti::PipelineConfig back =
      corti::load_config(corti::config_json(custom));
  CHECK(back.wc.gamma == 0.25);
  CHECK(back.kernel.b.value() == 123.5);
  CHECK(back.stft.window_size.value() == 512);
}

TEST_CASE("config files load through the same parser") {
  const std::filesystem::path dir = corti_test::scratch_dir("config");
  const std::filesystem::path path = dir / "cfg.json";
  {
    std::ofstream out(path);
    out << R"({"mix": 0.25, "wc": {"gamma": 0.0}})";
  }
  const corti::PipelineConfig cfg = corti::load_config_file(path.string());
  CHECK(cfg.mix == 0.25);
  CHECK(cfg.wc.gamma == 0.0);

  try {
    (void)corti::load_config_file((dir / "absent.json").string());
    FAIL("expected an open error");
  } catch (const corti::Error& e) {
    CHECK(std::string(e.what()).find("cannot open") != std::string::npos);
  }
}

}  // TEST_SUITE
