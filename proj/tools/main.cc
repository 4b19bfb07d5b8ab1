// Copyright 2026 The hqrsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <fstream>
#include <iostream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "CLI11.hpp"
#include "commands.h"
#include "config.h"

namespace {

using hqr::cli::ConfigError;
using hqr::cli::RunConfig;

int emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return std::cout ? hqr::cli::kExitOk : hqr::cli::kExitIoError;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) {
    std::cerr << "error: cannot open '" << path << "' for writing\n";
    return hqr::cli::kExitIoError;
  }
  file << text;
  file.close();
  if (!file) {
    std::cerr << "error: failed writing '" << path << "'\n";
    return hqr::cli::kExitIoError;
  }
  return hqr::cli::kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entanglement generation simulator for hybrid quantum repeaters", "hqr"};
  app.set_version_flag("--version", std::string(hqr::cli::kToolVersion));
  app.require_subcommand(1);
  app.set_config("--config", "", "key=value file; command-line flags take precedence");
  app.allow_config_extras(false);

  RunConfig config;
  std::string protocol = "new";
  std::string detector;
  std::string scale = "linear";
  double alpha = -1.0;
  double transmittance = -1.0;
  int boundary_count = 101;
  int alpha_count = 1;

  app.add_option("--protocol", protocol, "new | I | II")->capture_default_str();
  app.add_option("--detector", detector, "pnr | td | homodyne (default: homodyne for I, else pnr)");
  app.add_option("--eta", config.eta, "threshold detector efficiency")->capture_default_str();
  app.add_option("--nu", config.nu, "threshold detector mean dark count")->capture_default_str();
  app.add_option("--window", config.window, "protocol I window half-width (quadrature units)")
      ->capture_default_str();
  app.add_option("--alpha-min", config.alpha_min, "smallest probe amplitude")->capture_default_str();
  app.add_option("--alpha-max", config.alpha_max, "largest probe amplitude")->capture_default_str();
  auto* count_opt = app.add_option("--alpha-count", alpha_count, "number of amplitudes")
                        ->capture_default_str();
  app.add_option("--alpha-scale", scale, "linear | log")->capture_default_str();
  app.add_option("--theta", config.theta, "memory-probe interaction angle (rad)")
      ->capture_default_str();
  auto* l_opt = app.add_option("--l", config.l, "node separation (km)")->capture_default_str();
  app.add_option("--l0", config.l0, "attenuation length (km)")->capture_default_str();
  app.add_option("--out", config.out, "output file (default: stdout)");

  auto* point = app.add_subcommand("point", "one parameter point with closed-form deltas");
  point->add_option("--alpha", alpha, "probe amplitude (default: --alpha-min)");
  auto* sweep = app.add_subcommand("sweep", "CSV over an amplitude range");
  auto* boundary = app.add_subcommand("boundary", "CSV of the optimality boundary");
  boundary->add_option("--transmittance", transmittance, "T in (0, 1) (default: exp(-l/l0))");
  boundary->add_option("--count", boundary_count, "number of samples")->capture_default_str();
  auto* validate = app.add_subcommand("validate", "run the self-check suite");
  auto* preset = app.add_subcommand("preset", "figure data: fig1b or fig2");
  std::string preset_name;
  preset->add_option("name", preset_name, "fig1b | fig2")->required();
  for (CLI::App* sub : {point, sweep, boundary, validate, preset}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? hqr::cli::kExitOk : hqr::cli::kExitBadConfig;
  }

  try {
    config.protocol = hqr::cli::parse_protocol(protocol);
    if (!detector.empty()) config.detector = hqr::cli::parse_detector(detector);
    config.alpha_scale = hqr::cli::parse_scale(scale);
    config.l_explicit = l_opt->count() > 0;
    config.alpha_count = alpha_count;

    std::ostringstream text;
    if (*validate) return hqr::cli::cmd_validate(std::cout);
    if (*point) {
      hqr::cli::cmd_point(config, alpha >= 0.0 ? alpha : config.alpha_min, text);
    } else if (*sweep) {
      hqr::cli::cmd_sweep(config, text);
    } else if (*boundary) {
      const double t = transmittance >= 0.0 ? transmittance : config.params(0.0).transmittance();
      hqr::cli::cmd_boundary(config, t, boundary_count, text);
    } else if (*preset) {
      if (count_opt->count() == 0) config.alpha_count = 40;
      hqr::cli::cmd_preset(preset_name, config, text);
    }
    return emit(text.str(), config.out);
  } catch (const ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return hqr::cli::kExitBadConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return hqr::cli::kExitBadConfig;
  }
}
