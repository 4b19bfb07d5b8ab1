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

#include "commands.h"

#include <cmath>

#include "checks.h"
#include "hqr/analytics.h"
#include "report.h"

namespace hqr::cli {

namespace {

// Preset grids cover 2 alpha^2 sin^2(theta/2) in [1e-3, 8].
constexpr double kPresetExponentMin = 1e-3;
constexpr double kPresetExponentMax = 8.0;

std::string delta(const std::optional<double>& reference, double value) {
  return reference ? format_number(value - *reference) : "";
}

}  // namespace

void cmd_point(const RunConfig& config, double alpha, std::ostream& out) {
  RunConfig echo = config;
  echo.alpha_min = echo.alpha_max = alpha;
  echo.alpha_count = 1;
  echo.validate();
  const Row row = evaluate(config, alpha);
  write_config_echo(out, "point", echo);
  out << kSweepHeader << ",ps_delta,f_delta\n";
  out << format_row(row) << ',' << delta(row.ps_closed, row.ps) << ','
      << delta(row.f_closed, row.fidelity) << '\n';
}

void cmd_sweep(const RunConfig& config, std::ostream& out) {
  config.validate();
  const std::vector<Row> rows = evaluate_all(config, config.alphas());
  write_config_echo(out, "sweep", config);
  out << kSweepHeader << '\n';
  for (const Row& row : rows) out << format_row(row) << '\n';
}

void cmd_boundary(const RunConfig& config, double transmittance, int count, std::ostream& out) {
  if (!(transmittance > 0.0 && transmittance < 1.0)) {
    throw ConfigError("boundary needs T in (0, 1)");
  }
  if (count < 2) throw ConfigError("boundary needs --count >= 2");
  write_config_echo(out, "boundary", config,
                    {{"T", format_number(transmittance)}, {"count", std::to_string(count)}});
  out << "s,ps,f_bound\n";
  for (int i = 0; i < count; ++i) {
    const double s = i + 1 == count ? 0.0 : 1.0 - static_cast<double>(i) / (count - 1);
    const analytics::PerformancePoint b = analytics::boundary(transmittance, s);
    out << format_number(s) << ',' << format_number(b.ps) << ',' << format_number(b.f) << '\n';
  }
}

std::vector<PresetCurve> preset_curves(std::string_view name, const RunConfig& base) {
  auto curve = [&base](std::string label, ProtocolKind protocol, DetectorKind detector,
                       Threshold td = {}) {
    RunConfig c = base;
    c.protocol = protocol;
    c.detector = detector;
    c.eta = td.eta;
    c.nu = td.nu;
    return PresetCurve{std::move(label), std::move(c)};
  };
  if (name == "fig1b") {
    return {curve("i", ProtocolKind::kI, DetectorKind::kHomodyne),
            curve("ii", ProtocolKind::kII, DetectorKind::kPnr),
            curve("iii", ProtocolKind::kNew, DetectorKind::kPnr)};
  }
  if (name == "fig2") {
    const Threshold td1{0.89, 1.4e-6};
    const Threshold td2{0.12, 3.2e-7};
    return {curve("i", ProtocolKind::kI, DetectorKind::kHomodyne),
            curve("ii", ProtocolKind::kII, DetectorKind::kThreshold, td1),
            curve("ii'", ProtocolKind::kII, DetectorKind::kThreshold, td2),
            curve("iii", ProtocolKind::kNew, DetectorKind::kThreshold, td1),
            curve("iii'", ProtocolKind::kNew, DetectorKind::kThreshold, td2)};
  }
  throw ConfigError("unknown preset '" + std::string(name) + "' (expected fig1b or fig2)");
}

void cmd_preset(std::string_view name, const RunConfig& base, std::ostream& out) {
  const std::vector<PresetCurve> curves = preset_curves(name, base);
  std::vector<double> alphas;
  for (double s : analytics::log_s_grid(kPresetExponentMin, kPresetExponentMax, base.alpha_count)) {
    alphas.push_back(analytics::alpha_for_s(s, base.theta));
  }
  std::vector<std::vector<Row>> rows;
  for (const PresetCurve& c : curves) {
    RunConfig checked = c.config;
    checked.alpha_min = alphas.front();
    checked.alpha_max = alphas.back();
    checked.validate();
    rows.push_back(evaluate_all(c.config, alphas));
  }

  std::vector<std::pair<std::string, std::string>> extra = {
      {"preset", std::string(name)},
      {"grid", "2 alpha^2 sin^2(theta/2) log-spaced in [" + format_number(kPresetExponentMin) + ", " +
                   format_number(kPresetExponentMax) + "], alpha_count points"}};
  for (const PresetCurve& c : curves) {
    std::string what = std::string(to_string(c.config.protocol)) + "/" +
                       std::string(to_string(c.config.effective_detector()));
    if (c.config.effective_detector() == DetectorKind::kThreshold) {
      what += "(eta=" + format_number(c.config.eta) + " nu=" + format_number(c.config.nu) + ")";
    }
    extra.emplace_back("curve " + c.label, what);
  }
  RunConfig echo = base;
  echo.protocol = ProtocolKind::kNew;
  echo.detector.reset();
  echo.alpha_min = alphas.front();
  echo.alpha_max = alphas.back();
  write_config_echo(out, "preset", echo, extra);
  out << "curve," << kSweepHeader << '\n';
  for (std::size_t c = 0; c < curves.size(); ++c) {
    for (const Row& row : rows[c]) out << curves[c].label << ',' << format_row(row) << '\n';
  }
}

int cmd_validate(std::ostream& out) {
  return print_report(out, run_validation_suite()) ? kExitOk : kExitValidationFailed;
}

}  // namespace hqr::cli
