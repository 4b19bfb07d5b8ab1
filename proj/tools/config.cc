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

#include "config.h"

#include <cmath>

namespace hqr::cli {

std::string_view to_string(ProtocolKind kind) {
  switch (kind) {
    case ProtocolKind::kNew:
      return "new";
    case ProtocolKind::kI:
      return "I";
    case ProtocolKind::kII:
      return "II";
  }
  return "?";
}

std::string_view to_string(DetectorKind kind) {
  switch (kind) {
    case DetectorKind::kPnr:
      return "pnr";
    case DetectorKind::kThreshold:
      return "td";
    case DetectorKind::kHomodyne:
      return "homodyne";
  }
  return "?";
}

std::string_view to_string(AlphaScale scale) {
  return scale == AlphaScale::kLinear ? "linear" : "log";
}

ProtocolKind parse_protocol(std::string_view text) {
  if (text == "new") return ProtocolKind::kNew;
  if (text == "I" || text == "i") return ProtocolKind::kI;
  if (text == "II" || text == "ii") return ProtocolKind::kII;
  throw ConfigError("unknown protocol '" + std::string(text) + "' (expected new, I or II)");
}

DetectorKind parse_detector(std::string_view text) {
  if (text == "pnr") return DetectorKind::kPnr;
  if (text == "td") return DetectorKind::kThreshold;
  if (text == "homodyne") return DetectorKind::kHomodyne;
  throw ConfigError("unknown detector '" + std::string(text) + "' (expected pnr, td or homodyne)");
}

AlphaScale parse_scale(std::string_view text) {
  if (text == "linear") return AlphaScale::kLinear;
  if (text == "log") return AlphaScale::kLog;
  throw ConfigError("unknown alpha scale '" + std::string(text) + "' (expected linear or log)");
}

DetectorKind RunConfig::effective_detector() const {
  if (detector) return *detector;
  return protocol == ProtocolKind::kI ? DetectorKind::kHomodyne : DetectorKind::kPnr;
}

DetectorModel RunConfig::detector_model() const {
  switch (effective_detector()) {
    case DetectorKind::kPnr:
      return PnrIdeal{};
    case DetectorKind::kThreshold:
      return Threshold{eta, nu};
    case DetectorKind::kHomodyne:
      return HomodyneIdeal{};
  }
  return PnrIdeal{};
}

ProtocolParams RunConfig::params(double alpha) const { return {alpha, theta, l, l0}; }

void RunConfig::validate() const {
  const DetectorKind d = effective_detector();
  if (protocol == ProtocolKind::kI && d != DetectorKind::kHomodyne) {
    throw ConfigError("protocol I needs --detector homodyne");
  }
  if (protocol != ProtocolKind::kI && d == DetectorKind::kHomodyne) {
    throw ConfigError("protocol " + std::string(to_string(protocol)) + " needs pnr or td detectors");
  }
  if (alpha_count < 1) throw ConfigError("--alpha-count must be >= 1");
  if (!(alpha_min >= 0.0) || !std::isfinite(alpha_max) || alpha_max < alpha_min) {
    throw ConfigError("alpha range must satisfy 0 <= alpha-min <= alpha-max");
  }
  if (alpha_scale == AlphaScale::kLog && !(alpha_min > 0.0)) {
    throw ConfigError("--alpha-scale log needs alpha-min > 0");
  }
  if (!(window > 0.0) || !std::isfinite(window)) throw ConfigError("--window must be finite and > 0");
  if (window_bins < 1) throw ConfigError("window bins must be >= 1");
  try {
    params(alpha_max).validate();
    hqr::validate(detector_model());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<double> RunConfig::alphas() const {
  std::vector<double> grid(alpha_count);
  for (int i = 0; i < alpha_count; ++i) {
    const double frac = alpha_count == 1 ? 0.0 : static_cast<double>(i) / (alpha_count - 1);
    grid[i] = alpha_scale == AlphaScale::kLinear
                  ? alpha_min + frac * (alpha_max - alpha_min)
                  : std::exp(std::log(alpha_min) + frac * (std::log(alpha_max) - std::log(alpha_min)));
  }
  if (alpha_count > 1) grid.back() = alpha_max;
  return grid;
}

}  // namespace hqr::cli
