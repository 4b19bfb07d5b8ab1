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

#ifndef HQR_TOOLS_CONFIG_H_
#define HQR_TOOLS_CONFIG_H_

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "hqr/detectors.h"
#include "hqr/states.h"

namespace hqr::cli {

inline constexpr std::string_view kToolVersion = "0.1.0";

/// Bad flag values or an inconsistent combination. Maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class ProtocolKind { kNew, kI, kII };
enum class DetectorKind { kPnr, kThreshold, kHomodyne };
enum class AlphaScale { kLinear, kLog };

std::string_view to_string(ProtocolKind kind);
std::string_view to_string(DetectorKind kind);
std::string_view to_string(AlphaScale scale);

ProtocolKind parse_protocol(std::string_view text);
DetectorKind parse_detector(std::string_view text);
AlphaScale parse_scale(std::string_view text);

struct RunConfig {
  ProtocolKind protocol = ProtocolKind::kNew;
  /// Unset means: homodyne for protocol I, pnr otherwise.
  std::optional<DetectorKind> detector;
  double eta = 1.0;
  double nu = 0.0;
  /// Half-width of the protocol I acceptance window, in quadrature units.
  double window = 1.0;
  int window_bins = 8;

  double alpha_min = 0.0;
  double alpha_max = 0.0;
  int alpha_count = 1;
  AlphaScale alpha_scale = AlphaScale::kLinear;

  double theta = 0.01;
  double l = 10.0;
  double l0 = 25.0;
  /// False when `l` is the built-in default rather than a user choice.
  bool l_explicit = false;

  std::string out;  // empty: stdout

  DetectorKind effective_detector() const;
  DetectorModel detector_model() const;
  ProtocolParams params(double alpha) const;

  /// Throws ConfigError.
  void validate() const;

  /// The alpha grid in ascending order.
  std::vector<double> alphas() const;
};

}  // namespace hqr::cli

#endif  // HQR_TOOLS_CONFIG_H_
