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

#ifndef HQR_TOOLS_COMMANDS_H_
#define HQR_TOOLS_COMMANDS_H_

#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "config.h"

namespace hqr::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitValidationFailed = 1,
  kExitBadConfig = 2,
  kExitIoError = 3,
};

/// Single parameter point: the sweep columns plus ps_delta and f_delta
/// (simulation minus closed form).
void cmd_point(const RunConfig& config, double alpha, std::ostream& out);

/// One row per alpha of config.alphas(), ascending.
void cmd_sweep(const RunConfig& config, std::ostream& out);

/// `count` samples of the optimality boundary at transmittance T, ordered by
/// increasing ps (s from 1 down to 0). Throws ConfigError for T outside (0, 1).
void cmd_boundary(const RunConfig& config, double transmittance, int count, std::ostream& out);

struct PresetCurve {
  std::string label;
  RunConfig config;
};

/// Curve set of a named preset ("fig1b" or "fig2") built on `base` (theta,
/// l, l0, window and alpha_count are taken from it).
std::vector<PresetCurve> preset_curves(std::string_view name, const RunConfig& base);

/// Every curve over a shared log-s grid; leading `curve` column.
void cmd_preset(std::string_view name, const RunConfig& base, std::ostream& out);

/// Runs the self-check suite and returns kExitOk or kExitValidationFailed.
int cmd_validate(std::ostream& out);

}  // namespace hqr::cli

#endif  // HQR_TOOLS_COMMANDS_H_
