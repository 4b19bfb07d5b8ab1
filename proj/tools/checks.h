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

// Self-check suite behind `hqr validate`.

#ifndef HQR_TOOLS_CHECKS_H_
#define HQR_TOOLS_CHECKS_H_

#include <ostream>
#include <string>
#include <vector>

#include "hqr/states.h"

namespace hqr::cli {

struct CheckResult {
  int id = 0;  // 0 for the negative control
  std::string name;
  std::string tolerance;
  double observed = 0.0;
  bool passed = false;
};

/// One sample point of the standard validation grid.
struct GridPoint {
  ProtocolParams params;
  double exponent = 0.0;  // 2 alpha^2 sin^2(theta/2)
};

/// 200 points: theta in {0.01, 0.1, 1}, l/l0 in {0.04, 0.4, 1.6} with l0 = 25,
/// and 2 alpha^2 sin^2(theta/2) log-spaced over [1e-3, 8].
std::vector<GridPoint> standard_grid();

std::vector<CheckResult> run_validation_suite();

/// Prints one line per check; returns true if all passed.
bool print_report(std::ostream& out, const std::vector<CheckResult>& results);

}  // namespace hqr::cli

#endif  // HQR_TOOLS_CHECKS_H_
