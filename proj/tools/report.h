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

// Row evaluation and CSV formatting shared by the subcommands.

#ifndef HQR_TOOLS_REPORT_H_
#define HQR_TOOLS_REPORT_H_

#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "config.h"
#include "hqr/protocols.h"

namespace hqr::cli {

struct Row {
  double alpha = 0.0;
  double transmittance = 1.0;
  double ps = 0.0;
  double fidelity = 0.0;
  BellWeights weights;
  /// Closed-form reference for this protocol and detector, when one exists.
  std::optional<double> ps_closed;
  std::optional<double> f_closed;
};

inline constexpr std::string_view kSweepHeader =
    "alpha,T,ps,fidelity,w_phi_plus,w_phi_minus,w_psi_plus,w_psi_minus,ps_closed,f_closed";

ProtocolResult run(const RunConfig& config, double alpha);

Row evaluate(const RunConfig& config, double alpha);

/// Evaluates every alpha on a pool of worker threads; the result keeps the
/// input order.
std::vector<Row> evaluate_all(const RunConfig& config, const std::vector<double>& alphas);

/// Shortest round-trip decimal, independent of locale. NaN prints as "nan".
std::string format_number(double v);

/// Comment block echoing the configuration; every line starts with '#'.
void write_config_echo(std::ostream& out, std::string_view command, const RunConfig& config,
                       const std::vector<std::pair<std::string, std::string>>& extra = {});

/// One CSV line in kSweepHeader column order (no trailing newline).
std::string format_row(const Row& row);

}  // namespace hqr::cli

#endif  // HQR_TOOLS_REPORT_H_
