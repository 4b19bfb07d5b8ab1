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

// Closed-form performance of the two-probe protocol, the optimality boundary
// and the two bounds it is built from. These are the reference values the
// simulations are checked against.

#ifndef HQR_ANALYTICS_H_
#define HQR_ANALYTICS_H_

#include <vector>

#include "hqr/states.h"

namespace hqr::analytics {

struct PerformancePoint {
  double ps = 0.0;
  double f = 1.0;
};

/// |<u1|u0>| (received probe) and |<v1|v0>| (environment).
struct OverlapPair {
  double u_overlap = 1.0;
  double v_overlap = 1.0;
};

/// 1 - exp(-2 T alpha^2 sin^2(theta/2)).
double ps_closed(const ProtocolParams& params);

/// (1 + exp(-2 (1 - T) alpha^2 sin^2(theta/2))) / 2, photon-number-resolving detectors.
double f_closed(const ProtocolParams& params);

/// (1 + exp(-2 alpha^2 sin^2(theta/2))) / 2, ideal threshold detectors.
double f_td_ideal(const ProtocolParams& params);

/// (1 - s, (1 + s^{(1-T)/T}) / 2). Requires T in (0, 1) and s in [0, 1].
PerformancePoint boundary(double transmittance, double s);

/// Boundary fidelity at a given success probability: s = 1 - ps.
double boundary_fidelity(double transmittance, double ps);

/// Unambiguous-discrimination limit on the success probability: 1 - u.
double usd_bound(double u_overlap);

/// Fidelity limit from loss-induced dephasing: (1 + v) / 2.
double fidelity_bound(double v_overlap);

OverlapPair overlaps_from_params(const ProtocolParams& params);

/// (1 - T) ln u - T ln v, which vanishes for overlaps produced by a lossy fiber.
double loss_constraint_residual(const OverlapPair& overlaps, double transmittance);

/// Amplitude with exp(-2 alpha^2 sin^2(theta/2)) = s; used to build sweep grids.
/// Requires sin(theta/2) != 0.
double alpha_for_s(double s, double theta);

/// n points with -ln s log-uniform in [x_min, x_max]; resolves the
/// (ps -> 0, f -> 1) corner.
std::vector<double> log_s_grid(double x_min, double x_max, int n);

// Comparator model: single probe, displacement by -sqrt(T) alpha, photon
// counting. Derived for the simulator in protocols.h, not a published result.

/// (1 - exp(-4 T alpha^2 sin^2(theta/2))) / 2.
double ps_protocol_ii_pnr(const ProtocolParams& params);

/// Same fidelity as the two-probe protocol with PNR detectors.
double f_protocol_ii_pnr(const ProtocolParams& params);

}  // namespace hqr::analytics

#endif  // HQR_ANALYTICS_H_
