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

#include "hqr/analytics.h"

#include <cmath>
#include <stdexcept>

namespace hqr::analytics {

namespace {

void require_unit_interval(double v, const char* what) {
  if (!(v >= 0.0 && v <= 1.0)) throw std::invalid_argument(std::string(what) + " must lie in [0, 1]");
}

}  // namespace

double ps_closed(const ProtocolParams& params) {
  params.validate();
  return -std::expm1(-params.transmittance() * params.separation_exponent());
}

double f_closed(const ProtocolParams& params) {
  params.validate();
  const double loss = 1.0 - params.transmittance();
  return 0.5 * (1.0 + std::exp(-loss * params.separation_exponent()));
}

double f_td_ideal(const ProtocolParams& params) {
  params.validate();
  return 0.5 * (1.0 + std::exp(-params.separation_exponent()));
}

PerformancePoint boundary(double transmittance, double s) {
  if (!(transmittance > 0.0 && transmittance < 1.0)) {
    throw std::invalid_argument("boundary needs T in (0, 1)");
  }
  require_unit_interval(s, "s");
  return {1.0 - s, 0.5 * (1.0 + std::pow(s, (1.0 - transmittance) / transmittance))};
}

double boundary_fidelity(double transmittance, double ps) {
  require_unit_interval(ps, "ps");
  return boundary(transmittance, 1.0 - ps).f;
}

double usd_bound(double u_overlap) {
  require_unit_interval(u_overlap, "u_overlap");
  return 1.0 - u_overlap;
}

double fidelity_bound(double v_overlap) {
  require_unit_interval(v_overlap, "v_overlap");
  return 0.5 * (1.0 + v_overlap);
}

OverlapPair overlaps_from_params(const ProtocolParams& params) {
  params.validate();
  const double t = params.transmittance();
  const double x = params.separation_exponent();
  return {std::exp(-t * x), std::exp(-(1.0 - t) * x)};
}

double loss_constraint_residual(const OverlapPair& overlaps, double transmittance) {
  return (1.0 - transmittance) * std::log(overlaps.u_overlap) -
         transmittance * std::log(overlaps.v_overlap);
}

double alpha_for_s(double s, double theta) {
  if (!(s > 0.0 && s <= 1.0)) throw std::invalid_argument("s must lie in (0, 1]");
  const double half = std::sin(theta / 2.0);
  if (half == 0.0) throw std::invalid_argument("theta must not be a multiple of 2 pi");
  return std::sqrt(-std::log(s) / 2.0) / std::abs(half);
}

std::vector<double> log_s_grid(double x_min, double x_max, int n) {
  if (!(x_min > 0.0 && x_max >= x_min) || n < 1) {
    throw std::invalid_argument("log_s_grid needs 0 < x_min <= x_max and n >= 1");
  }
  std::vector<double> s(n);
  const double lo = std::log(x_min);
  const double hi = std::log(x_max);
  for (int i = 0; i < n; ++i) {
    const double frac = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
    s[i] = std::exp(-std::exp(lo + frac * (hi - lo)));
  }
  return s;
}

double ps_protocol_ii_pnr(const ProtocolParams& params) {
  params.validate();
  return -0.5 * std::expm1(-2.0 * params.transmittance() * params.separation_exponent());
}

double f_protocol_ii_pnr(const ProtocolParams& params) { return f_closed(params); }

}  // namespace hqr::analytics
