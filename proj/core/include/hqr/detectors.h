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

#ifndef HQR_DETECTORS_H_
#define HQR_DETECTORS_H_

#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "hqr/states.h"

namespace hqr {

/// Ideal photon-number-resolving detector.
struct PnrIdeal {};

/// Threshold (click / no-click) detector with quantum efficiency `eta` and
/// mean dark count `nu`. No-click element: sum_m e^{-nu} (1 - eta)^m |m><m|.
struct Threshold {
  double eta = 1.0;
  double nu = 0.0;
};

/// Ideal homodyne detector measuring x_phi = (a e^{-i phi} + a^dag e^{i phi}) / sqrt(2).
struct HomodyneIdeal {
  double quadrature_angle = 0.0;
};

using DetectorModel = std::variant<PnrIdeal, Threshold, HomodyneIdeal>;

/// Throws std::invalid_argument when eta is outside [0, 1] or nu < 0.
void validate(const DetectorModel& model);

std::string describe(const DetectorModel& model);

namespace outcome {

/// Exactly n photons (PNR).
struct Count {
  int n = 0;
};
/// n or more photons (PNR, aggregated).
struct AtLeast {
  int n = 1;
};
struct Click {};
struct NoClick {};
/// Homodyne density at x times the caller's bin width dx.
struct QuadratureBin {
  double x = 0.0;
  double dx = 0.0;
};
/// Homodyne outcome integrated over [lo, hi]; either bound may be infinite.
struct QuadratureWindow {
  double lo = 0.0;
  double hi = 0.0;
};

}  // namespace outcome

using PovmElement = std::variant<outcome::Count, outcome::AtLeast, outcome::Click,
                                 outcome::NoClick, outcome::QuadratureBin,
                                 outcome::QuadratureWindow>;

std::string describe(const PovmElement& element);

/// True for outcomes that report at least one detected photon (count > 0,
/// at-least-n with n > 0, click). Homodyne outcomes are never "fired".
bool reports_photons(const PovmElement& element);

/// <a1|E|a2> in closed form. Throws std::invalid_argument when the outcome
/// does not belong to the model.
Complex povm_matrix_element(const DetectorModel& model, const PovmElement& element, Complex a1,
                            Complex a2);

/// Raised when conditioning on an outcome of zero probability.
class ZeroProbabilityError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct MeasuredMode {
  std::string mode;
  DetectorModel model;
  PovmElement outcome;
};

/// Joint outcome over the measured modes with the resulting two-memory state.
struct OutcomeRecord {
  std::vector<MeasuredMode> outcome;
  double probability = 0.0;
  /// Normalized; empty when the outcome has (numerically) zero probability.
  std::optional<QubitPairDensity> conditional_state;
  double raw_weight = 0.0;
};

/// Unnormalized post-measurement memory state: measured modes contribute
/// their POVM matrix element, traced modes their overlap.
QubitPairDensity measure_modes_unnormalized(const BranchState& state,
                                            std::span<const MeasuredMode> measured,
                                            std::span<const std::string> traced);

/// Same as above but packaged as a record. Never throws for zero weight; the
/// conditional state is then left empty.
OutcomeRecord record_outcome(const BranchState& state, std::span<const MeasuredMode> measured,
                             std::span<const std::string> traced);

/// Conditions on the outcome. Throws ZeroProbabilityError if its weight is
/// not positive (the conditional state would be undefined).
OutcomeRecord measure_modes(const BranchState& state, std::span<const MeasuredMode> measured,
                            std::span<const std::string> traced);

/// Upper bound on P(N > n) for N ~ Poisson(mean).
double poisson_tail_bound(double mean, int n);

/// Smallest n with poisson_tail_bound(mean, n) < tail.
int pnr_cutoff(double mean, double tail = kExactTolerance);

}  // namespace hqr

#endif  // HQR_DETECTORS_H_
