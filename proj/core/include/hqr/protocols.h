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

// End-to-end entanglement generation between memory A (sender) and memory B
// (receiver), plus two single-probe comparator models.
//
// Two-probe protocol (run_new_protocol):
//   A: (e^{-i(xi+zeta)}|0> + e^{i(xi+zeta)}|1>)/sqrt(2), probe |alpha>_a, U_theta(A, a),
//      lossy fiber a -> b1 with environment E.
//   B: (e^{-i zeta}|0> + e^{i zeta}|1>)/sqrt(2), second probe |sqrt(T) alpha>_b2, U_theta(B, b2).
//   Balanced beamsplitter on (b1, b2) -> difference port b3, sum port b4;
//   displacement of b4 by -sqrt(2T) alpha cos(theta/2) gives b5.
//   D1 watches b3, D2 watches b5. Success: exactly one detector fires.
//
// Bell states: Phi+- = (|00> +- |11>)/sqrt(2), Psi+- = (|10> +- |01>)/sqrt(2).

#ifndef HQR_PROTOCOLS_H_
#define HQR_PROTOCOLS_H_

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hqr/detectors.h"
#include "hqr/states.h"

namespace hqr {

inline constexpr std::string_view kModeD1 = "b3";
inline constexpr std::string_view kModeD2 = "b5";

/// Local Pauli frame change taking the heralded Bell state to Phi+.
enum class Correction {
  kIdentity,      // Phi+ -> Phi+
  kPhaseFlipA,    // Z_A:      Phi- -> Phi+
  kBitFlipB,      // X_B:      Psi+ -> Phi+
  kBitPhaseFlip,  // X_B Z_A:  Psi- -> Phi+ (up to a global sign)
};

std::string_view to_string(Correction correction);

QubitPairDensity apply_correction(const QubitPairDensity& rho, Correction correction);

/// Rotates memory B about Z so that <00|rho|11> becomes real and non-negative.
/// Returns the rotated state; the applied angle is written to `angle` if given.
QubitPairDensity align_phase(const QubitPairDensity& rho, double* angle = nullptr);

struct BellWeights {
  double phi_plus = 0.0;
  double phi_minus = 0.0;
  double psi_plus = 0.0;
  double psi_minus = 0.0;
  /// Largest |<B_i|rho|B_j>| over distinct Bell states.
  double max_offdiagonal = 0.0;

  double outside_phi() const { return psi_plus + psi_minus; }
};

/// Columns Phi+, Phi-, Psi+, Psi- in the |AB> computational basis.
const Eigen::Matrix4cd& bell_basis();

/// Diagonal of a normalized state in the Bell basis. Throws
/// std::invalid_argument if the trace differs from 1 by more than 1e-8.
BellWeights bell_weights(const QubitPairDensity& rho);

/// Number of error components (Phi-, Psi+, Psi-) with weight above `threshold`.
int count_error_types(const BellWeights& weights, double threshold = 1e-9);

/// Correction for a heralded outcome of the two-probe protocol, keyed on the
/// outcomes of modes b3 (D1) and b5 (D2). With photon counts the parity
/// selects the Bell state; with clicks only the detector identity is used.
/// Throws std::invalid_argument for failure outcomes.
Correction correction_for(std::span<const MeasuredMode> outcome);

struct OutcomeEntry {
  std::string label;
  OutcomeRecord record;
  bool success = false;
  Correction correction = Correction::kIdentity;
  /// Z rotation on B applied after the Pauli correction (comparators only).
  double phase_alignment = 0.0;
  /// Post-correction state and its Bell weights; set for successes with a
  /// defined conditional state.
  std::optional<QubitPairDensity> corrected_state;
  std::optional<BellWeights> bell;
};

struct ProtocolResult {
  std::vector<OutcomeEntry> outcomes;
  double success_probability = 0.0;
  /// Success-averaged fidelity to Phi+ after correction; NaN if no success
  /// outcome has positive probability.
  double fidelity = 0.0;
  /// Success-averaged post-correction Bell weights (NaN when undefined).
  BellWeights bell_weights;
  int error_types = 0;

  /// Sum of probabilities over every recorded outcome.
  double total_probability() const;
};

/// Applies `correction` (and, if requested, phase alignment) to a recorded
/// outcome and fills the entry.
OutcomeEntry make_entry(std::string label, OutcomeRecord record, bool success,
                        Correction correction, bool align);

/// Aggregates entries into success probability, fidelity and Bell weights.
ProtocolResult summarize(std::vector<OutcomeEntry> entries);

/// |psi>_{A b1 E}: memory A entangled with the transmitted probe b1 and the
/// environment E.
BranchState sender_state(const ProtocolParams& params);

/// |chi>_{A B b3 b5 E}, the state right before detection.
BranchState two_probe_state(const ProtocolParams& params,
                            DisplacementPhase convention = DisplacementPhase::kStandard);

struct NewProtocolOptions {
  DisplacementPhase displacement_phase = DisplacementPhase::kStandard;
};

/// d1 and d2 must be PnrIdeal or Threshold.
ProtocolResult run_new_protocol(const ProtocolParams& params, const DetectorModel& d1,
                                const DetectorModel& d2, const NewProtocolOptions& options = {});

/// Comparator: receiver applies U_theta(B, b1), displaces b1 by -sqrt(T) alpha
/// so the anti-correlated branches become vacuum, and counts photons.
/// Success is any nonzero count (or a click). Each outcome is followed by a Z
/// rotation on B that aligns the Phi coherence.
ProtocolResult run_protocol_II(const ProtocolParams& params, const DetectorModel& detector);

/// Comparator: receiver applies U_theta(B, b1) and homodynes b1 along the
/// quadrature separating the two correlated branches, accepting outcomes
/// within `window_halfwidth` of the anti-correlated peak. The window is split
/// into `bins` outcomes, each with its own phase correction.
ProtocolResult run_protocol_I(const ProtocolParams& params, double window_halfwidth,
                              int bins = 8);

/// nu (1/ps - 1): leading-order probability of dark-count errors outside
/// {Phi+, Phi-}. Requires nu >= 0 and ps in (0, 1].
double dark_count_error_estimate(double nu, double ps);

}  // namespace hqr

#endif  // HQR_PROTOCOLS_H_
