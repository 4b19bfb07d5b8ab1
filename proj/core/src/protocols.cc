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

#include "hqr/protocols.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <utility>

namespace hqr {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kTraceTolerance = 1e-8;

const std::vector<std::string> kTraceEnvironment = {"E"};

// Per-detector outcome alphabet used to enumerate joint outcomes.
struct OutcomeAlphabet {
  std::vector<PovmElement> fired;  // disjoint outcomes that report photons
  PovmElement silent;              // no photons reported
  PovmElement any_fired;           // union of `fired`, used for failure bookkeeping
};

double max_intensity(const BranchState& state, std::string_view mode) {
  const std::size_t m = state.mode_index(mode);
  double peak = 0.0;
  for (const Branch& b : state.branches()) peak = std::max(peak, std::norm(b.amplitudes[m]));
  return peak;
}

OutcomeAlphabet alphabet_for(const DetectorModel& model, double peak_intensity) {
  if (std::holds_alternative<PnrIdeal>(model)) {
    OutcomeAlphabet a{{}, outcome::Count{0}, outcome::AtLeast{1}};
    const int n_max = pnr_cutoff(peak_intensity);
    for (int n = 1; n <= n_max; ++n) a.fired.push_back(outcome::Count{n});
    return a;
  }
  if (std::holds_alternative<Threshold>(model)) {
    return {{outcome::Click{}}, outcome::NoClick{}, outcome::Click{}};
  }
  throw std::invalid_argument("detector " + describe(model) +
                              " is not a photon counter (need pnr or threshold)");
}

const Branch& branch_with_bits(const BranchState& state, std::uint8_t a, std::uint8_t b) {
  for (const Branch& br : state.branches()) {
    if (br.bits[0] == a && br.bits[1] == b) return br;
  }
  throw std::logic_error("missing branch");
}

// Alice's half plus the receiver memory, with the probe still in b1.
BranchState receiver_interacted_state(const ProtocolParams& params) {
  BranchState bob = prepare_memory("B", params.zeta());
  BranchState joint = tensor(sender_state(params), bob);
  return apply_controlled_rotation(joint, "B", "b1", params.theta);
}

}  // namespace

std::string_view to_string(Correction correction) {
  switch (correction) {
    case Correction::kIdentity:
      return "I";
    case Correction::kPhaseFlipA:
      return "Z_A";
    case Correction::kBitFlipB:
      return "X_B";
    case Correction::kBitPhaseFlip:
      return "X_B Z_A";
  }
  return "?";
}

QubitPairDensity apply_correction(const QubitPairDensity& rho, Correction correction) {
  Eigen::Matrix2cd x;
  x << 0.0, 1.0, 1.0, 0.0;
  Eigen::Matrix2cd z;
  z << 1.0, 0.0, 0.0, -1.0;
  const Eigen::Matrix2cd id = Eigen::Matrix2cd::Identity();
  Eigen::Matrix2cd ua = id;
  Eigen::Matrix2cd ub = id;
  switch (correction) {
    case Correction::kIdentity:
      return rho;
    case Correction::kPhaseFlipA:
      ua = z;
      break;
    case Correction::kBitFlipB:
      ub = x;
      break;
    case Correction::kBitPhaseFlip:
      ua = z;
      ub = x;
      break;
  }
  QubitPairDensity u;
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) u.block<2, 2>(2 * a, 2 * ap) = ua(a, ap) * ub;
  }
  return u * rho * u.adjoint();
}

QubitPairDensity align_phase(const QubitPairDensity& rho, double* angle) {
  const Complex coherence = rho(0, 3);
  const double phi = std::abs(coherence) > 0.0 ? std::arg(coherence) : 0.0;
  const Complex r = std::polar(1.0, phi);
  const Eigen::Vector4cd diag(1.0, r, 1.0, r);
  if (angle) *angle = phi;
  return diag.asDiagonal() * rho * diag.conjugate().asDiagonal();
}

const Eigen::Matrix4cd& bell_basis() {
  static const Eigen::Matrix4cd basis = [] {
    const double r = 1.0 / std::sqrt(2.0);
    Eigen::Matrix4cd m;
    // |00>, |01>, |10>, |11> rows; Phi+, Phi-, Psi+, Psi- columns.
    m << r, r, 0, 0,
         0, 0, r, -r,
         0, 0, r, r,
         r, -r, 0, 0;
    return m;
  }();
  return basis;
}

BellWeights bell_weights(const QubitPairDensity& rho) {
  const double trace = rho.trace().real();
  if (std::abs(trace - 1.0) > kTraceTolerance) {
    throw std::invalid_argument("bell_weights needs a unit-trace state");
  }
  const Eigen::Matrix4cd in_bell = bell_basis().adjoint() * rho * bell_basis();
  BellWeights w;
  w.phi_plus = in_bell(0, 0).real();
  w.phi_minus = in_bell(1, 1).real();
  w.psi_plus = in_bell(2, 2).real();
  w.psi_minus = in_bell(3, 3).real();
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      if (i != j) w.max_offdiagonal = std::max(w.max_offdiagonal, std::abs(in_bell(i, j)));
    }
  }
  return w;
}

int count_error_types(const BellWeights& weights, double threshold) {
  return (weights.phi_minus > threshold) + (weights.psi_plus > threshold) +
         (weights.psi_minus > threshold);
}

Correction correction_for(std::span<const MeasuredMode> outcome) {
  const PovmElement* d1 = nullptr;
  const PovmElement* d2 = nullptr;
  for (const MeasuredMode& m : outcome) {
    if (m.mode == kModeD1) d1 = &m.outcome;
    if (m.mode == kModeD2) d2 = &m.outcome;
  }
  if (!d1 || !d2) throw std::invalid_argument("outcome must cover both b3 (D1) and b5 (D2)");
  const bool fired1 = reports_photons(*d1);
  const bool fired2 = reports_photons(*d2);
  if (fired1 == fired2) throw std::invalid_argument("correction requested for a failed outcome");

  const PovmElement& herald = fired1 ? *d1 : *d2;
  // Parity of an exact count picks the sign; otherwise the click-averaged
  // state is closest to the odd-parity Bell state.
  bool odd = true;
  if (const auto* c = std::get_if<outcome::Count>(&herald)) odd = (c->n % 2) == 1;
  if (fired1) return odd ? Correction::kBitPhaseFlip : Correction::kBitFlipB;
  return odd ? Correction::kPhaseFlipA : Correction::kIdentity;
}

double ProtocolResult::total_probability() const {
  double total = 0.0;
  for (const OutcomeEntry& e : outcomes) total += e.record.probability;
  return total;
}

OutcomeEntry make_entry(std::string label, OutcomeRecord record, bool success,
                        Correction correction, bool align) {
  OutcomeEntry entry;
  entry.label = std::move(label);
  entry.success = success;
  entry.correction = success ? correction : Correction::kIdentity;
  if (success && record.conditional_state) {
    QubitPairDensity corrected = apply_correction(*record.conditional_state, correction);
    if (align) corrected = align_phase(corrected, &entry.phase_alignment);
    entry.bell = bell_weights(corrected);
    entry.corrected_state = std::move(corrected);
  }
  entry.record = std::move(record);
  return entry;
}

ProtocolResult summarize(std::vector<OutcomeEntry> entries) {
  ProtocolResult result;
  QubitPairDensity accumulated = QubitPairDensity::Zero();
  double weight_with_state = 0.0;
  for (const OutcomeEntry& e : entries) {
    if (!e.success) continue;
    result.success_probability += e.record.probability;
    if (e.corrected_state && e.record.probability > 0.0) {
      accumulated += e.record.probability * *e.corrected_state;
      weight_with_state += e.record.probability;
    }
  }
  result.outcomes = std::move(entries);
  if (weight_with_state > 0.0) {
    result.bell_weights = bell_weights(accumulated / weight_with_state);
    result.fidelity = result.bell_weights.phi_plus;
    result.error_types = count_error_types(result.bell_weights);
  } else {
    result.bell_weights = {kNaN, kNaN, kNaN, kNaN, kNaN};
    result.fidelity = kNaN;
  }
  return result;
}

BranchState sender_state(const ProtocolParams& params) {
  params.validate();
  BranchState s = prepare_memory("A", params.xi() + params.zeta());
  s = attach_coherent_mode(s, "a", params.alpha);
  s = apply_controlled_rotation(s, "A", "a", params.theta);
  s = apply_loss(s, "a", params.transmittance(), "E");
  return rename_mode(s, "a", "b1");
}

BranchState two_probe_state(const ProtocolParams& params, DisplacementPhase convention) {
  params.validate();
  const double t = params.transmittance();
  BranchState bob = prepare_memory("B", params.zeta());
  bob = attach_coherent_mode(bob, "b2", std::sqrt(t) * params.alpha);
  bob = apply_controlled_rotation(bob, "B", "b2", params.theta);

  BranchState chi = tensor(sender_state(params), bob);
  chi = apply_beamsplitter_5050(chi, "b1", "b2");
  chi = rename_mode(chi, "b1", std::string(kModeD1));
  chi = apply_displacement(chi, "b2", -std::sqrt(2.0 * t) * params.alpha * std::cos(params.theta / 2.0),
                           convention);
  return rename_mode(chi, "b2", std::string(kModeD2));
}

ProtocolResult run_new_protocol(const ProtocolParams& params, const DetectorModel& d1,
                                const DetectorModel& d2, const NewProtocolOptions& options) {
  validate(d1);
  validate(d2);
  const BranchState chi = two_probe_state(params, options.displacement_phase);
  const OutcomeAlphabet a1 = alphabet_for(d1, max_intensity(chi, kModeD1));
  const OutcomeAlphabet a2 = alphabet_for(d2, max_intensity(chi, kModeD2));

  std::vector<OutcomeEntry> entries;
  auto add = [&](const PovmElement& e1, const PovmElement& e2, bool success) {
    const std::vector<MeasuredMode> measured = {{std::string(kModeD1), d1, e1},
                                                {std::string(kModeD2), d2, e2}};
    OutcomeRecord record = record_outcome(chi, measured, kTraceEnvironment);
    const Correction c = success ? correction_for(measured) : Correction::kIdentity;
    entries.push_back(make_entry("D1:" + describe(e1) + " D2:" + describe(e2), std::move(record),
                                 success, c, /*align=*/false));
  };
  for (const PovmElement& e : a1.fired) add(e, a2.silent, true);
  for (const PovmElement& e : a2.fired) add(a1.silent, e, true);
  add(a1.silent, a2.silent, false);
  add(a1.any_fired, a2.any_fired, false);
  return summarize(std::move(entries));
}

ProtocolResult run_protocol_II(const ProtocolParams& params, const DetectorModel& detector) {
  validate(detector);
  BranchState state = receiver_interacted_state(params);
  state = apply_displacement(state, "b1", -std::sqrt(params.transmittance()) * params.alpha);
  const OutcomeAlphabet alphabet = alphabet_for(detector, max_intensity(state, "b1"));

  std::vector<OutcomeEntry> entries;
  auto add = [&](const PovmElement& e, bool success) {
    const std::vector<MeasuredMode> measured = {{"b1", detector, e}};
    OutcomeRecord record = record_outcome(state, measured, kTraceEnvironment);
    entries.push_back(make_entry("b1:" + describe(e), std::move(record), success,
                                 Correction::kIdentity, /*align=*/true));
  };
  for (const PovmElement& e : alphabet.fired) add(e, true);
  add(alphabet.silent, false);
  return summarize(std::move(entries));
}

ProtocolResult run_protocol_I(const ProtocolParams& params, double window_halfwidth, int bins) {
  if (!(window_halfwidth > 0.0) || !std::isfinite(window_halfwidth)) {
    throw std::invalid_argument("window half-width must be finite and > 0");
  }
  if (bins < 1) throw std::invalid_argument("window needs at least one bin");
  const BranchState state = receiver_interacted_state(params);
  const std::size_t b1 = state.mode_index("b1");

  // Correlated branches sit at sqrt(T) alpha e^{+-i theta}; the quadrature
  // along their difference separates both from the anti-correlated peak.
  const Complex up = branch_with_bits(state, 0, 0).amplitudes[b1];
  const Complex down = branch_with_bits(state, 1, 1).amplitudes[b1];
  const Complex centre_amp = branch_with_bits(state, 0, 1).amplitudes[b1];
  const double angle = std::abs(up - down) > 0.0 ? std::arg(up - down) : 0.0;
  const double centre = std::sqrt(2.0) * (centre_amp * std::polar(1.0, -angle)).real();
  const DetectorModel homodyne = HomodyneIdeal{angle};

  const double inf = std::numeric_limits<double>::infinity();
  const double lo = centre - window_halfwidth;
  const double hi = centre + window_halfwidth;
  std::vector<OutcomeEntry> entries;
  auto add = [&](double a, double b, bool success) {
    const PovmElement e = outcome::QuadratureWindow{a, b};
    const std::vector<MeasuredMode> measured = {{"b1", homodyne, e}};
    OutcomeRecord record = record_outcome(state, measured, kTraceEnvironment);
    entries.push_back(make_entry("b1:" + describe(e), std::move(record), success,
                                 Correction::kBitFlipB, /*align=*/true));
  };
  const double width = (hi - lo) / bins;
  for (int i = 0; i < bins; ++i) {
    add(lo + i * width, i + 1 == bins ? hi : lo + (i + 1) * width, true);
  }
  add(-inf, lo, false);
  add(hi, inf, false);
  return summarize(std::move(entries));
}

double dark_count_error_estimate(double nu, double ps) {
  if (!(nu >= 0.0) || !std::isfinite(nu)) throw std::invalid_argument("nu must be finite and >= 0");
  if (!(ps > 0.0 && ps <= 1.0)) throw std::invalid_argument("ps must lie in (0, 1]");
  return nu * (1.0 / ps - 1.0);
}

}  // namespace hqr
