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

#include "hqr/states.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <utility>

namespace hqr {

namespace {

const double kLogOverlapFloor = std::log(kOverlapFloor);

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_unique(const std::vector<std::string>& labels, const char* what) {
  for (std::size_t i = 0; i < labels.size(); ++i) {
    for (std::size_t j = i + 1; j < labels.size(); ++j) {
      if (labels[i] == labels[j]) {
        throw std::invalid_argument(std::string("duplicate ") + what + " label '" + labels[i] +
                                    "'");
      }
    }
  }
}

std::size_t find_label(const std::vector<std::string>& labels, std::string_view label,
                       const char* what) {
  auto it = std::find(labels.begin(), labels.end(), label);
  if (it == labels.end()) {
    throw std::invalid_argument(std::string("unknown ") + what + " label '" + std::string(label) +
                                "'");
  }
  return static_cast<std::size_t>(it - labels.begin());
}

std::size_t pair_index(const Branch& b) { return 2 * b.bits[0] + b.bits[1]; }

}  // namespace

void ProtocolParams::validate() const {
  if (!(std::isfinite(alpha) && alpha >= 0.0)) {
    throw std::invalid_argument("alpha must be finite and >= 0");
  }
  if (!std::isfinite(theta)) throw std::invalid_argument("theta must be finite");
  if (!(std::isfinite(l) && l >= 0.0)) throw std::invalid_argument("l must be finite and >= 0");
  if (!(std::isfinite(l0) && l0 > 0.0)) throw std::invalid_argument("l0 must be finite and > 0");
  if (!(transmittance() > 0.0)) throw std::invalid_argument("transmittance underflows to 0");
}

double ProtocolParams::transmittance() const { return std::exp(-l / l0); }

double ProtocolParams::zeta() const {
  return 0.5 * transmittance() * alpha * alpha * std::sin(theta);
}

double ProtocolParams::xi() const {
  return 0.5 * (1.0 - transmittance()) * alpha * alpha * std::sin(theta);
}

double ProtocolParams::separation_exponent() const {
  const double s = std::sin(theta / 2.0);
  return 2.0 * alpha * alpha * s * s;
}

BranchState::BranchState(std::vector<std::string> memories, std::vector<std::string> modes,
                         std::vector<Branch> branches)
    : memories_(std::move(memories)), modes_(std::move(modes)), branches_(std::move(branches)) {
  require_unique(memories_, "memory");
  require_unique(modes_, "mode");
  if (branches_.empty()) throw std::invalid_argument("a state needs at least one branch");
  if (memories_.size() < 63 && branches_.size() > (std::size_t{1} << memories_.size())) {
    throw std::invalid_argument("branch count exceeds 2^(number of memories)");
  }
  for (const Branch& b : branches_) {
    if (!finite(b.coefficient)) throw std::invalid_argument("branch coefficient is not finite");
    if (b.bits.size() != memories_.size()) {
      throw std::invalid_argument("branch bit count does not match memory count");
    }
    if (b.amplitudes.size() != modes_.size()) {
      throw std::invalid_argument("branch amplitude count does not match mode count");
    }
    for (std::uint8_t bit : b.bits) {
      if (bit > 1) throw std::invalid_argument("memory bits must be 0 or 1");
    }
    for (Complex a : b.amplitudes) {
      if (!finite(a)) throw std::invalid_argument("coherent amplitude is not finite");
    }
  }
}

std::size_t BranchState::memory_index(std::string_view label) const {
  return find_label(memories_, label, "memory");
}

std::size_t BranchState::mode_index(std::string_view label) const {
  return find_label(modes_, label, "mode");
}

bool BranchState::has_mode(std::string_view label) const {
  return std::find(modes_.begin(), modes_.end(), label) != modes_.end();
}

double BranchState::norm_squared() const {
  double total = 0.0;
  for (const Branch& bi : branches_) {
    for (const Branch& bj : branches_) {
      if (bi.bits != bj.bits) continue;
      Complex term = std::conj(bi.coefficient) * bj.coefficient;
      for (std::size_t m = 0; m < modes_.size(); ++m) {
        term *= gram_overlap(bi.amplitudes[m], bj.amplitudes[m]);
      }
      total += term.real();
    }
  }
  return total;
}

Complex gram_overlap(Complex a1, Complex a2) {
  // -|a1|^2/2 - |a2|^2/2 + Re(conj(a1) a2) == -|a1 - a2|^2 / 2, without cancellation.
  const double log_magnitude = -0.5 * std::norm(a1 - a2);
  if (log_magnitude < kLogOverlapFloor) return {0.0, 0.0};
  const double phase = (std::conj(a1) * a2).imag();
  return std::polar(std::exp(log_magnitude), phase);
}

BranchState prepare_memory(std::string label, double phase) {
  if (!std::isfinite(phase)) throw std::invalid_argument("memory phase must be finite");
  const double r = 1.0 / std::sqrt(2.0);
  return BranchState({std::move(label)}, {},
                     {Branch{std::polar(r, -phase), {0}, {}},
                      Branch{std::polar(r, phase), {1}, {}}});
}

BranchState basis_memory(std::string label, std::uint8_t bit) {
  return BranchState({std::move(label)}, {}, {Branch{1.0, {bit}, {}}});
}

BranchState tensor(const BranchState& lhs, const BranchState& rhs) {
  std::vector<std::string> memories = lhs.memories();
  memories.insert(memories.end(), rhs.memories().begin(), rhs.memories().end());
  std::vector<std::string> modes = lhs.modes();
  modes.insert(modes.end(), rhs.modes().begin(), rhs.modes().end());

  std::vector<Branch> branches;
  branches.reserve(lhs.branches().size() * rhs.branches().size());
  for (const Branch& a : lhs.branches()) {
    for (const Branch& b : rhs.branches()) {
      Branch out{a.coefficient * b.coefficient, a.bits, a.amplitudes};
      out.bits.insert(out.bits.end(), b.bits.begin(), b.bits.end());
      out.amplitudes.insert(out.amplitudes.end(), b.amplitudes.begin(), b.amplitudes.end());
      branches.push_back(std::move(out));
    }
  }
  return BranchState(std::move(memories), std::move(modes), std::move(branches));
}

BranchState attach_coherent_mode(const BranchState& state, std::string label,
                                 Complex amplitude) {
  if (state.has_mode(label)) {
    throw std::invalid_argument("mode label '" + label + "' already present");
  }
  std::vector<std::string> modes = state.modes();
  modes.push_back(std::move(label));
  std::vector<Branch> branches = state.branches();
  for (Branch& b : branches) b.amplitudes.push_back(amplitude);
  return BranchState(state.memories(), std::move(modes), std::move(branches));
}

BranchState apply_controlled_rotation(const BranchState& state, std::string_view memory,
                                      std::string_view mode, double theta) {
  const std::size_t q = state.memory_index(memory);
  const std::size_t m = state.mode_index(mode);
  const Complex plus = std::polar(1.0, theta / 2.0);
  const Complex minus = std::polar(1.0, -theta / 2.0);
  std::vector<Branch> branches = state.branches();
  for (Branch& b : branches) b.amplitudes[m] *= (b.bits[q] == 0 ? plus : minus);
  return BranchState(state.memories(), state.modes(), std::move(branches));
}

BranchState apply_loss(const BranchState& state, std::string_view mode, double transmittance,
                       std::string environment_label) {
  if (!(transmittance >= 0.0 && transmittance <= 1.0)) {
    throw std::invalid_argument("transmittance must lie in [0, 1]");
  }
  const std::size_t m = state.mode_index(mode);
  if (state.has_mode(environment_label)) {
    throw std::invalid_argument("mode label '" + environment_label + "' already present");
  }
  const double kept = std::sqrt(transmittance);
  const double lost = std::sqrt(1.0 - transmittance);
  std::vector<std::string> modes = state.modes();
  modes.push_back(std::move(environment_label));
  std::vector<Branch> branches = state.branches();
  for (Branch& b : branches) {
    const Complex g = b.amplitudes[m];
    b.amplitudes[m] = kept * g;
    b.amplitudes.push_back(lost * g);
  }
  return BranchState(state.memories(), std::move(modes), std::move(branches));
}

BranchState apply_beamsplitter_5050(const BranchState& state, std::string_view mode1,
                                    std::string_view mode2) {
  if (mode1 == mode2) throw std::invalid_argument("beamsplitter needs two distinct modes");
  const std::size_t m1 = state.mode_index(mode1);
  const std::size_t m2 = state.mode_index(mode2);
  const double r = 1.0 / std::sqrt(2.0);
  std::vector<Branch> branches = state.branches();
  for (Branch& b : branches) {
    const Complex g1 = b.amplitudes[m1];
    const Complex g2 = b.amplitudes[m2];
    b.amplitudes[m1] = r * (g2 - g1);
    b.amplitudes[m2] = r * (g2 + g1);
  }
  return BranchState(state.memories(), state.modes(), std::move(branches));
}

BranchState apply_displacement(const BranchState& state, std::string_view mode, Complex gamma,
                               DisplacementPhase convention) {
  if (!finite(gamma)) throw std::invalid_argument("displacement must be finite");
  const std::size_t m = state.mode_index(mode);
  const double sign = convention == DisplacementPhase::kStandard ? 1.0 : -1.0;
  std::vector<Branch> branches = state.branches();
  for (Branch& b : branches) {
    const Complex g = b.amplitudes[m];
    b.coefficient *= std::polar(1.0, sign * (gamma * std::conj(g)).imag());
    b.amplitudes[m] = g + gamma;
  }
  return BranchState(state.memories(), state.modes(), std::move(branches));
}

BranchState rename_mode(const BranchState& state, std::string_view from, std::string to) {
  const std::size_t m = state.mode_index(from);
  if (from == to) return state;
  if (state.has_mode(to)) throw std::invalid_argument("mode label '" + to + "' already present");
  std::vector<std::string> modes = state.modes();
  modes[m] = std::move(to);
  return BranchState(state.memories(), std::move(modes), state.branches());
}

QubitPairDensity contract_to_qubits(const BranchState& state, const ModeKernel& kernel) {
  if (state.memories().size() != 2) {
    throw std::invalid_argument("qubit-pair reduction needs exactly two memories");
  }
  QubitPairDensity rho = QubitPairDensity::Zero();
  const auto& branches = state.branches();
  const std::size_t modes = state.modes().size();
  for (const Branch& ket : branches) {
    for (const Branch& bra : branches) {
      Complex term = ket.coefficient * std::conj(bra.coefficient);
      for (std::size_t m = 0; m < modes && term != Complex{}; ++m) {
        term *= kernel(m, bra.amplitudes[m], ket.amplitudes[m]);
      }
      rho(pair_index(ket), pair_index(bra)) += term;
    }
  }
  return rho;
}

QubitPairDensity reduce_to_qubits(const BranchState& state,
                                  std::span<const std::string> traced_modes) {
  for (const std::string& label : state.modes()) {
    if (std::find(traced_modes.begin(), traced_modes.end(), label) == traced_modes.end()) {
      throw std::invalid_argument("mode '" + label + "' is neither traced nor measured");
    }
  }
  for (const std::string& label : traced_modes) state.mode_index(label);
  return contract_to_qubits(state,
                            [](std::size_t, Complex bra, Complex ket) {
                              return gram_overlap(bra, ket);
                            });
}

QubitPairDensity reduce_to_memory_and_mode(const BranchState& state, std::string_view kept_mode,
                                           std::span<const std::string> traced_modes) {
  if (state.memories().size() != 1) {
    throw std::invalid_argument("memory-and-mode reduction needs exactly one memory");
  }
  const std::size_t kept = state.mode_index(kept_mode);
  for (std::size_t m = 0; m < state.modes().size(); ++m) {
    if (m == kept) continue;
    const std::string& label = state.modes()[m];
    if (std::find(traced_modes.begin(), traced_modes.end(), label) == traced_modes.end()) {
      throw std::invalid_argument("mode '" + label + "' is neither kept nor traced");
    }
  }

  // Kept-mode amplitude per memory value; every branch with that bit must agree.
  Complex amp[2];
  bool seen[2] = {false, false};
  for (const Branch& b : state.branches()) {
    const int bit = b.bits[0];
    if (seen[bit] && std::abs(amp[bit] - b.amplitudes[kept]) > kExactTolerance) {
      throw std::invalid_argument("kept mode amplitude is not a function of the memory bit");
    }
    amp[bit] = b.amplitudes[kept];
    seen[bit] = true;
  }
  if (!seen[0]) amp[0] = amp[1];
  if (!seen[1]) amp[1] = amp[0];

  // Columns are |u_0>, |u_1> in the orthonormal frame {u_0, u_1 - <u_0|u_1> u_0}.
  const Complex g = gram_overlap(amp[0], amp[1]);
  Eigen::Matrix2cd frame;
  frame << 1.0, g, 0.0, std::sqrt(std::max(0.0, 1.0 - std::norm(g)));

  QubitPairDensity rho = QubitPairDensity::Zero();
  for (const Branch& ket : state.branches()) {
    for (const Branch& bra : state.branches()) {
      Complex c = ket.coefficient * std::conj(bra.coefficient);
      for (std::size_t m = 0; m < state.modes().size(); ++m) {
        if (m != kept) c *= gram_overlap(bra.amplitudes[m], ket.amplitudes[m]);
      }
      const int j = ket.bits[0];
      const int jp = bra.bits[0];
      for (int k = 0; k < 2; ++k) {
        for (int kp = 0; kp < 2; ++kp) {
          rho(2 * j + k, 2 * jp + kp) += c * frame(k, j) * std::conj(frame(kp, jp));
        }
      }
    }
  }
  return rho;
}

QubitPairDensity phase_flip_channel(const QubitPairDensity& rho, double q) {
  if (!(q >= 0.0 && q <= 1.0)) throw std::invalid_argument("q must lie in [0, 1]");
  const Eigen::Vector4cd z_a(1.0, 1.0, -1.0, -1.0);
  const QubitPairDensity flipped = z_a.asDiagonal() * rho * z_a.asDiagonal();
  return q * rho + (1.0 - q) * flipped;
}

}  // namespace hqr
