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

#ifndef HQR_STATES_H_
#define HQR_STATES_H_

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace hqr {

using Complex = std::complex<double>;

/// Density matrix over two memory qubits (A, B). Row/column index is 2*a + b.
using QubitPairDensity = Eigen::Matrix4cd;

/// Absolute tolerance used for "preserved" and "zero" assertions.
inline constexpr double kExactTolerance = 1e-12;

/// Coherent-state overlaps whose magnitude falls below this are reported as 0.
inline constexpr double kOverlapFloor = 1e-300;

/// Physical parameters of one protocol run.
///
/// `alpha` is the probe amplitude (>= 0), `theta` the memory-probe interaction
/// strength in radians, `l` the node separation and `l0` the attenuation length
/// (both km). The fiber transmittance is derived here and nowhere else.
struct ProtocolParams {
  double alpha = 0.0;
  double theta = 0.01;
  double l = 10.0;
  double l0 = 25.0;

  /// Throws std::invalid_argument when a field is outside its physical range.
  void validate() const;

  /// T = exp(-l / l0), in (0, 1].
  double transmittance() const;

  /// Phase offset carried by both memories: T alpha^2 sin(theta) / 2.
  double zeta() const;

  /// Extra phase offset on Alice's memory: (1 - T) alpha^2 sin(theta) / 2.
  double xi() const;

  /// 2 alpha^2 sin^2(theta / 2); the exponent that sets every overlap.
  double separation_exponent() const;
};

/// One term of a branch superposition: a memory bitstring tensored with a
/// product of coherent states.
struct Branch {
  Complex coefficient;
  std::vector<std::uint8_t> bits;
  std::vector<Complex> amplitudes;
};

/// Exact pure state of qubit memories and coherent optical modes, kept as a
/// finite superposition of branches. Values are immutable; every operation
/// below returns a new state.
class BranchState {
 public:
  BranchState(std::vector<std::string> memories, std::vector<std::string> modes,
              std::vector<Branch> branches);

  const std::vector<std::string>& memories() const { return memories_; }
  const std::vector<std::string>& modes() const { return modes_; }
  const std::vector<Branch>& branches() const { return branches_; }

  std::size_t memory_index(std::string_view label) const;
  std::size_t mode_index(std::string_view label) const;
  bool has_mode(std::string_view label) const;

  /// Squared norm using coherent-state overlaps between branches that share
  /// a bitstring.
  double norm_squared() const;

 private:
  std::vector<std::string> memories_;
  std::vector<std::string> modes_;
  std::vector<Branch> branches_;
};

/// <a1|a2> for coherent states; exp(-|a1|^2/2 - |a2|^2/2 + conj(a1) a2).
Complex gram_overlap(Complex a1, Complex a2);

/// (e^{-i phase}|0> + e^{+i phase}|1>)/sqrt(2) on a single memory.
BranchState prepare_memory(std::string label, double phase);

/// A single memory in the computational basis state |bit>.
BranchState basis_memory(std::string label, std::uint8_t bit);

/// Tensor product; memories and modes of `rhs` are appended after `lhs`.
BranchState tensor(const BranchState& lhs, const BranchState& rhs);

BranchState attach_coherent_mode(const BranchState& state, std::string label,
                                 Complex amplitude);

/// Memory-conditioned phase shift: the mode amplitude picks up e^{+i theta/2}
/// when the memory bit is 0 and e^{-i theta/2} when it is 1.
BranchState apply_controlled_rotation(const BranchState& state, std::string_view memory,
                                      std::string_view mode, double theta);

/// Fiber loss as an isometry: gamma -> sqrt(T) gamma on `mode` and a new
/// environment mode holding sqrt(1 - T) gamma.
BranchState apply_loss(const BranchState& state, std::string_view mode, double transmittance,
                       std::string environment_label = "E");

/// Balanced beamsplitter: (g1, g2) -> ((g2 - g1)/sqrt(2), (g2 + g1)/sqrt(2)).
/// The difference port stays on `mode1`, the sum port on `mode2`.
BranchState apply_beamsplitter_5050(const BranchState& state, std::string_view mode1,
                                    std::string_view mode2);

enum class DisplacementPhase {
  kStandard,  // D(g)|g'> = e^{+i Im(g conj(g'))}|g' + g>
  kReversed,  // opposite sign; only for negative-control checks
};

BranchState apply_displacement(const BranchState& state, std::string_view mode, Complex gamma,
                               DisplacementPhase convention = DisplacementPhase::kStandard);

BranchState rename_mode(const BranchState& state, std::string_view from, std::string to);

/// Per-mode factor <bra|K|ket> used when contracting branch pairs.
using ModeKernel = std::function<Complex(std::size_t mode, Complex bra, Complex ket)>;

/// rho[b, b'] = sum over branch pairs of c_b conj(c_b') prod_m K_m(alpha_b', alpha_b).
/// Requires exactly two memories.
QubitPairDensity contract_to_qubits(const BranchState& state, const ModeKernel& kernel);

/// Partial trace over every mode. `traced_modes` must name all modes present.
QubitPairDensity reduce_to_qubits(const BranchState& state,
                                  std::span<const std::string> traced_modes);

/// Two-qubit view of a one-memory state with one retained mode: the retained
/// mode is written in an orthonormal basis of the span of its two branch
/// amplitudes (Gram-Schmidt starting from the bit-0 amplitude). The remaining
/// modes are traced out.
QubitPairDensity reduce_to_memory_and_mode(const BranchState& state, std::string_view kept_mode,
                                           std::span<const std::string> traced_modes);

/// q rho + (1 - q) Z_A rho Z_A, with Z acting on the first qubit.
QubitPairDensity phase_flip_channel(const QubitPairDensity& rho, double q);

}  // namespace hqr

#endif  // HQR_STATES_H_
