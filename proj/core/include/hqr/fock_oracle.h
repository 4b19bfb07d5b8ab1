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

// Truncated number-basis simulation of the two-probe protocol. It builds the
// optics from dense matrices (phase rotations, beamsplitter and displacement
// exponentials, loss as a beamsplitter against a vacuum ancilla) and does not
// use the coherent-branch machinery in states.h, so it can serve as an
// independent check of it. Meant for small amplitudes only.

#ifndef HQR_FOCK_ORACLE_H_
#define HQR_FOCK_ORACLE_H_

#include <stdexcept>
#include <vector>

#include "hqr/detectors.h"
#include "hqr/protocols.h"
#include "hqr/states.h"

namespace hqr::fock {

/// Raised when the photon-number cutoff cannot hold the state to the
/// requested accuracy.
class CutoffError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct FockVector {
  int cutoff = 0;
  std::vector<Complex> amplitudes;  // <n|psi>, n = 0..cutoff
  double tail_bound = 0.0;

  double norm_squared() const;
};

/// e^{-|alpha|^2/2} alpha^n / sqrt(n!) for n <= n_max. Throws CutoffError when
/// the Poisson tail beyond n_max exceeds `tolerance`.
FockVector coherent_to_fock(Complex alpha, int n_max, double tolerance = 1e-6);

/// sum_m conj(<m|a1>) w_m <m|a2> for a number-diagonal POVM element (pnr or
/// threshold), summed directly over m <= n_max.
Complex povm_element_series(const DetectorModel& model, const PovmElement& element, Complex a1,
                            Complex a2, int n_max);

/// Dense unitary exp(angle (a^dag b - a b^dag)) on the number states of two
/// modes with n_a, n_b <= cutoff, stored as a (cutoff+1)^2 square matrix in
/// index n_a * (cutoff+1) + n_b. Maps |x>|y> to
/// |x cos + y sin>|y cos - x sin>; photons pushed past the cutoff are dropped.
Eigen::MatrixXcd two_mode_mixer(double angle, int cutoff);

/// Dense exp(gamma a^dag - conj(gamma) a) restricted to n <= cutoff.
Eigen::MatrixXcd displacement_matrix(Complex gamma, int cutoff);

/// Two-probe protocol with both detectors of kind `detector` (pnr or
/// threshold). Throws CutoffError when the final norm deficit exceeds
/// `norm_tolerance`.
ProtocolResult run_protocol_fock(const ProtocolParams& params, const DetectorModel& detector,
                                 int n_max, double norm_tolerance = 1e-12);

}  // namespace hqr::fock

#endif  // HQR_FOCK_ORACLE_H_
