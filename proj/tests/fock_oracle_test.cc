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

#include "hqr/fock_oracle.h"

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <numbers>

#include "oracles.h"

namespace hqr::fock {
namespace {

Eigen::VectorXcd as_vector(const FockVector& f) {
  return Eigen::Map<const Eigen::VectorXcd>(f.amplitudes.data(), f.amplitudes.size());
}

Eigen::VectorXcd product(const FockVector& a, const FockVector& b) {
  const int d = a.cutoff + 1;
  Eigen::VectorXcd v(d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) v(i * d + j) = a.amplitudes[i] * b.amplitudes[j];
  }
  return v;
}

TEST(CoherentToFock, VacuumAndNorm) {
  const FockVector vac = coherent_to_fock(0.0, 5);
  EXPECT_EQ(vac.amplitudes[0], Complex(1.0, 0.0));
  for (int n = 1; n <= 5; ++n) EXPECT_EQ(vac.amplitudes[n], Complex(0.0, 0.0));

  const FockVector one = coherent_to_fock(std::polar(1.0, 0.4), 30);
  EXPECT_NEAR(one.norm_squared(), 1.0, 1e-12);
  EXPECT_LT(1.0 - one.norm_squared(), one.tail_bound + 1e-15);
}

TEST(CoherentToFock, MatchesRecursion) {
  const Complex a(1.3, -0.8);
  const FockVector f = coherent_to_fock(a, 40);
  for (int n = 0; n <= 40; ++n) {
    EXPECT_NEAR(std::abs(f.amplitudes[n] - testing::number_amplitude(a, n)), 0.0, 1e-15);
  }
}

TEST(CoherentToFock, NegatedAmplitudeAlternatesSign) {
  const Complex b(0.9, 1.1);
  const FockVector plus = coherent_to_fock(b, 40);
  const FockVector minus = coherent_to_fock(-b, 40);
  for (int n = 0; n <= 40; ++n) {
    const Complex expected = (n % 2 == 0 ? 1.0 : -1.0) * plus.amplitudes[n];
    EXPECT_NEAR(std::abs(minus.amplitudes[n] - expected), 0.0, 1e-15 * std::max(1.0, std::abs(expected)));
  }
}

TEST(CoherentToFock, ReportsInadequateCutoffAndOverflow) {
  EXPECT_THROW(coherent_to_fock(5.0, 10), CutoffError);
  EXPECT_THROW(coherent_to_fock(1e200, 10), std::overflow_error);
  EXPECT_THROW(coherent_to_fock(1.0, -1), std::invalid_argument);
}

TEST(TwoModeMixer, UnitaryOnRetainedSectors) {
  const int cutoff = 6;
  const int d = cutoff + 1;
  const Eigen::MatrixXcd u = two_mode_mixer(0.37, cutoff);
  // Columns with total photon number <= cutoff never leave the space.
  for (int na = 0; na < d; ++na) {
    for (int nb = 0; na + nb <= cutoff; ++nb) {
      EXPECT_NEAR(u.col(na * d + nb).norm(), 1.0, 1e-12);
    }
  }
  const Eigen::MatrixXcd v = two_mode_mixer(-0.37, cutoff);
  for (int na = 0; na < d; ++na) {
    for (int nb = 0; na + nb <= cutoff; ++nb) {
      Eigen::VectorXcd e = Eigen::VectorXcd::Zero(d * d);
      e(na * d + nb) = 1.0;
      EXPECT_NEAR((v * u * e - e).norm(), 0.0, 1e-12);
    }
  }
}

TEST(TwoModeMixer, MapsCoherentProducts) {
  const int cutoff = 30;
  const Complex x(0.7, 0.2);
  const Complex y(-0.4, 0.5);
  for (double angle : {std::numbers::pi / 4.0, -std::acos(std::sqrt(0.6))}) {
    const Eigen::VectorXcd out = two_mode_mixer(angle, cutoff) *
                                 product(coherent_to_fock(x, cutoff), coherent_to_fock(y, cutoff));
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    const Eigen::VectorXcd expected =
        product(coherent_to_fock(x * c + y * s, cutoff), coherent_to_fock(y * c - x * s, cutoff));
    EXPECT_LT((out - expected).cwiseAbs().maxCoeff(), 1e-12);
  }
}

TEST(DisplacementMatrix, ShiftsVacuumAndCoherentStates) {
  const int cutoff = 40;
  const Complex g(-1.1, 0.6);
  const Eigen::MatrixXcd d = displacement_matrix(g, cutoff);
  Eigen::VectorXcd vac = Eigen::VectorXcd::Zero(cutoff + 1);
  vac(0) = 1.0;
  EXPECT_LT((d * vac - as_vector(coherent_to_fock(g, cutoff))).cwiseAbs().maxCoeff(), 1e-12);

  const Complex g0(0.5, 0.3);
  const Complex phase = std::polar(1.0, (g * std::conj(g0)).imag());
  const Eigen::VectorXcd shifted = d * as_vector(coherent_to_fock(g0, cutoff));
  EXPECT_LT((shifted - phase * as_vector(coherent_to_fock(g + g0, cutoff))).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(PovmElementSeries, MatchesClosedForms) {
  const Complex pairs[][2] = {{{0.3, 0.1}, {-0.2, 0.4}}, {{1.1, -0.5}, {0.9, 0.2}}, {{0.0, 1.5}, {1.2, 0.0}}};
  for (const auto& p : pairs) {
    for (const Threshold td : {Threshold{}, Threshold{0.89, 1.4e-6}, Threshold{0.12, 3.2e-7}, Threshold{0.5, 0.1}}) {
      for (const PovmElement& e : {PovmElement{outcome::Click{}}, PovmElement{outcome::NoClick{}}}) {
        EXPECT_LT(std::abs(povm_matrix_element(td, e, p[0], p[1]) - povm_element_series(td, e, p[0], p[1], 40)),
                  1e-8);
      }
    }
    for (int n = 0; n < 8; ++n) {
      EXPECT_LT(std::abs(povm_matrix_element(PnrIdeal{}, outcome::Count{n}, p[0], p[1]) -
                         povm_element_series(PnrIdeal{}, outcome::Count{n}, p[0], p[1], 40)),
                1e-8);
    }
  }
  EXPECT_THROW(povm_element_series(HomodyneIdeal{}, outcome::QuadratureBin{0.0, 0.1}, 0.0, 0.0, 10),
               std::invalid_argument);
}

TEST(RunProtocolFock, ZeroAmplitude) {
  const ProtocolResult r = run_protocol_fock({0.0, 1.5, 10.0, 25.0}, PnrIdeal{}, 10);
  EXPECT_EQ(r.success_probability, 0.0);
  EXPECT_NEAR(r.total_probability(), 1.0, 1e-12);
}

TEST(RunProtocolFock, AgreesWithBranchSimulation) {
  for (double theta : {1.6, 2.5}) {
    for (double beta2 : {0.5, 4.0}) {
      ProtocolParams p{0.0, theta, 6.25, 25.0};
      p.alpha = std::sqrt(beta2 / (2.0 * p.transmittance())) / std::sin(theta / 2.0);
      for (const DetectorModel& d : {DetectorModel{PnrIdeal{}}, DetectorModel{Threshold{0.7, 0.05}}}) {
        const ProtocolResult oracle = run_protocol_fock(p, d, 40);
        const ProtocolResult branch = run_new_protocol(p, d, d);
        EXPECT_NEAR(oracle.success_probability, branch.success_probability, 1e-6);
        EXPECT_NEAR(oracle.fidelity, branch.fidelity, 1e-6);
        EXPECT_NEAR(oracle.total_probability(), 1.0, 1e-10);
        std::map<std::string, const OutcomeEntry*> by_label;
        for (const OutcomeEntry& e : branch.outcomes) by_label[e.label] = &e;
        for (const OutcomeEntry& e : oracle.outcomes) {
          const auto it = by_label.find(e.label);
          if (it == by_label.end()) {
            EXPECT_LT(e.record.probability, 1e-10) << e.label;
            continue;
          }
          const OutcomeRecord& b = it->second->record;
          EXPECT_NEAR(e.record.probability, b.probability, 1e-6) << e.label;
          if (b.probability >= 1e-6) {
            EXPECT_LT((*e.record.conditional_state - *b.conditional_state).cwiseAbs().maxCoeff(), 1e-6)
                << e.label;
          }
        }
      }
    }
  }
}

TEST(RunProtocolFock, RejectsSmallCutoffAndHomodyne) {
  ProtocolParams p{0.0, 1.6, 6.25, 25.0};
  p.alpha = std::sqrt(4.0 / (2.0 * p.transmittance())) / std::sin(0.8);
  EXPECT_THROW(run_protocol_fock(p, PnrIdeal{}, 12), CutoffError);
  EXPECT_THROW(run_protocol_fock(p, HomodyneIdeal{}, 12), std::invalid_argument);
}

}  // namespace
}  // namespace hqr::fock
