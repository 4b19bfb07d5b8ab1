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

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/Eigenvalues>

namespace hqr::fock {

namespace {

// exp(-i H) for Hermitian H.
Eigen::MatrixXcd exp_minus_i(const Eigen::MatrixXcd& h) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(h);
  const Eigen::VectorXd& lambda = solver.eigenvalues();
  Eigen::VectorXcd phases(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) phases(i) = std::polar(1.0, -lambda(i));
  return solver.eigenvectors() * phases.asDiagonal() * solver.eigenvectors().adjoint();
}

// exp(angle G), G = a^dag b - a b^dag, split by total photon number N.
// blocks[N](i, j) acts on |i, N - i>.
class MixerBlocks {
 public:
  MixerBlocks(double angle, int cutoff) : cutoff_(cutoff) {
    blocks_.reserve(2 * cutoff + 1);
    for (int total = 0; total <= 2 * cutoff; ++total) {
      Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(total + 1, total + 1);
      for (int n = 0; n < total; ++n) {
        // a^dag b |n, total-n> and its adjoint term.
        const double amp = std::sqrt((n + 1.0) * (total - n));
        g(n + 1, n) += amp;
        g(n, n + 1) -= amp;
      }
      const Eigen::MatrixXcd h = Complex(0.0, 1.0) * angle * g;
      blocks_.push_back(exp_minus_i(h));
    }
  }

  // `at(na, nb)` addresses one slice of a larger tensor.
  template <class Accessor>
  void apply(Accessor at) const {
    const int d = cutoff_;
    std::vector<Complex> in;
    std::vector<Complex> out;
    for (int total = 0; total <= 2 * d; ++total) {
      const int lo = std::max(0, total - d);
      const int hi = std::min(total, d);
      const auto& u = blocks_[total];
      in.assign(hi - lo + 1, Complex{});
      for (int n = lo; n <= hi; ++n) in[n - lo] = at(n, total - n);
      out.assign(hi - lo + 1, Complex{});
      for (int i = lo; i <= hi; ++i) {
        Complex acc{};
        for (int n = lo; n <= hi; ++n) acc += u(i, n) * in[n - lo];
        out[i - lo] = acc;
      }
      for (int n = lo; n <= hi; ++n) at(n, total - n) = out[n - lo];
    }
  }

 private:
  int cutoff_;
  std::vector<Eigen::MatrixXcd> blocks_;
};

// Diagonal weights w_m of a number-diagonal POVM element.
std::vector<double> diagonal_weights(const DetectorModel& model, const PovmElement& element,
                                     int n_max) {
  std::vector<double> w(n_max + 1, 0.0);
  if (std::holds_alternative<PnrIdeal>(model)) {
    if (const auto* c = std::get_if<outcome::Count>(&element)) {
      if (c->n <= n_max && c->n >= 0) w[c->n] = 1.0;
      return w;
    }
    if (const auto* c = std::get_if<outcome::AtLeast>(&element)) {
      for (int m = std::max(0, c->n); m <= n_max; ++m) w[m] = 1.0;
      return w;
    }
  } else if (const auto* td = std::get_if<Threshold>(&model)) {
    const bool click = std::holds_alternative<outcome::Click>(element);
    if (click || std::holds_alternative<outcome::NoClick>(element)) {
      for (int m = 0; m <= n_max; ++m) {
        const double no_click = std::exp(-td->nu) * std::pow(1.0 - td->eta, m);
        w[m] = click ? 1.0 - no_click : no_click;
      }
      return w;
    }
  }
  throw std::invalid_argument("number-basis oracle cannot evaluate outcome " + describe(element) +
                              " for detector " + describe(model));
}

}  // namespace

double FockVector::norm_squared() const {
  double total = 0.0;
  for (Complex a : amplitudes) total += std::norm(a);
  return total;
}

FockVector coherent_to_fock(Complex alpha, int n_max, double tolerance) {
  if (n_max < 0) throw std::invalid_argument("cutoff must be >= 0");
  FockVector v;
  v.cutoff = n_max;
  v.amplitudes.resize(n_max + 1);
  if (!std::isfinite(std::norm(alpha))) {
    throw std::overflow_error("|alpha|^2 is not finite");
  }
  v.tail_bound = poisson_tail_bound(std::norm(alpha), n_max);
  if (!(v.tail_bound <= tolerance)) {
    throw CutoffError("cutoff " + std::to_string(n_max) + " too small for |alpha|^2 = " +
                      std::to_string(std::norm(alpha)));
  }
  const double r = std::abs(alpha);
  const double phi = std::arg(alpha);
  for (int n = 0; n <= n_max; ++n) {
    if (r == 0.0) {
      v.amplitudes[n] = n == 0 ? 1.0 : 0.0;
      continue;
    }
    const double log_mag = -0.5 * r * r + n * std::log(r) - 0.5 * std::lgamma(n + 1.0);
    v.amplitudes[n] = std::polar(std::exp(log_mag), n * phi);
  }
  return v;
}

Complex povm_element_series(const DetectorModel& model, const PovmElement& element, Complex a1,
                            Complex a2, int n_max) {
  const std::vector<double> w = diagonal_weights(model, element, n_max);
  const FockVector f1 = coherent_to_fock(a1, n_max, 1.0);
  const FockVector f2 = coherent_to_fock(a2, n_max, 1.0);
  Complex sum{};
  for (int m = 0; m <= n_max; ++m) sum += std::conj(f1.amplitudes[m]) * w[m] * f2.amplitudes[m];
  return sum;
}

Eigen::MatrixXcd two_mode_mixer(double angle, int cutoff) {
  const int d = cutoff + 1;
  const MixerBlocks blocks(angle, cutoff);
  Eigen::MatrixXcd u(d * d, d * d);
  for (int col = 0; col < d * d; ++col) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(d * d);
    v(col) = 1.0;
    blocks.apply([&](int na, int nb) -> Complex& { return v(na * d + nb); });
    u.col(col) = v;
  }
  return u;
}

Eigen::MatrixXcd displacement_matrix(Complex gamma, int cutoff) {
  // Exponentiate in a larger space so truncation of the generator does not
  // reach the retained block.
  const int work = 2 * (cutoff + 1) + 40 + static_cast<int>(4.0 * std::norm(gamma));
  Eigen::MatrixXcd gen = Eigen::MatrixXcd::Zero(work, work);
  for (int n = 0; n + 1 < work; ++n) {
    const double s = std::sqrt(n + 1.0);
    gen(n + 1, n) += gamma * s;             // gamma a^dag
    gen(n, n + 1) -= std::conj(gamma) * s;  // -conj(gamma) a
  }
  const Eigen::MatrixXcd h = Complex(0.0, 1.0) * gen;  // Hermitian; exp(gen) = exp(-i h)
  return exp_minus_i(h).topLeftCorner(cutoff + 1, cutoff + 1);
}

ProtocolResult run_protocol_fock(const ProtocolParams& params, const DetectorModel& detector,
                                 int n_max, double norm_tolerance) {
  params.validate();
  validate(detector);
  if (std::holds_alternative<HomodyneIdeal>(detector)) {
    throw std::invalid_argument("the number-basis oracle needs pnr or threshold detectors");
  }
  const int d = n_max + 1;
  const double t = params.transmittance();
  const double half = params.theta / 2.0;

  // Sender: memory bit j, modes (a, E). Rotation, then loss against vacuum E.
  const FockVector probe = coherent_to_fock(params.alpha, n_max, norm_tolerance);
  const MixerBlocks loss(-std::acos(std::sqrt(t)), n_max);
  std::array<std::vector<Complex>, 2> sender;
  for (int j = 0; j < 2; ++j) {
    const double sign = j == 0 ? 1.0 : -1.0;
    std::vector<Complex>& s = sender[j];
    s.assign(d * d, Complex{});
    for (int n = 0; n < d; ++n) s[n * d] = probe.amplitudes[n] * std::polar(1.0, sign * half * n);
    loss.apply([&](int na, int ne) -> Complex& { return s[na * d + ne]; });
  }

  // Receiver's probe in b2, rotated by its memory bit k.
  const FockVector second = coherent_to_fock(std::sqrt(t) * params.alpha, n_max, norm_tolerance);
  std::array<std::vector<Complex>, 2> receiver;
  for (int k = 0; k < 2; ++k) {
    const double sign = k == 0 ? 1.0 : -1.0;
    receiver[k].resize(d);
    for (int n = 0; n < d; ++n) {
      receiver[k][n] = second.amplitudes[n] * std::polar(1.0, sign * half * n);
    }
  }

  // Joint tensor psi[q][m0][m1][m2]: q = 2j + k, m0 = b1, m1 = b2, m2 = E.
  const double r = 1.0 / std::sqrt(2.0);
  const double phase_a = params.xi() + params.zeta();
  const double phase_b = params.zeta();
  auto index = [d](int q, int m0, int m1, int m2) {
    return ((static_cast<std::size_t>(q) * d + m0) * d + m1) * d + m2;
  };
  std::vector<Complex> psi(4 * static_cast<std::size_t>(d) * d * d);
  for (int j = 0; j < 2; ++j) {
    for (int k = 0; k < 2; ++k) {
      const Complex c = std::polar(r, j == 0 ? -phase_a : phase_a) *
                        std::polar(r, k == 0 ? -phase_b : phase_b);
      const int q = 2 * j + k;
      for (int m0 = 0; m0 < d; ++m0) {
        for (int m1 = 0; m1 < d; ++m1) {
          for (int m2 = 0; m2 < d; ++m2) {
            psi[index(q, m0, m1, m2)] = c * sender[j][m0 * d + m2] * receiver[k][m1];
          }
        }
      }
    }
  }

  // Balanced mixer on (b1, b2): m0 becomes the sum port, m1 the difference port.
  const MixerBlocks splitter(std::numbers::pi / 4.0, n_max);
  for (int q = 0; q < 4; ++q) {
    for (int m2 = 0; m2 < d; ++m2) {
      splitter.apply([&](int m0, int m1) -> Complex& { return psi[index(q, m0, m1, m2)]; });
    }
  }

  // Displace the sum port.
  const Eigen::MatrixXcd disp =
      displacement_matrix(-std::sqrt(2.0 * t) * params.alpha * std::cos(half), n_max);
  std::vector<Complex> column(d);
  for (int q = 0; q < 4; ++q) {
    for (int m1 = 0; m1 < d; ++m1) {
      for (int m2 = 0; m2 < d; ++m2) {
        for (int m0 = 0; m0 < d; ++m0) column[m0] = psi[index(q, m0, m1, m2)];
        for (int m0 = 0; m0 < d; ++m0) {
          Complex acc{};
          for (int n = 0; n < d; ++n) acc += disp(m0, n) * column[n];
          psi[index(q, m0, m1, m2)] = acc;
        }
      }
    }
  }

  double norm = 0.0;
  for (Complex a : psi) norm += std::norm(a);
  if (1.0 - norm > norm_tolerance) {
    throw CutoffError("norm deficit " + std::to_string(1.0 - norm) + " at cutoff " +
                      std::to_string(n_max));
  }

  // Per (sum port, difference port) counts, the 4x4 memory block with E traced.
  std::vector<QubitPairDensity> blocks(static_cast<std::size_t>(d) * d, QubitPairDensity::Zero());
  for (int m0 = 0; m0 < d; ++m0) {
    for (int m1 = 0; m1 < d; ++m1) {
      QubitPairDensity& b = blocks[m0 * d + m1];
      for (int q = 0; q < 4; ++q) {
        for (int qp = 0; qp < 4; ++qp) {
          Complex acc{};
          for (int m2 = 0; m2 < d; ++m2) {
            acc += psi[index(q, m0, m1, m2)] * std::conj(psi[index(qp, m0, m1, m2)]);
          }
          b(q, qp) = acc;
        }
      }
    }
  }

  auto record = [&](const PovmElement& at_d1, const PovmElement& at_d2) {
    const std::vector<double> w1 = diagonal_weights(detector, at_d1, n_max);
    const std::vector<double> w2 = diagonal_weights(detector, at_d2, n_max);
    QubitPairDensity rho = QubitPairDensity::Zero();
    for (int m0 = 0; m0 < d; ++m0) {
      if (w2[m0] == 0.0) continue;
      for (int m1 = 0; m1 < d; ++m1) {
        if (w1[m1] == 0.0) continue;
        rho += (w1[m1] * w2[m0]) * blocks[m0 * d + m1];
      }
    }
    OutcomeRecord rec;
    rec.outcome = {{std::string(kModeD1), detector, at_d1}, {std::string(kModeD2), detector, at_d2}};
    rec.raw_weight = rho.trace().real();
    rec.probability = rec.raw_weight / norm;
    if (rec.raw_weight > kOverlapFloor) rec.conditional_state = rho / rec.raw_weight;
    return rec;
  };

  std::vector<PovmElement> fired;
  PovmElement silent = outcome::NoClick{};
  PovmElement any_fired = outcome::Click{};
  if (std::holds_alternative<PnrIdeal>(detector)) {
    for (int n = 1; n <= n_max; ++n) fired.push_back(outcome::Count{n});
    silent = outcome::Count{0};
    any_fired = outcome::AtLeast{1};
  } else {
    fired.push_back(outcome::Click{});
  }

  std::vector<OutcomeEntry> entries;
  auto add = [&](const PovmElement& e1, const PovmElement& e2, bool success) {
    OutcomeRecord rec = record(e1, e2);
    const Correction c = success ? correction_for(rec.outcome) : Correction::kIdentity;
    entries.push_back(make_entry("D1:" + describe(e1) + " D2:" + describe(e2), std::move(rec),
                                 success, c, /*align=*/false));
  };
  for (const PovmElement& e : fired) add(e, silent, true);
  for (const PovmElement& e : fired) add(silent, e, true);
  add(silent, silent, false);
  add(any_fired, any_fired, false);
  return summarize(std::move(entries));
}

}  // namespace hqr::fock
