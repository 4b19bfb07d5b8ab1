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

#include "hqr/detectors.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include <boost/math/quadrature/gauss_kronrod.hpp>

namespace hqr {

namespace {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

const double kLogFloor = std::log(kOverlapFloor);

// Relative tolerance of the homodyne window quadrature.
constexpr double kQuadratureTolerance = 1e-9;

// exp(z) - 1 without cancellation for small |z|.
Complex expm1(Complex z) {
  const double s = std::sin(z.imag() / 2.0);
  const double re = std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * s * s;
  const double im = std::exp(z.real()) * std::sin(z.imag());
  return {re, im};
}

// log <a1|a2> = -|a1 - a2|^2 / 2 + i Im(conj(a1) a2).
Complex log_gram(Complex a1, Complex a2) {
  return {-0.5 * std::norm(a1 - a2), (std::conj(a1) * a2).imag()};
}

Complex exp_floored(Complex log_value) {
  if (log_value.real() < kLogFloor) return {0.0, 0.0};
  return std::polar(std::exp(log_value.real()), log_value.imag());
}

// <a1|n><n|a2>.
Complex number_element(int n, Complex a1, Complex a2) {
  const double base = -0.5 * (std::norm(a1) + std::norm(a2));
  if (n == 0) return exp_floored({base, 0.0});
  const Complex z = std::conj(a1) * a2;
  if (z == Complex{}) return {0.0, 0.0};
  const double log_mag = base + n * std::log(std::abs(z)) - std::lgamma(n + 1.0);
  return exp_floored({log_mag, n * std::arg(z)});
}

// <a1| sum_{k >= n} |k><k| |a2>.
Complex at_least_element(int n, Complex a1, Complex a2) {
  if (n <= 0) return gram_overlap(a1, a2);
  const Complex z = std::conj(a1) * a2;
  if (n == 1) return -exp_floored(log_gram(a1, a2)) * expm1(-z);
  if (std::abs(z) < n + 20.0) {
    // Direct tail series; terms decay once k exceeds |z|.
    Complex term = std::pow(z, n) / std::tgamma(n + 1.0);
    Complex sum = term;
    for (int k = n + 1; k < n + 400; ++k) {
      term *= z / static_cast<double>(k);
      sum += term;
      if (std::abs(term) < 1e-18 * std::abs(sum)) break;
    }
    return exp_floored({-0.5 * (std::norm(a1) + std::norm(a2)), 0.0}) * sum;
  }
  Complex head{};
  for (int k = 0; k < n; ++k) head += number_element(k, a1, a2);
  return gram_overlap(a1, a2) - head;
}

struct QuadratureParts {
  double mean;    // sqrt(2) Re(g')
  double slope;   // sqrt(2) Im(g')
  double offset;  // Re(g') Im(g')
};

QuadratureParts quadrature_parts(Complex a, double angle) {
  const Complex rotated = a * std::polar(1.0, -angle);
  return {std::sqrt(2.0) * rotated.real(), std::sqrt(2.0) * rotated.imag(),
          rotated.real() * rotated.imag()};
}

// conj(psi_a1(x)) psi_a2(x), with psi_a the x_phi wavefunction of |a>.
Complex wavefunction_product(const QuadratureParts& p1, const QuadratureParts& p2, double x) {
  const double d1 = x - p1.mean;
  const double d2 = x - p2.mean;
  const double log_mag = -0.5 * (d1 * d1 + d2 * d2) - 0.5 * std::log(std::numbers::pi);
  const double phase = (p2.slope - p1.slope) * x - (p2.offset - p1.offset);
  return exp_floored({log_mag, phase});
}

Complex window_element(const HomodyneIdeal& h, double lo, double hi, Complex a1, Complex a2) {
  if (!(lo <= hi)) throw std::invalid_argument("quadrature window needs lo <= hi");
  const QuadratureParts p1 = quadrature_parts(a1, h.quadrature_angle);
  const QuadratureParts p2 = quadrature_parts(a2, h.quadrature_angle);
  // The integrand is a Gaussian of unit width about the mean centre; beyond
  // +-40 it is below exp(-1600).
  const double centre = 0.5 * (p1.mean + p2.mean);
  const double a = std::max(lo, centre - 40.0);
  const double b = std::min(hi, centre + 40.0);
  if (!(a < b)) return {0.0, 0.0};
  using Integrator = boost::math::quadrature::gauss_kronrod<double, 61>;
  const double re = Integrator::integrate(
      [&](double x) { return wavefunction_product(p1, p2, x).real(); }, a, b, 15,
      kQuadratureTolerance);
  const double im = Integrator::integrate(
      [&](double x) { return wavefunction_product(p1, p2, x).imag(); }, a, b, 15,
      kQuadratureTolerance);
  return {re, im};
}

[[noreturn]] void mismatch(const DetectorModel& model, const PovmElement& element) {
  throw std::invalid_argument("outcome " + describe(element) + " does not belong to detector " +
                              describe(model));
}

std::string format_double(double v) {
  std::ostringstream os;
  os.precision(6);
  os << v;
  return os.str();
}

}  // namespace

void validate(const DetectorModel& model) {
  if (const auto* t = std::get_if<Threshold>(&model)) {
    if (!(t->eta >= 0.0 && t->eta <= 1.0)) throw std::invalid_argument("eta must lie in [0, 1]");
    if (!(t->nu >= 0.0 && std::isfinite(t->nu))) {
      throw std::invalid_argument("nu must be finite and >= 0");
    }
  } else if (const auto* h = std::get_if<HomodyneIdeal>(&model)) {
    if (!std::isfinite(h->quadrature_angle)) {
      throw std::invalid_argument("quadrature angle must be finite");
    }
  }
}

std::string describe(const DetectorModel& model) {
  return std::visit(Overloaded{
                        [](const PnrIdeal&) { return std::string("pnr"); },
                        [](const Threshold& t) {
                          return "td(eta=" + format_double(t.eta) +
                                 ",nu=" + format_double(t.nu) + ")";
                        },
                        [](const HomodyneIdeal& h) {
                          return "homodyne(phi=" + format_double(h.quadrature_angle) + ")";
                        },
                    },
                    model);
}

std::string describe(const PovmElement& element) {
  return std::visit(
      Overloaded{
          [](const outcome::Count& c) { return "n=" + std::to_string(c.n); },
          [](const outcome::AtLeast& c) { return "n>=" + std::to_string(c.n); },
          [](const outcome::Click&) { return std::string("click"); },
          [](const outcome::NoClick&) { return std::string("no-click"); },
          [](const outcome::QuadratureBin& b) {
            return "x=" + format_double(b.x) + "(dx=" + format_double(b.dx) + ")";
          },
          [](const outcome::QuadratureWindow& w) {
            return "x in [" + format_double(w.lo) + "," + format_double(w.hi) + "]";
          },
      },
      element);
}

bool reports_photons(const PovmElement& element) {
  if (const auto* c = std::get_if<outcome::Count>(&element)) return c->n > 0;
  if (const auto* c = std::get_if<outcome::AtLeast>(&element)) return c->n > 0;
  return std::holds_alternative<outcome::Click>(element);
}

Complex povm_matrix_element(const DetectorModel& model, const PovmElement& element, Complex a1,
                            Complex a2) {
  if (const auto* h = std::get_if<HomodyneIdeal>(&model)) {
    if (const auto* bin = std::get_if<outcome::QuadratureBin>(&element)) {
      if (!(bin->dx > 0.0)) throw std::invalid_argument("quadrature bin width must be > 0");
      return wavefunction_product(quadrature_parts(a1, h->quadrature_angle),
                                  quadrature_parts(a2, h->quadrature_angle), bin->x) *
             bin->dx;
    }
    if (const auto* w = std::get_if<outcome::QuadratureWindow>(&element)) {
      return window_element(*h, w->lo, w->hi, a1, a2);
    }
    mismatch(model, element);
  }
  if (std::holds_alternative<PnrIdeal>(model)) {
    if (const auto* c = std::get_if<outcome::Count>(&element)) {
      if (c->n < 0) throw std::invalid_argument("photon count must be >= 0");
      return number_element(c->n, a1, a2);
    }
    if (const auto* c = std::get_if<outcome::AtLeast>(&element)) {
      if (c->n < 0) throw std::invalid_argument("photon count must be >= 0");
      return at_least_element(c->n, a1, a2);
    }
    mismatch(model, element);
  }
  const auto& td = std::get<Threshold>(model);
  const Complex exponent = -td.nu - td.eta * (std::conj(a1) * a2);
  if (std::holds_alternative<outcome::NoClick>(element)) {
    return exp_floored(log_gram(a1, a2) + exponent);
  }
  if (std::holds_alternative<outcome::Click>(element)) {
    return -exp_floored(log_gram(a1, a2)) * expm1(exponent);
  }
  mismatch(model, element);
}

QubitPairDensity measure_modes_unnormalized(const BranchState& state,
                                            std::span<const MeasuredMode> measured,
                                            std::span<const std::string> traced) {
  const std::size_t n_modes = state.modes().size();
  std::vector<const MeasuredMode*> by_mode(n_modes, nullptr);
  std::vector<bool> covered(n_modes, false);
  for (const MeasuredMode& m : measured) {
    validate(m.model);
    const std::size_t idx = state.mode_index(m.mode);
    if (covered[idx]) throw std::invalid_argument("mode '" + m.mode + "' assigned twice");
    covered[idx] = true;
    by_mode[idx] = &m;
  }
  for (const std::string& label : traced) {
    const std::size_t idx = state.mode_index(label);
    if (covered[idx]) throw std::invalid_argument("mode '" + label + "' assigned twice");
    covered[idx] = true;
  }
  for (std::size_t i = 0; i < n_modes; ++i) {
    if (!covered[i]) {
      throw std::invalid_argument("mode '" + state.modes()[i] + "' is neither measured nor traced");
    }
  }
  return contract_to_qubits(state, [&](std::size_t mode, Complex bra, Complex ket) {
    const MeasuredMode* m = by_mode[mode];
    return m ? povm_matrix_element(m->model, m->outcome, bra, ket) : gram_overlap(bra, ket);
  });
}

OutcomeRecord record_outcome(const BranchState& state, std::span<const MeasuredMode> measured,
                             std::span<const std::string> traced) {
  const QubitPairDensity rho = measure_modes_unnormalized(state, measured, traced);
  OutcomeRecord record;
  record.outcome.assign(measured.begin(), measured.end());
  record.raw_weight = rho.trace().real();
  record.probability = record.raw_weight / state.norm_squared();
  if (record.raw_weight > kOverlapFloor) {
    record.conditional_state = rho / record.raw_weight;
  }
  return record;
}

OutcomeRecord measure_modes(const BranchState& state, std::span<const MeasuredMode> measured,
                            std::span<const std::string> traced) {
  OutcomeRecord record = record_outcome(state, measured, traced);
  if (!record.conditional_state) {
    throw ZeroProbabilityError("outcome has zero probability; conditional state undefined");
  }
  return record;
}

double poisson_tail_bound(double mean, int n) {
  if (n < 0) return 1.0;
  if (mean <= 0.0) return 0.0;
  const double next = n + 1.0;
  if (next + 1.0 <= mean) return 1.0;
  // P(N > n) <= p_{n+1} / (1 - mean / (n + 2)) once the terms decrease.
  const double log_p = next * std::log(mean) - mean - std::lgamma(next + 1.0);
  return std::min(1.0, std::exp(log_p) / (1.0 - mean / (next + 1.0)));
}

int pnr_cutoff(double mean, double tail) {
  int n = 0;
  while (poisson_tail_bound(mean, n) >= tail) ++n;
  return n;
}

}  // namespace hqr
