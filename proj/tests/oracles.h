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

// Reference values computed independently of the library: direct number-basis
// series and the closed forms written out by hand.

#ifndef HQR_TESTS_ORACLES_H_
#define HQR_TESTS_ORACLES_H_

#include <cmath>
#include <complex>
#include <functional>

namespace hqr::testing {

using C = std::complex<double>;

// <m|a> by recursion <m|a> = <m-1|a> a / sqrt(m).
inline C number_amplitude(C a, int m) {
  C amp = std::exp(-0.5 * std::norm(a));
  for (int k = 1; k <= m; ++k) amp *= a / std::sqrt(static_cast<double>(k));
  return amp;
}

// sum_{m < terms} conj(<m|a1>) w(m) <m|a2>.
inline C series(C a1, C a2, const std::function<double(int)>& w, int terms = 200) {
  C sum = 0.0;
  for (int m = 0; m < terms; ++m) sum += std::conj(number_amplitude(a1, m)) * w(m) * number_amplitude(a2, m);
  return sum;
}

inline double exponent(double alpha, double theta) {
  const double s = std::sin(theta / 2.0);
  return 2.0 * alpha * alpha * s * s;
}

inline double ps_ref(double alpha, double theta, double t) { return 1.0 - std::exp(-t * exponent(alpha, theta)); }

inline double f_ref(double alpha, double theta, double t) {
  return 0.5 * (1.0 + std::exp(-(1.0 - t) * exponent(alpha, theta)));
}

inline double f_td_ref(double alpha, double theta) { return 0.5 * (1.0 + std::exp(-exponent(alpha, theta))); }

}  // namespace hqr::testing

#endif  // HQR_TESTS_ORACLES_H_
