/*
 * Copyright 2026 The trngbench Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "trngbench/gamma.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace trngbench {

namespace {

constexpr double kTolerance = std::numeric_limits<double>::epsilon();
constexpr int kMaxIterations = 1000;

// Lower regularized gamma P(a, x) by power series, valid for x < a + 1:
//   P(a, x) = x^a e^-x / Γ(a) * Σ_{n>=0} x^n / (a (a+1) ... (a+n)).
double gamma_p_series(double a, double x) {
  if (x == 0.0) return 0.0;
  double term = 1.0 / a;
  double sum = term;
  double ap = a;
  for (int n = 0; n < kMaxIterations; ++n) {
    ap += 1.0;
    term *= x / ap;
    sum += term;
    if (std::fabs(term) < std::fabs(sum) * kTolerance) {
      return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error("regularized_gamma_q: series did not converge");
}

// Upper regularized gamma Q(a, x) by modified Lentz continued fraction,
// valid for x >= a + 1:
//   Q(a, x) = x^a e^-x / Γ(a) * 1/(x+1-a- 1(1-a)/(x+3-a- 2(2-a)/(...))).
double gamma_q_fraction(double a, double x) {
  const double tiny = std::numeric_limits<double>::min() / kTolerance;
  double b = x + 1.0 - a;
  double c = 1.0 / tiny;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= kMaxIterations; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::fabs(c) < tiny) c = tiny;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < kTolerance) {
      return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
    }
  }
  throw std::runtime_error(
      "regularized_gamma_q: continued fraction did not converge");
}

}  // namespace

double regularized_gamma_q(double a, double x) {
  if (!(a > 0.0)) {
    throw std::invalid_argument("regularized_gamma_q: a must be positive");
  }
  if (!(x >= 0.0)) {
    throw std::invalid_argument("regularized_gamma_q: x must be non-negative");
  }
  if (x < a + 1.0) {
    return 1.0 - gamma_p_series(a, x);
  }
  return gamma_q_fraction(a, x);
}

double chi_square_exceedance(double stat, double df) {
  return regularized_gamma_q(df / 2.0, stat / 2.0);
}

}  // namespace trngbench
