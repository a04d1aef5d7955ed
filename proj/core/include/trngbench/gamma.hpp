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

#ifndef TRNGBENCH_GAMMA_HPP_
#define TRNGBENCH_GAMMA_HPP_

namespace trngbench {

// Regularized upper incomplete gamma function Q(a, x) = Γ(a, x) / Γ(a),
// for a > 0 and x >= 0.  Evaluated with the power series for x < a + 1
// and the Lentz continued fraction otherwise; both iterate to a relative
// tolerance of 1e-10.
double regularized_gamma_q(double a, double x);

// Probability that a chi-square variable with `df` degrees of freedom
// exceeds `stat`: Q(df / 2, stat / 2).
double chi_square_exceedance(double stat, double df);

}  // namespace trngbench

#endif  // TRNGBENCH_GAMMA_HPP_
