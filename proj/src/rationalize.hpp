// Copyright 2026 The ltwist Authors
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

// Rational recognition of normalized L-values and their 2-adic valuations.

#ifndef LTWIST_RATIONALIZE_HPP_
#define LTWIST_RATIONALIZE_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "analytic.hpp"
#include "modsym.hpp"

namespace ltwist {

// Unique p/q with q <= den_bound and |x - p/q| <= abs_err, from the
// continued-fraction convergents of x. Requires abs_err < 1/(2 den_bound^2)
// (InvalidArgument otherwise); throws NoRationalInWindow.
mpq_class reconstruct_rational(const Real& x, const mpz_class& den_bound, const Real& abs_err);

// nullopt stands for +infinity (the valuation of 0).
std::optional<int> ord2(const mpq_class& r);
std::string ord2_to_string(const std::optional<int>& v);

// Upper bound for |E(Q)_tors|: gcd of |E(F_p)| over the first good odd primes.
int torsion_bound(const WeierstrassModel& model, std::int64_t conductor, int primes = 25);

struct RationalizeConfig {
  double den_bound_factor = 1e4;  // times |tors|^2
  int abs_err_exp10 = -20;
  double zero_threshold = 1e-15;
  bool symbol_route = true;
};

struct AlgebraicLValue {
  std::string label;
  std::int64_t M = 0;
  int w = 0;
  Real l_value;            // L(E^(M), 1)
  Real c_inf_twist;        // c_inf of the twisted minimal model
  Real normalized;         // L / c_inf(E^(M))
  mpq_class rational;
  std::optional<int> ord2;
  std::string route = "DIRECT_TWIST_PERIOD";
  bool is_zero = false;
  int torsion = 1;
  mpz_class den_bound;
  bool escalated = false;
  // sqrt|M| L / c^{+-}_f(E), via <m>_{chi_m}.
  std::optional<Real> symbol_normalized;
  std::optional<mpq_class> symbol_rational;
  std::optional<int> symbol_ord2;
  bool routes_agree = true;
  // sqrt|M| c_inf(E^(M)) / c^{+-}_inf(E) and its nearest power of 2.
  Real period_ratio;
  int period_ratio_log2 = 0;
  double period_ratio_residual = 0;
};

// Throws NoRationalInWindow after one precision escalation, Ord2Disagreement
// when both routes give finite but different valuations.
AlgebraicLValue algebraic_l_value(SymbolEngine& eng, std::int64_t M, const RationalizeConfig& cfg = {});

// L(E,1)/c_inf(E) reconstructed with the same conventions.
struct BaseLValue {
  Real l_value;
  Real normalized;
  mpq_class rational;
  std::optional<int> ord2;
  int w = 0;
  int torsion = 1;
};
BaseLValue base_algebraic_l_value(CurveContext& ctx, const Precision& prec, const RationalizeConfig& cfg = {});

}  // namespace ltwist

#endif  // LTWIST_RATIONALIZE_HPP_
