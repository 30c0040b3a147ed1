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

// Character sums of modular symbols <m>_chi, their lattice coordinates, and
// the 2-integrality of the even/odd character sums.

#ifndef LTWIST_MODSYM_HPP_
#define LTWIST_MODSYM_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "analytic.hpp"

namespace ltwist {

enum class CharacterKind { kPrincipal, kQuadratic };

struct SymbolSum {
  std::int64_t m = 0;
  CharacterKind kind = CharacterKind::kPrincipal;
  std::int64_t d = 1;  // conductor of the character; 1 for principal
  Complex value;       // identity route
  Real re_norm, im_norm;  // Re(value)/c_f and Im(value)/c^-_f
  std::optional<Complex> direct;  // sum of period integrals, when computed
  double residual = 0;            // |value - direct| / max(|direct|, c_f)
};

struct LatticeCoords {
  mpz_class s, t;
  Real s_residual, t_residual;
  bool same_parity = true;
};

// s = 2 Re(z)/c_f, t = 2 Im(z)/c^-_f; throws NotLatticePoint when either is
// more than `tolerance` from an integer.
LatticeCoords lattice_coordinates(const PeriodData& pd, const Complex& z, double tolerance = 1e-6);

enum class IntegralityRoute { kIdentitySum, kDirectStarSum };
const char* integrality_route_name(IntegralityRoute r);

struct IntegralityReport {
  std::int64_t m = 0;
  int r = 0;
  mpz_class even_sum, odd_sum;  // the two character sums over c_f, i c^-_f
  mpz_class psi, psi_prime;
  double even_residual = 0, odd_residual = 0;
  bool divisible = false;      // 2^{r-1} divides both sums
  bool parity_checked = false;  // only when disc < 0
  bool parity_equal = true;
  std::vector<IntegralityRoute> routes;
  std::optional<mpz_class> star_psi, star_psi_prime;
  bool routes_agree = true;
};

struct SymbolOptions {
  // Star-sum route for r(m) <= 3 and m up to this bound.
  std::int64_t star_sum_max_m = 500;
  // Precision of the period integrals behind the direct routes; only
  // integer rounding depends on them in the star-sum route.
  Precision star_precision{96, -15};
  // The twisted L-values feeding the identity route.
  TwistOptions twist{false, false};
};

// Caches symbol sums and period integrals for one curve at one precision.
// Duplicate work under contention is possible; results are identical.
class SymbolEngine {
 public:
  SymbolEngine(CurveContext& ctx, Precision prec, SymbolOptions opts = {});

  CurveContext& context() { return ctx_; }
  const Precision& precision() const { return prec_; }
  const PeriodData& periods() { return ctx_.periods(prec_); }
  const SymbolOptions& options() const { return opts_; }

  // <{0, k/m}> for 0 < k < m coprime to m, at `prec`; entry k of the result
  // (others unset). Uses conjugate symmetry.
  std::shared_ptr<const std::vector<Complex>> period_integrals(std::int64_t m, const Precision& prec);

  // <m>_{chi^0} from L(E,1) and smaller divisors.
  Complex principal(std::int64_t m);
  Complex principal_direct(std::int64_t m);
  // <d>_{chi_d} = d L(E, chi_d, 1) / g(chi_d).
  Complex quadratic_base(std::int64_t d);
  // <m>_{chi_d} by propagation from <d>_{chi_d}.
  Complex quadratic(std::int64_t m, std::int64_t d);
  Complex quadratic_direct(std::int64_t m, std::int64_t d);

  Real l_value() { return ctx_.l_value(prec_); }

 private:
  CurveContext& ctx_;
  Precision prec_;
  SymbolOptions opts_;
  std::mutex mu_;
  std::map<std::int64_t, Complex> principal_;
  std::map<std::int64_t, Complex> base_;
  std::map<std::pair<std::int64_t, Precision>, std::shared_ptr<const std::vector<Complex>>> integrals_;
};

// Throws RouteDisagreement when the direct route is requested and differs
// by more than 1e-20 relative (scaled to the working target).
SymbolSum bracket_principal(SymbolEngine& eng, std::int64_t m, bool direct);
SymbolSum bracket_quadratic(SymbolEngine& eng, std::int64_t m, std::int64_t d, bool direct);

// Throws IntegralityViolation or RouteDisagreement.
IntegralityReport integrality_report(SymbolEngine& eng, std::int64_t m);

// Squarefree divisors and helpers shared with the verifiers.
std::vector<std::int64_t> odd_prime_factors(std::int64_t m);
std::vector<std::int64_t> divisors_of_squarefree(const std::vector<std::int64_t>& primes);
// Admissible m: odd, squarefree, coprime to C, > 1.
void check_symbol_modulus(std::int64_t m, std::int64_t C);

}  // namespace ltwist

#endif  // LTWIST_MODSYM_HPP_
