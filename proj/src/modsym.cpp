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

#include "modsym.hpp"

#include <algorithm>
#include <thread>

#include "arith.hpp"
#include "errors.hpp"

namespace ltwist {

namespace {

Complex scaled(const Complex& z, long k) { return Complex(z.re * k, z.im * k); }

double route_tolerance(const Precision& prec) { return std::max(1e-20, 1e4 * prec.target()); }

int count_minus(const std::vector<std::int64_t>& primes) {
  return static_cast<int>(std::count_if(primes.begin(), primes.end(), [](std::int64_t q) { return q % 4 == 3; }));
}

double relative_gap(const Complex& a, const Complex& b, const Real& scale) {
  Real gap = (a - b).abs();
  Real base = std::max(b.abs(), scale);
  return (gap / base).to_double();
}

}  // namespace

std::vector<std::int64_t> odd_prime_factors(std::int64_t m) {
  std::vector<std::int64_t> out;
  for (auto& [p, e] : factor_u64(static_cast<std::uint64_t>(std::llabs(m)))) out.push_back(static_cast<std::int64_t>(p));
  return out;
}

std::vector<std::int64_t> divisors_of_squarefree(const std::vector<std::int64_t>& primes) {
  std::vector<std::int64_t> out{1};
  for (auto q : primes) {
    std::size_t n = out.size();
    for (std::size_t i = 0; i < n; ++i) out.push_back(out[i] * q);
  }
  std::sort(out.begin(), out.end());
  return out;
}

void check_symbol_modulus(std::int64_t m, std::int64_t C) {
  if (m < 3 || m % 2 == 0 || !is_squarefree(m)) {
    fail(ErrorCode::kInvalidArgument, "m = " + std::to_string(m) + " must be odd, squarefree and > 1");
  }
  if (gcd_i64(m, C) != 1) fail(ErrorCode::kTwistNotCoprime, "gcd(m, C) != 1 for m = " + std::to_string(m));
}

const char* integrality_route_name(IntegralityRoute r) {
  return r == IntegralityRoute::kIdentitySum ? "IDENTITY_SUM" : "DIRECT_STAR_SUM";
}

LatticeCoords lattice_coordinates(const PeriodData& pd, const Complex& z, double tolerance) {
  Real s = z.re * 2 / pd.c_f;
  Real t = z.im * 2 / pd.c_f_minus;
  LatticeCoords out;
  out.s = s.round();
  out.t = t.round();
  out.s_residual = abs(s - Real(out.s, s.prec()));
  out.t_residual = abs(t - Real(out.t, t.prec()));
  if (out.s_residual.to_double() > tolerance || out.t_residual.to_double() > tolerance) {
    fail(ErrorCode::kNotLatticePoint, "not a lattice point: s = " + s.to_sci(20) + ", t = " + t.to_sci(20));
  }
  mpz_class diff = out.s - out.t;
  out.same_parity = mpz_even_p(diff.get_mpz_t()) != 0;
  return out;
}

SymbolEngine::SymbolEngine(CurveContext& ctx, Precision prec, SymbolOptions opts)
    : ctx_(ctx), prec_(prec), opts_(std::move(opts)) {
  prec_.validate();
}

std::shared_ptr<const std::vector<Complex>> SymbolEngine::period_integrals(std::int64_t m, const Precision& prec) {
  auto key = std::make_pair(m, prec);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = integrals_.find(key);
    if (it != integrals_.end()) return it->second;
  }
  check_symbol_modulus(m, ctx_.conductor());
  std::vector<std::int64_t> ks;
  for (std::int64_t k = 1; 2 * k < m; ++k) {
    if (gcd_i64(k, m) == 1) ks.push_back(k);
  }
  // Longest series is bounded by X = mC/2.
  ctx_.coefficients(series_length(static_cast<double>(m) * ctx_.conductor() / 2 + 1, prec.target() / 8));
  auto out = std::make_shared<std::vector<Complex>>(m, Complex(prec.bits));
  int jobs = std::max(1, std::min<int>(ctx_.jobs(), static_cast<int>(ks.size())));
  auto work = [&](int w) {
    for (std::size_t i = w; i < ks.size(); i += jobs) {
      std::int64_t k = ks[i];
      Complex p = period_integral(ctx_, k, m, prec);
      (*out)[m - k] = p.conj();
      (*out)[k] = std::move(p);
    }
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  std::shared_ptr<const std::vector<Complex>> frozen = out;
  std::lock_guard<std::mutex> lock(mu_);
  integrals_.emplace(key, frozen);
  return frozen;
}

Complex SymbolEngine::principal(std::int64_t m) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = principal_.find(m);
    if (it != principal_.end()) return it->second;
  }
  check_symbol_modulus(m, ctx_.conductor());
  auto primes = odd_prime_factors(m);
  int r = static_cast<int>(primes.size());
  // (sigma(m) - a_m) L(E,1) = - sum_{d | m, d > 1} 2^{r - r(d)} <d>_{chi^0}.
  mpz_class sigma = 1, am = 1;
  for (auto q : primes) {
    sigma *= q + 1;
    am *= static_cast<long>(ctx_.ap(static_cast<std::uint64_t>(q)));
  }
  Real L = l_value();
  Complex acc(prec_.bits);
  acc.re = -(L * Real(mpz_class(sigma - am), prec_.bits));
  for (std::int64_t d : divisors_of_squarefree(primes)) {
    if (d == 1 || d == m) continue;
    int rd = static_cast<int>(odd_prime_factors(d).size());
    acc -= scaled(principal(d), 1L << (r - rd));
  }
  std::lock_guard<std::mutex> lock(mu_);
  principal_.emplace(m, acc);
  return acc;
}

Complex SymbolEngine::principal_direct(std::int64_t m) {
  auto P = period_integrals(m, prec_);
  Complex acc(prec_.bits);
  for (std::int64_t k = 1; k < m; ++k) {
    if (gcd_i64(k, m) == 1) acc += (*P)[k];
  }
  return acc;
}

Complex SymbolEngine::quadratic_base(std::int64_t d) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = base_.find(d);
    if (it != base_.end()) return it->second;
  }
  check_symbol_modulus(d, ctx_.conductor());
  std::int64_t M = d % 4 == 1 ? d : -d;
  TwistedLValue tl = ctx_.twisted(M, prec_, opts_.twist);
  // g(chi_d) is sqrt(d) or i sqrt(d); d L / g is sqrt(d) L or -i sqrt(d) L.
  Real root = sqrt(Real(static_cast<long>(d), prec_.bits));
  Complex out(prec_.bits);
  if (d % 4 == 1) {
    out.re = root * tl.value;
  } else {
    out.im = -(root * tl.value);
  }
  std::lock_guard<std::mutex> lock(mu_);
  base_.emplace(d, out);
  return out;
}

Complex SymbolEngine::quadratic(std::int64_t m, std::int64_t d) {
  if (d <= 1 || m % d != 0) fail(ErrorCode::kInvalidArgument, "need 1 < d | m");
  check_symbol_modulus(m, ctx_.conductor());
  mpz_class factor = 1;
  for (auto q : odd_prime_factors(m / d)) {
    factor *= ctx_.ap(static_cast<std::uint64_t>(q)) - 2 * jacobi(q, d);
  }
  Complex b = quadratic_base(d);
  Real f(factor, prec_.bits);
  return Complex(b.re * f, b.im * f);
}

Complex SymbolEngine::quadratic_direct(std::int64_t m, std::int64_t d) {
  auto P = period_integrals(m, prec_);
  Complex acc(prec_.bits);
  for (std::int64_t k = 1; k < m; ++k) {
    if (gcd_i64(k, m) != 1) continue;
    if (jacobi(k, d) > 0) {
      acc += (*P)[k];
    } else {
      acc -= (*P)[k];
    }
  }
  return acc;
}

namespace {

SymbolSum finish(SymbolEngine& eng, SymbolSum s) {
  const PeriodData& pd = eng.periods();
  s.re_norm = s.value.re / pd.c_f;
  s.im_norm = s.value.im / pd.c_f_minus;
  if (s.direct) {
    s.residual = relative_gap(s.value, *s.direct, pd.c_f);
    if (s.residual > route_tolerance(eng.precision())) {
      fail(ErrorCode::kRouteDisagreement,
           "symbol sum routes disagree for m = " + std::to_string(s.m) + ", d = " + std::to_string(s.d) +
               ": residual " + std::to_string(s.residual));
    }
  }
  return s;
}

}  // namespace

SymbolSum bracket_principal(SymbolEngine& eng, std::int64_t m, bool direct) {
  SymbolSum s;
  s.m = m;
  s.kind = CharacterKind::kPrincipal;
  s.d = 1;
  s.value = eng.principal(m);
  if (direct) s.direct = eng.principal_direct(m);
  return finish(eng, std::move(s));
}

SymbolSum bracket_quadratic(SymbolEngine& eng, std::int64_t m, std::int64_t d, bool direct) {
  SymbolSum s;
  s.m = m;
  s.kind = CharacterKind::kQuadratic;
  s.d = d;
  s.value = eng.quadratic(m, d);
  if (direct) s.direct = eng.quadratic_direct(m, d);
  return finish(eng, std::move(s));
}

IntegralityReport integrality_report(SymbolEngine& eng, std::int64_t m) {
  CurveContext& ctx = eng.context();
  check_symbol_modulus(m, ctx.conductor());
  auto primes = odd_prime_factors(m);
  IntegralityReport rep;
  rep.m = m;
  rep.r = static_cast<int>(primes.size());
  if (rep.r > 4) fail(ErrorCode::kInvalidArgument, "integrality_report supports r(m) <= 4");
  const PeriodData& pd = eng.periods();
  const Precision& prec = eng.precision();

  Complex even(prec.bits), odd(prec.bits);
  for (std::int64_t d : divisors_of_squarefree(primes)) {
    int rminus = count_minus(odd_prime_factors(d));
    Complex term = d == 1 ? eng.principal(m) : eng.quadratic(m, d);
    if (rminus % 2 == 0) {
      even += term;
    } else {
      odd += term;
    }
  }
  Real es = even.re / pd.c_f;
  Real os = odd.im / pd.c_f_minus;
  rep.even_sum = es.round();
  rep.odd_sum = os.round();
  rep.even_residual = abs(es - Real(rep.even_sum, es.prec())).to_double();
  rep.odd_residual = abs(os - Real(rep.odd_sum, os.prec())).to_double();
  rep.routes.push_back(IntegralityRoute::kIdentitySum);
  if (rep.even_residual > 1e-6 || rep.odd_residual > 1e-6) {
    fail(ErrorCode::kIntegralityViolation,
         "m = " + std::to_string(m) + ": character sums " + es.to_sci(20) + ", " + os.to_sci(20) +
             " are not integers");
  }
  mpz_class pow2 = mpz_class(1) << (rep.r - 1);
  rep.divisible = mpz_divisible_p(rep.even_sum.get_mpz_t(), pow2.get_mpz_t()) &&
                  mpz_divisible_p(rep.odd_sum.get_mpz_t(), pow2.get_mpz_t());
  if (rep.divisible) {
    rep.psi = rep.even_sum / pow2;
    rep.psi_prime = rep.odd_sum / pow2;
  }
  if (pd.shape == LatticeShape::kRhombic && rep.divisible) {
    rep.parity_checked = true;
    mpz_class diff = rep.psi - rep.psi_prime;
    rep.parity_equal = mpz_even_p(diff.get_mpz_t()) != 0;
  }

  const SymbolOptions& opts = eng.options();
  if (rep.r <= 3 && m <= opts.star_sum_max_m) {
    auto P = eng.period_integrals(m, opts.star_precision);
    const PeriodData& spd = ctx.periods(opts.star_precision);
    mpz_class sum_s = 0, sum_t = 0;
    for (std::int64_t k = 1; k < m; ++k) {
      if (gcd_i64(k, m) != 1) continue;
      bool star = std::all_of(primes.begin(), primes.end(), [k](std::int64_t q) { return jacobi(k, q) == 1; });
      if (!star) continue;
      LatticeCoords lc = lattice_coordinates(spd, (*P)[k]);
      sum_s += lc.s;
      sum_t += lc.t;
    }
    rep.routes.push_back(IntegralityRoute::kDirectStarSum);
    rep.star_psi = sum_s;
    rep.star_psi_prime = sum_t;
    rep.routes_agree = rep.divisible && sum_s == rep.psi && sum_t == rep.psi_prime;
    if (!rep.routes_agree) {
      fail(ErrorCode::kRouteDisagreement,
           "m = " + std::to_string(m) + ": star sums (" + sum_s.get_str() + ", " + sum_t.get_str() +
               ") vs identity sums (" + rep.even_sum.get_str() + ", " + rep.odd_sum.get_str() + ") / 2^" +
               std::to_string(rep.r - 1));
    }
  }
  return rep;
}

}  // namespace ltwist
