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

#include "rationalize.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>

#include "arith.hpp"
#include "errors.hpp"
#include "finite_field.hpp"

namespace ltwist {

mpq_class reconstruct_rational(const Real& x, const mpz_class& den_bound, const Real& abs_err) {
  mpfr_prec_t prec = x.prec();
  Real window = abs_err * Real(mpz_class(2 * den_bound * den_bound), prec);
  if (den_bound < 1 || window >= Real(1L, prec)) {
    fail(ErrorCode::kInvalidArgument, "abs_err must be below 1/(2 den_bound^2)");
  }
  mpz_class p2 = 0, q2 = 1;  // p_{-2}/q_{-2}
  mpz_class p1 = 1, q1 = 0;  // p_{-1}/q_{-1}
  Real y = x;
  for (int it = 0; it < 400; ++it) {
    Real fl(prec);
    mpfr_floor(fl.get(), y.get());
    mpz_class a = fl.round();
    mpz_class p = a * p1 + p2;
    mpz_class q = a * q1 + q2;
    if (q > den_bound) break;
    Real approx = Real(mpq_class(p, q), prec);
    if (abs(x - approx) <= abs_err) {
      mpq_class r(p, q);
      r.canonicalize();
      return r;
    }
    Real frac = y - fl;
    if (frac.is_zero()) break;
    y = Real(1L, prec) / frac;
    p2 = p1;
    q2 = q1;
    p1 = p;
    q1 = q;
  }
  fail(ErrorCode::kNoRationalInWindow,
       "no rational with denominator <= " + den_bound.get_str() + " within the window of " + x.to_sci(30));
}

std::optional<int> ord2(const mpq_class& r) {
  if (r == 0) return std::nullopt;
  return ltwist::ord2(r.get_num()) - ltwist::ord2(r.get_den());
}

std::string ord2_to_string(const std::optional<int>& v) { return v ? std::to_string(*v) : "inf"; }

int torsion_bound(const WeierstrassModel& model, std::int64_t conductor, int primes) {
  std::uint64_t g = 0;
  int used = 0;
  for (std::uint64_t p = 3; used < primes; p += 2) {
    if (!is_prime_u64(p)) continue;
    bool bad = conductor > 0 ? conductor % static_cast<std::int64_t>(p) == 0
                             : mpz_divisible_ui_p(model.disc.get_mpz_t(), p) != 0;
    if (bad) continue;
    std::uint64_t n = count_points(model, p);
    g = std::gcd(g, n);
    ++used;
  }
  return static_cast<int>(g);
}

namespace {

mpz_class den_bound_for(int torsion, const RationalizeConfig& cfg) {
  double b = cfg.den_bound_factor * torsion * torsion;
  return mpz_class(static_cast<unsigned long>(std::ceil(b)));
}

Real window_for(const Precision& prec, const Real& scale, const RationalizeConfig& cfg) {
  // Never below what the numerics can deliver.
  double numeric = 1e3 * prec.target() / std::max(scale.to_double(), 1e-300);
  double e = std::max(std::pow(10.0, cfg.abs_err_exp10), numeric);
  return Real(e, prec.bits);
}

}  // namespace

AlgebraicLValue algebraic_l_value(SymbolEngine& eng, std::int64_t M, const RationalizeConfig& cfg) {
  CurveContext& ctx = eng.context();
  std::int64_t C = ctx.conductor();
  TwistDescriptor tw = make_twist(M, C);
  WeierstrassModel twist = quadratic_twist(ctx.model(), mpz_class(static_cast<long>(M)));

  AlgebraicLValue out;
  out.label = ctx.label();
  out.M = M;
  out.torsion = torsion_bound(twist, C * tw.m * tw.m);
  out.den_bound = den_bound_for(out.torsion, cfg);

  Precision prec = eng.precision();
  for (int attempt = 0; attempt < 2; ++attempt) {
    TwistedLValue tl = ctx.twisted(M, prec, eng.options().twist);
    PeriodData pdt = periods(twist, prec);
    out.w = tl.w;
    out.l_value = tl.value;
    out.c_inf_twist = pdt.c_inf;
    out.normalized = tl.value / pdt.c_inf;
    try {
      out.rational = reconstruct_rational(out.normalized, out.den_bound, window_for(prec, pdt.c_inf, cfg));
      break;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoRationalInWindow || attempt == 1) throw;
      prec = Precision(prec.bits + 64, prec.target_exp10 - 10);
      out.escalated = true;
    }
  }
  out.is_zero = out.rational == 0 && abs(out.normalized).to_double() < cfg.zero_threshold;
  if (out.rational == 0 && !out.is_zero) {
    fail(ErrorCode::kInternal, "zero reconstruction above the zero threshold");
  }
  out.ord2 = ord2(out.rational);

  const PeriodData& pd = ctx.periods(eng.precision());
  bool plus = tw.m % 4 == 1;
  Real root_m = sqrt(Real(static_cast<long>(tw.m), eng.precision().bits));
  out.period_ratio = root_m * out.c_inf_twist / (plus ? pd.c_inf : pd.c_inf_minus);
  double lg = std::log2(out.period_ratio.to_double());
  out.period_ratio_log2 = static_cast<int>(std::lround(lg));
  Real pw(1L, out.period_ratio.prec());
  mpfr_mul_2si(pw.get(), pw.get(), out.period_ratio_log2, MPFR_RNDN);
  out.period_ratio_residual = abs(out.period_ratio - pw).to_double();

  if (cfg.symbol_route) {
    SymbolSum s = bracket_quadratic(eng, tw.m, tw.m, false);
    // odd chi: g(chi) = i sqrt(m), so <m>_chi = -i sqrt(m) L
    Real v = plus ? s.re_norm : -s.im_norm;
    out.symbol_normalized = v;
    int tor_e = torsion_bound(ctx.model(), C);
    const Real& scale = plus ? pd.c_f : pd.c_f_minus;
    out.symbol_rational = reconstruct_rational(v, den_bound_for(tor_e, cfg), window_for(eng.precision(), scale, cfg));
    out.symbol_ord2 = ord2(*out.symbol_rational);
    bool zero_a = !out.ord2, zero_b = !out.symbol_ord2;
    out.routes_agree = zero_a == zero_b && (zero_a || *out.ord2 == *out.symbol_ord2);
    if (!out.routes_agree) {
      fail(ErrorCode::kOrd2Disagreement,
           "M = " + std::to_string(M) + ": ord2 " + ord2_to_string(out.ord2) + " via twisted periods, " +
               ord2_to_string(out.symbol_ord2) + " via symbol sums");
    }
  }
  return out;
}

BaseLValue base_algebraic_l_value(CurveContext& ctx, const Precision& prec, const RationalizeConfig& cfg) {
  BaseLValue out;
  out.w = ctx.root_number(prec).w;
  out.l_value = ctx.l_value(prec);
  const PeriodData& pd = ctx.periods(prec);
  out.normalized = out.l_value / pd.c_inf;
  out.torsion = torsion_bound(ctx.model(), ctx.conductor());
  out.rational = reconstruct_rational(out.normalized, den_bound_for(out.torsion, cfg), window_for(prec, pd.c_inf, cfg));
  out.ord2 = ord2(out.rational);
  return out;
}

}  // namespace ltwist
