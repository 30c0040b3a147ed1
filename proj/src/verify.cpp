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

#include "verify.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <thread>

#include "arith.hpp"
#include "errors.hpp"

namespace ltwist {

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::kPass:
      return "PASS";
    case Verdict::kFail:
      return "FAIL";
    case Verdict::kVacuous:
      return "VACUOUS";
    case Verdict::kSkipped:
      return "SKIPPED";
    case Verdict::kWarn:
      return "WARN";
  }
  return "?";
}

void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn) {
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < jobs; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += jobs) fn(i);
    });
  }
  for (auto& t : pool) t.join();
}

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Verdict failed(const VerifyOptions& opts) { return opts.research ? Verdict::kWarn : Verdict::kFail; }

std::uint64_t group_order(CurveContext& ctx, std::int64_t q) {
  return static_cast<std::uint64_t>(q) + 1 - static_cast<std::uint64_t>(ctx.ap(static_cast<std::uint64_t>(q)));
}

int torsion_ord2(int order) { return order == 4 ? 2 : order == 2 ? 1 : 0; }

// Fills the value fields of `rep`, catching per-M failures.
void evaluate(SymbolEngine& eng, TwistReport& rep, const VerifyOptions& opts) {
  try {
    rep.value = algebraic_l_value(eng, rep.twist.M, opts.rational);
  } catch (const Error& e) {
    rep.verdict = Verdict::kSkipped;
    rep.error = error_code_name(e.code());
    rep.note = e.what();
  }
}

std::string fraction(const mpq_class& q) { return q.get_str(); }

void combinations(const std::vector<std::uint64_t>& S, int r, std::size_t start, std::vector<std::int64_t>& cur,
                  std::int64_t bound, const std::function<bool(const std::vector<std::int64_t>&)>& visit) {
  if (static_cast<int>(cur.size()) == r) {
    visit(cur);
    return;
  }
  std::int64_t prod = 1;
  for (auto q : cur) prod *= q;
  for (std::size_t i = start; i < S.size(); ++i) {
    std::int64_t q = static_cast<std::int64_t>(S[i]);
    if (bound > 0 && prod * q > bound) break;
    cur.push_back(q);
    combinations(S, r, i + 1, cur, bound, visit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::int64_t> admissible_twists(std::int64_t bound, std::int64_t conductor) {
  std::vector<std::int64_t> out;
  for (std::int64_t a = 3; a <= bound; a += 2) {
    if (!is_squarefree(a) || gcd_i64(a, conductor) != 1) continue;
    for (std::int64_t M : {-a, a}) {
      if (mod(M, 4) == 1) out.push_back(M);
    }
  }
  return out;
}

std::vector<TwistReport> verify_lower_bound(SymbolEngine& eng, std::int64_t max_m, const VerifyOptions& opts) {
  CurveContext& ctx = eng.context();
  std::int64_t C = ctx.conductor();
  auto Ms = admissible_twists(max_m, C);
  std::vector<TwistReport> out(Ms.size());
  bool gated = !opts.research && (!ctx.record().optimal || !ctx.record().manin_constant_assumed_odd);
  parallel_for(Ms.size(), opts.jobs, [&](std::size_t i) {
    auto t0 = Clock::now();
    TwistReport& rep = out[i];
    rep.label = ctx.label();
    rep.twist = make_twist(Ms[i], C);
    rep.t = t_of(ctx, rep.twist);
    rep.bound = rep.t - 1;
    if (gated) {
      rep.note = "curve is not flagged optimal with odd Manin constant";
      return;
    }
    evaluate(eng, rep, opts);
    if (rep.value) {
      if (rep.value->is_zero) {
        rep.verdict = Verdict::kVacuous;
      } else if (*rep.value->ord2 >= rep.bound) {
        rep.verdict = Verdict::kPass;
      } else {
        rep.verdict = failed(opts);
        rep.note = "ord2 " + std::to_string(*rep.value->ord2) + " below t - 1 = " + std::to_string(rep.bound);
      }
    }
    rep.seconds = seconds_since(t0);
  });
  return out;
}

HypothesisLedger check_hypotheses(CurveContext& ctx, const Precision& prec, std::uint64_t s_bound) {
  HypothesisLedger h;
  h.label = ctx.label();
  h.optimal = ctx.record().optimal;
  h.manin_odd = ctx.record().manin_constant_assumed_odd;
  h.disc_negative = ctx.model().disc < 0;
  h.rational_two_torsion = ctx.two_torsion();
  h.two_torsion_z2 = h.rational_two_torsion == 2;
  BaseLValue base = base_algebraic_l_value(ctx, prec);
  h.l_ratio = fraction(base.rational);
  h.ord2_l_ratio = base.ord2;
  h.ord2_minus_one = base.ord2 && *base.ord2 == -1;
  h.nonvanishing_condition =
      h.rational_two_torsion <= 2 && base.ord2 && *base.ord2 == -torsion_ord2(h.rational_two_torsion);
  h.s_bound = std::max<std::uint64_t>(s_bound, 10);
  if (h.rational_two_torsion <= 2) {
    h.s_count = sieve_S(ctx, h.s_bound).report.count;
  }
  h.s_nonempty = h.s_count > 0;
  h.exact_valuation_eligible = h.optimal && h.disc_negative && h.two_torsion_z2 && h.manin_odd &&
                               h.ord2_minus_one && h.s_nonempty;
  h.nonvanishing_eligible = h.optimal && h.manin_odd && h.nonvanishing_condition && h.s_nonempty;
  return h;
}

std::vector<std::int64_t> sample_twists_from_S(const std::vector<std::uint64_t>& S, int r, int samples) {
  std::vector<std::int64_t> out;
  std::vector<std::int64_t> cur;
  std::vector<std::uint64_t> odd;
  for (auto q : S) {
    if (q > 2) odd.push_back(q);
  }
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (static_cast<int>(out.size()) >= samples) return;
    if (static_cast<int>(cur.size()) == r) {
      std::int64_t m = 1;
      for (auto q : cur) m *= q;
      out.push_back(m % 4 == 1 ? m : -m);
      return;
    }
    for (std::size_t i = start; i < odd.size(); ++i) {
      cur.push_back(static_cast<std::int64_t>(odd[i]));
      rec(i + 1);
      cur.pop_back();
      if (static_cast<int>(out.size()) >= samples) return;
    }
  };
  rec(0);
  return out;
}

std::vector<TwistReport> verify_exact_valuation(SymbolEngine& eng, int r, int samples, std::uint64_t prime_bound,
                                                const VerifyOptions& opts) {
  CurveContext& ctx = eng.context();
  HypothesisLedger h = check_hypotheses(ctx, eng.precision(), prime_bound);
  if (!h.exact_valuation_eligible && !opts.research) {
    TwistReport rep;
    rep.label = ctx.label();
    rep.note = "hypotheses not satisfied";
    return {rep};
  }
  auto S = sieve_S(ctx, std::max<std::uint64_t>(prime_bound, 10)).primes;
  auto Ms = sample_twists_from_S(S, r, samples);
  std::vector<TwistReport> out(Ms.size());
  parallel_for(Ms.size(), opts.jobs, [&](std::size_t i) {
    auto t0 = Clock::now();
    TwistReport& rep = out[i];
    rep.label = ctx.label();
    rep.twist = make_twist(Ms[i], ctx.conductor());
    rep.t = t_of(ctx, rep.twist);
    rep.bound = r - 1;
    evaluate(eng, rep, opts);
    if (rep.value) {
      if (rep.value->is_zero) {
        rep.verdict = failed(opts);
        rep.note = "L(E^(M), 1) vanishes";
      } else if (*rep.value->ord2 == r - 1) {
        rep.verdict = Verdict::kPass;
        // not computed here
        rep.note = "nonzero L; finiteness of E^(M)(Q) and Sha asserted by the cited theorem";
      } else {
        rep.verdict = failed(opts);
        rep.note = "ord2 " + std::to_string(*rep.value->ord2) + " != r - 1 = " + std::to_string(r - 1);
      }
    }
    rep.seconds = seconds_since(t0);
  });
  return out;
}

NonvanishingResult nonvanishing_search(SymbolEngine& eng, int r, std::int64_t bound, const VerifyOptions& opts) {
  CurveContext& ctx = eng.context();
  NonvanishingResult res;
  res.r = r;
  res.bound = bound;
  if (ctx.two_torsion() > 2) {
    res.applicable = false;
    return res;
  }
  auto S = sieve_S(ctx, static_cast<std::uint64_t>(std::max<std::int64_t>(bound, 10))).primes;
  if (S.empty()) {
    res.applicable = false;
    return res;
  }
  std::vector<std::int64_t> Ms;
  std::vector<std::int64_t> cur;
  combinations(S, r, 0, cur, bound, [&](const std::vector<std::int64_t>& qs) {
    std::int64_t m = 1;
    for (auto q : qs) m *= q;
    Ms.push_back(m % 4 == 1 ? m : -m);
    return true;
  });
  std::sort(Ms.begin(), Ms.end(), [](std::int64_t a, std::int64_t b) {
    return std::llabs(a) != std::llabs(b) ? std::llabs(a) < std::llabs(b) : a < b;
  });
  res.candidates = Ms.size();
  RationalizeConfig rc = opts.rational;
  rc.symbol_route = false;
  std::vector<int> state(Ms.size(), 0);  // 1 nonzero, 0 zero, -1 error
  std::vector<std::string> errs(Ms.size());
  parallel_for(Ms.size(), opts.jobs, [&](std::size_t i) {
    try {
      state[i] = algebraic_l_value(eng, Ms[i], rc).is_zero ? 0 : 1;
    } catch (const Error& e) {
      state[i] = -1;
      errs[i] = "M = " + std::to_string(Ms[i]) + ": " + e.what();
    }
  });
  for (std::size_t i = 0; i < Ms.size(); ++i) {
    if (state[i] == 1) {
      ++res.nonzero;
      if (res.first_nonzero.size() < 10) res.first_nonzero.push_back(Ms[i]);
    } else if (state[i] < 0) {
      res.errors.push_back(errs[i]);
    }
  }
  return res;
}

std::vector<CounterexampleRecord> reproduce_counterexamples(
    const std::function<CurveContext*(const std::string&)>& find, const Precision& prec) {
  std::vector<CounterexampleRecord> out;
  for (auto [label, q] : {std::pair<const char*, std::int64_t>{"34a1", 3}, {"99c1", 7}}) {
    CounterexampleRecord rec;
    rec.label = label;
    rec.q = q;
    rec.M = -q;
    CurveContext* ctx = find(label);
    if (!ctx) {
      rec.note = "curve missing from the table";
      out.push_back(rec);
      continue;
    }
    try {
      SymbolEngine eng(*ctx, prec);
      RationalizeConfig rc;
      rc.symbol_route = false;
      AlgebraicLValue v = algebraic_l_value(eng, rec.M, rc);
      rec.abs_normalized = abs(v.normalized).to_double();
      rec.rational = v.rational.get_str();
      rec.zero = v.is_zero;
      std::uint64_t N = group_order(*ctx, q);
      bool good = ctx->conductor() % q != 0;
      rec.other_conditions = good && ord2_u64(N) == torsion_ord2(ctx->two_torsion());
      SMembership s = in_S(*ctx, static_cast<std::uint64_t>(q));
      rec.in_s_reason = s_reason_name(s.reason);
      rec.congruence_excluded = ctx->model().disc > 0 && q % 4 == 3 && s.reason == SReason::kCongruenceFail;
      rec.verdict = rec.zero && rec.other_conditions && rec.congruence_excluded ? Verdict::kPass : Verdict::kFail;
    } catch (const Error& e) {
      rec.note = e.what();
    }
    out.push_back(rec);
  }
  return out;
}

namespace {

LemmaRecord lemma_value(SymbolEngine& eng, std::int64_t m) {
  LemmaRecord rec;
  rec.m = m;
  CurveContext& ctx = eng.context();
  const PeriodData& pd = eng.periods();
  Complex v = eng.principal(m);
  Real x = v.re / pd.c_f;
  int tor = torsion_bound(ctx.model(), ctx.conductor());
  mpz_class den(static_cast<unsigned long>(1e4 * tor * tor));
  Real err(std::max(1e-20, 1e3 * eng.precision().target()), eng.precision().bits);
  mpq_class q = reconstruct_rational(x, den, err);
  rec.value = q.get_str();
  rec.ord2 = ord2(q);
  return rec;
}

}  // namespace

std::vector<LemmaRecord> verify_strict_bound_lemma(SymbolEngine& eng, const std::vector<std::int64_t>& ms,
                                                   const VerifyOptions& opts) {
  CurveContext& ctx = eng.context();
  std::vector<LemmaRecord> out;
  for (std::int64_t m : ms) {
    LemmaRecord rec;
    rec.m = m;
    if (!opts.research && (!ctx.record().optimal || !ctx.record().manin_constant_assumed_odd)) {
      rec.note = "curve is not flagged optimal with odd Manin constant";
      out.push_back(rec);
      continue;
    }
    try {
      check_symbol_modulus(m, ctx.conductor());
      auto primes = odd_prime_factors(m);
      rec.r = static_cast<int>(primes.size());
      rec.bound = rec.r - 1;
      rec.strict = true;
      int plus = 0, minus = 0;
      bool two_parts = true;
      for (auto q : primes) {
        (q % 4 == 1 ? plus : minus)++;
        if (ord2_u64(group_order(ctx, q)) != 1) two_parts = false;
      }
      bool rank_zero = ctx.root_number(eng.precision()).w == 1 && !eng.l_value().is_zero() &&
                       abs(eng.l_value() / eng.periods().c_inf).to_double() > 1e-15;
      if (!opts.research && (plus < 1 || minus < 1 || !two_parts || !rank_zero)) {
        rec.note = "hypotheses not satisfied";
        out.push_back(rec);
        continue;
      }
      LemmaRecord v = lemma_value(eng, m);
      rec.value = v.value;
      rec.ord2 = v.ord2;
      rec.verdict = !rec.ord2 || *rec.ord2 > rec.bound ? Verdict::kPass : failed(opts);
    } catch (const Error& e) {
      rec.verdict = Verdict::kSkipped;
      rec.note = e.what();
    }
    out.push_back(rec);
  }
  return out;
}

std::vector<LemmaRecord> verify_weak_bound_lemma(SymbolEngine& eng, const std::vector<std::int64_t>& ms,
                                                 const VerifyOptions& opts) {
  CurveContext& ctx = eng.context();
  std::vector<LemmaRecord> out;
  bool even = ctx.two_torsion() > 1;
  for (std::int64_t m : ms) {
    LemmaRecord rec;
    rec.m = m;
    if (!opts.research && (!ctx.record().optimal || !ctx.record().manin_constant_assumed_odd)) {
      rec.note = "curve is not flagged optimal with odd Manin constant";
      out.push_back(rec);
      continue;
    }
    try {
      check_symbol_modulus(m, ctx.conductor());
      auto primes = odd_prime_factors(m);
      rec.r = static_cast<int>(primes.size());
      if (even) {
        rec.bound = rec.r - 1;
      } else {
        rec.bound = t_of(ctx, make_twist(m % 4 == 1 ? m : -m, ctx.conductor()));
      }
      LemmaRecord v = lemma_value(eng, m);
      rec.value = v.value;
      rec.ord2 = v.ord2;
      rec.verdict = !rec.ord2 || *rec.ord2 >= rec.bound ? Verdict::kPass : failed(opts);
    } catch (const Error& e) {
      rec.verdict = Verdict::kSkipped;
      rec.note = e.what();
    }
    out.push_back(rec);
  }
  return out;
}

std::vector<IdentityRecord> verify_identities(SymbolEngine& eng, const std::vector<std::int64_t>& ms,
                                              double tolerance) {
  CurveContext& ctx = eng.context();
  const Precision& prec = eng.precision();
  std::vector<IdentityRecord> out;
  auto judge = [&](IdentityRecord rec, const Complex& a, const Complex& b, const Real& scale) {
    Real base = std::max(a.abs(), scale);
    rec.residual = ((a - b).abs() / base).to_double();
    rec.verdict = rec.residual < tolerance ? Verdict::kPass : Verdict::kFail;
    out.push_back(rec);
  };
  for (std::int64_t m : ms) {
    if (gcd_i64(m, ctx.conductor()) != 1) {
      IdentityRecord rec;
      rec.identity = "all";
      rec.m = m;
      rec.verdict = Verdict::kSkipped;
      rec.note = "m not coprime to the conductor";
      out.push_back(rec);
      continue;
    }
    try {
      const PeriodData& pd = eng.periods();
      auto primes = odd_prime_factors(m);
      int r = static_cast<int>(primes.size());
      auto divs = divisors_of_squarefree(primes);
      Real L = eng.l_value();

      // Sum over divisors: (sigma(m) - a_m) L = -sum 2^{r - r(d)} <d>_{chi^0}.
      mpz_class sigma = 1, am = 1, nprod = 1;
      for (auto q : primes) {
        sigma *= q + 1;
        am *= static_cast<long>(ctx.ap(static_cast<std::uint64_t>(q)));
        nprod *= static_cast<long>(group_order(ctx, q));
      }
      Complex lhs(prec.bits), rhs(prec.bits), rhs4(prec.bits);
      lhs.re = L * Real(mpz_class(sigma - am), prec.bits);
      for (std::int64_t d : divs) {
        if (d == 1) continue;
        auto dp = odd_prime_factors(d);
        Complex direct = eng.principal_direct(d);
        Real w(static_cast<long>(1L << (r - static_cast<int>(dp.size()))), prec.bits);
        rhs -= Complex(direct.re * w, direct.im * w);
        mpz_class f = 1;
        for (auto q : primes) {
          if (d % q != 0) f *= 1 - q;
        }
        Real fr(f, prec.bits);
        rhs4 += Complex(direct.re * fr, direct.im * fr);
      }
      IdentityRecord rec;
      rec.m = m;
      rec.d = 1;
      rec.identity = "sum-over-divisors";
      judge(rec, lhs, rhs, pd.c_f);

      // Product formula: N_{q_1} ... N_{q_r} L = (-1)^r sum prod (1 - q) <d>_{chi^0}.
      Complex lhs4(prec.bits);
      lhs4.re = L * Real(nprod, prec.bits);
      if (r % 2 == 1) rhs4 = Complex(-rhs4.re, -rhs4.im);
      rec.identity = "product-formula";
      judge(rec, lhs4, rhs4, pd.c_f);

      // Twisted value: L(E, chi_m, 1) = g(chi_m)/m <m>_{chi_m}.
      std::int64_t M = m % 4 == 1 ? m : -m;
      TwistedLValue tl = ctx.twisted(M, prec, eng.options().twist);
      Complex g = gauss_sum(m, prec);
      Complex direct = eng.quadratic_direct(m, m);
      Complex via = g * direct;
      via.re /= static_cast<long>(m);
      via.im /= static_cast<long>(m);
      Complex series(tl.value, Real(prec.bits));
      rec.identity = "twisted-value";
      rec.d = m;
      judge(rec, series, via, pd.c_f);

      // Propagation: <m>_{chi_d} = prod (a_q - 2 chi_d(q)) <d>_{chi_d}.
      for (std::int64_t d : divs) {
        if (d == 1 || d == m) continue;
        rec.identity = "propagation";
        rec.d = d;
        judge(rec, eng.quadratic(m, d), eng.quadratic_direct(m, d), pd.c_f);
      }
    } catch (const Error& e) {
      IdentityRecord rec;
      rec.identity = "all";
      rec.m = m;
      rec.verdict = Verdict::kFail;
      rec.note = e.what();
      out.push_back(rec);
    }
  }
  return out;
}

Lemma21Sweep verify_lemma21(CurveContext& ctx, int count) {
  Lemma21Sweep sweep;
  sweep.rational_two_torsion = ctx.two_torsion();
  if (sweep.rational_two_torsion > 2) {
    sweep.applicable = false;
    return sweep;
  }
  for (std::uint64_t q = 3; static_cast<int>(sweep.results.size()) < count; q += 2) {
    if (!is_prime_u64(q)) continue;
    bool bad = false;
    for (auto p : ctx.bad_primes()) bad = bad || p == q;
    if (bad) continue;
    Lemma21Result r = lemma21_check(ctx.model(), sweep.rational_two_torsion, ctx.isogenous(), q);
    if (r.agree) ++sweep.agreements;
    sweep.results.push_back(r);
  }
  return sweep;
}

}  // namespace ltwist
