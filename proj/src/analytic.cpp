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

#include "analytic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>

#include "arith.hpp"
#include "ddouble.hpp"
#include "errors.hpp"

namespace ltwist {

namespace {

constexpr int kGuardBits = 32;
constexpr double kTwoPi = 6.283185307179586476925286766559;
// Tail terms are summed in double-double once they drop below 2^-(bits - kDDBits).
constexpr int kDDBits = 100;
constexpr std::uint64_t kResync = 1024;

Real agm(Real a, Real b) {
  mpfr_prec_t prec = std::max(a.prec(), b.prec());
  Real eps = pow10(0, prec);
  mpfr_mul_2si(eps.get(), eps.get(), -static_cast<long>(prec) + 4, MPFR_RNDN);
  for (int it = 0; it < 200; ++it) {
    Real an = (a + b) / 2;
    Real bn = sqrt(a * b);
    a = std::move(an);
    b = std::move(bn);
    if (abs(a - b) <= eps * abs(a)) return a;
  }
  fail(ErrorCode::kPrecisionExhausted, "AGM did not converge");
}

// Index where exp(-2 pi n / X) first drops below 2^-(bits - kDDBits).
std::uint64_t dd_switch(double X, int bits) {
  if (bits <= kDDBits) return 1;
  double n = (bits - kDDBits) * std::log(2.0) * X / kTwoPi;
  return static_cast<std::uint64_t>(std::ceil(n)) + 1;
}

long coeff(const std::vector<std::int64_t>& an, const JacobiCharacter* chi, std::uint64_t n) {
  long c = static_cast<long>(an[n]);
  if (c != 0 && chi) c *= (*chi)(n);
  return c;
}

// Sum_{n=1}^{N} c_n / n * rho^n e^{i n theta}. theta = null means real.
void power_series(const std::vector<std::int64_t>& an, const JacobiCharacter* chi, const Real& X,
                  const Real* theta, std::uint64_t N, mpfr_prec_t bits, Real* re, Real* im) {
  if (an.size() <= N) {
    fail(ErrorCode::kCoefficientTableTooShort,
         "need " + std::to_string(N) + " coefficients, have " + std::to_string(an.size() - 1));
  }
  mpfr_prec_t wp = bits + kGuardBits;
  Real two_pi = Real::pi(wp) * 2;
  Real logrho = -(two_pi / X);
  Real acc_re(wp), acc_im(wp), t(wp);
  Real p_re = exp(logrho);
  Real p_im(wp);
  Real q_re(wp), q_im(wp);
  if (theta) {
    Real th(*theta);
    mpfr_set_prec(th.get(), wp);
    mpfr_set(th.get(), theta->get(), MPFR_RNDN);
    q_re = p_re * cos(th);
    q_im = p_re * sin(th);
    p_re = q_re;
    p_im = q_im;
  } else {
    q_re = p_re;
  }
  std::uint64_t nsw = std::min<std::uint64_t>(N + 1, dd_switch(X.to_double(), bits));
  Real u(wp), v(wp);
  for (std::uint64_t n = 1; n < nsw; ++n) {
    long c = coeff(an, chi, n);
    if (c != 0) {
      mpfr_mul_si(t.get(), p_re.get(), c, MPFR_RNDN);
      mpfr_div_ui(t.get(), t.get(), n, MPFR_RNDN);
      mpfr_add(acc_re.get(), acc_re.get(), t.get(), MPFR_RNDN);
      if (theta) {
        mpfr_mul_si(t.get(), p_im.get(), c, MPFR_RNDN);
        mpfr_div_ui(t.get(), t.get(), n, MPFR_RNDN);
        mpfr_add(acc_im.get(), acc_im.get(), t.get(), MPFR_RNDN);
      }
    }
    if (theta) {
      u = p_re * q_re - p_im * q_im;
      v = p_re * q_im + p_im * q_re;
      mpfr_swap(p_re.get(), u.get());
      mpfr_swap(p_im.get(), v.get());
    } else {
      p_re *= q_re;
    }
  }
  if (nsw <= N) {
    CDD q{dd_from_mpfr(q_re.get()), dd_from_mpfr(q_im.get())};
    DD sum_re, sum_im;
    Real nth(wp);
    for (std::uint64_t n0 = nsw; n0 <= N; n0 += kResync) {
      // q^{n0} from scratch at each block start.
      nth = logrho * static_cast<long>(n0);
      Real rho_n = exp(nth);
      CDD p;
      if (theta) {
        Real ang = *theta * static_cast<long>(n0);
        mpfr_prec_round(ang.get(), wp, MPFR_RNDN);
        p = {dd_from_mpfr((rho_n * cos(ang)).get()), dd_from_mpfr((rho_n * sin(ang)).get())};
      } else {
        p = {dd_from_mpfr(rho_n.get()), DD{}};
      }
      std::uint64_t end = std::min(N, n0 + kResync - 1);
      for (std::uint64_t n = n0; n <= end; ++n) {
        long c = coeff(an, chi, n);
        if (c != 0) {
          double f = static_cast<double>(c);
          double dn = static_cast<double>(n);
          sum_re = sum_re + (p.re * f) / dn;
          if (theta) sum_im = sum_im + (p.im * f) / dn;
        }
        if (theta) {
          p = p * q;
        } else {
          p.re = p.re * q.re;
        }
      }
    }
    mpfr_add_dd(acc_re.get(), sum_re);
    mpfr_add_dd(acc_im.get(), sum_im);
  }
  mpfr_prec_round(acc_re.get(), bits, MPFR_RNDN);
  *re = std::move(acc_re);
  if (im) {
    mpfr_prec_round(acc_im.get(), bits, MPFR_RNDN);
    *im = std::move(acc_im);
  }
}

std::vector<std::uint64_t> primes_of(std::int64_t n) {
  std::vector<std::uint64_t> out;
  for (auto& [p, e] : factor_u64(static_cast<std::uint64_t>(std::llabs(n)))) out.push_back(p);
  return out;
}

double split_tolerance(const Precision& prec) { return std::max(1e-25, 1e5 * prec.target()); }

// L(1) = (1 + w) S(1) with the t = 1.2 pairing as a consistency check.
Real paired_value(const std::vector<std::int64_t>& an, const JacobiCharacter* chi, const Real& X,
                  int w, const Precision& prec, bool split_check) {
  if (w < 0) return Real(0L, prec.bits);
  double err = prec.target() / 4;
  std::uint64_t N = series_length(X.to_double(), err);
  Real s1 = exp_series(an, chi, X, N, prec.bits);
  Real value = s1 * 2;
  if (split_check) {
    Real t(1.2, prec.bits + kGuardBits);
    mpfr_set_str(t.get(), "1.2", 10, MPFR_RNDN);
    Real Xa = X / t, Xb = X * t;
    Real sa = exp_series(an, chi, Xa, series_length(Xa.to_double(), err), prec.bits);
    Real sb = exp_series(an, chi, Xb, series_length(Xb.to_double(), err), prec.bits);
    double diff = abs(value - (sa + sb)).to_double();
    if (diff > split_tolerance(prec)) {
      fail(ErrorCode::kPrecisionExhausted,
           "split-point check failed: |S(1) pairing - S(1.2) pairing| = " + std::to_string(diff));
    }
  }
  return value;
}

}  // namespace

void Precision::validate() const {
  if (bits < 32 || bits > 4096) fail(ErrorCode::kInvalidArgument, "precision bits out of range");
  if (target_exp10 * std::log2(10.0) < 16 - bits) {
    fail(ErrorCode::kInvalidArgument, "target 1e" + std::to_string(target_exp10) +
                                          " is finer than " + std::to_string(bits) +
                                          "-bit mantissa allows");
  }
}

double Precision::target() const { return std::pow(10.0, target_exp10); }

Real Precision::target_real() const { return pow10(target_exp10, bits); }

PeriodData periods(const WeierstrassModel& model, const Precision& prec) {
  mpfr_prec_t wp = prec.bits + kGuardBits;
  std::array<mpz_class, 4> cub = {model.b6, 2 * model.b4, model.b2, mpz_class(4)};
  auto roots = cubic_real_roots(cub, wp);
  Real pi = Real::pi(wp);
  PeriodData out;
  if (model.disc > 0) {
    if (roots.size() != 3) fail(ErrorCode::kPrecisionExhausted, "expected three real 2-division roots");
    const Real& e3 = roots[0];
    const Real& e2 = roots[1];
    const Real& e1 = roots[2];
    out.omega_plus = pi / agm(sqrt(e1 - e3), sqrt(e1 - e2));
    out.omega_minus = pi / agm(sqrt(e1 - e3), sqrt(e2 - e3));
    out.delta = 2;
    out.shape = LatticeShape::kRectangular;
  } else {
    if (roots.size() != 1) fail(ErrorCode::kPrecisionExhausted, "expected one real 2-division root");
    const Real& e1 = roots[0];
    Real b2(model.b2, wp), b4(model.b4, wp);
    Real A = e1 * 3 + b2 / 4;
    Real B = sqrt(e1 * e1 * 3 + b2 * e1 / 2 + b4 / 2);
    Real two_sqrt_b = sqrt(B) * 2;
    out.omega_plus = pi * 2 / agm(two_sqrt_b, sqrt(B * 2 + A));
    out.omega_minus = pi * 2 / agm(two_sqrt_b, sqrt(B * 2 - A));
    out.delta = 1;
    out.shape = LatticeShape::kRhombic;
  }
  for (Real* r : {&out.omega_plus, &out.omega_minus}) mpfr_prec_round(r->get(), prec.bits, MPFR_RNDN);
  out.c_inf = out.omega_plus * static_cast<long>(out.delta);
  out.c_inf_minus = out.omega_minus * static_cast<long>(out.delta);
  out.c_f = out.c_inf;
  out.c_f_minus = out.c_inf_minus;
  return out;
}

std::uint64_t series_length(double X, double err) {
  auto log_tail = [X](double n) { return std::log(X / kTwoPi) + std::log(n + X) - kTwoPi * n / X; };
  double target = std::log(err);
  double lo = 1, hi = std::max(2.0, std::ceil(X));
  while (log_tail(hi) >= target) hi *= 2;
  if (log_tail(lo) < target) return 1;
  while (hi - lo > 1) {
    double mid = std::floor((lo + hi) / 2);
    if (log_tail(mid) < target) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return static_cast<std::uint64_t>(hi);
}

JacobiCharacter::JacobiCharacter(std::int64_t d) : d_(d) {
  if (d < 1 || d % 2 == 0) fail(ErrorCode::kInvalidArgument, "Jacobi modulus must be odd positive");
  table_.resize(static_cast<std::size_t>(d));
  for (std::int64_t k = 0; k < d; ++k) table_[k] = static_cast<std::int8_t>(jacobi(k, d));
}

Real exp_series(const std::vector<std::int64_t>& an, const JacobiCharacter* chi, const Real& X,
                std::uint64_t N, mpfr_prec_t prec) {
  Real out(prec);
  power_series(an, chi, X, nullptr, N, prec, &out, nullptr);
  return out;
}

RootNumberProbe probe_root_number(const std::vector<std::int64_t>& an, const JacobiCharacter* chi,
                                  const Real& sqrt_level, const Precision& prec) {
  double err = prec.target() / 4;
  Real t(0L, prec.bits + kGuardBits);
  mpfr_set_str(t.get(), "1.2", 10, MPFR_RNDN);
  auto S = [&](const Real& X) { return exp_series(an, chi, X, series_length(X.to_double(), err), prec.bits); };
  Real s1 = S(sqrt_level);
  Real sa = S(sqrt_level / t);
  Real sb = S(sqrt_level * t);
  // V_w(1) = (1 + w) S(1); V_w(1.2) = S(1.2) + w S(1/1.2).
  double plus = abs(s1 * 2 - (sa + sb)).to_double();
  double minus = abs(sa - sb).to_double();
  RootNumberProbe out;
  const double tol = 1e-10;
  bool ok_plus = plus < tol, ok_minus = minus < tol;
  if (ok_plus == ok_minus) {
    fail(ErrorCode::kAmbiguousRootNumber, "root number probe margins " + std::to_string(plus) + " / " +
                                              std::to_string(minus));
  }
  out.w = ok_plus ? 1 : -1;
  out.margin = ok_plus ? plus : minus;
  out.other_margin = ok_plus ? minus : plus;
  return out;
}

CurveContext::CurveContext(CurveRecord record, int jobs)
    : record_(std::move(record)), jobs_(std::max(1, jobs)), aps_(record_.label) {
  if (record_.conductor > 0) {
    bad_ = primes_of(record_.conductor);
  } else {
    for (const mpz_class& p : prime_divisors(record_.model.disc)) bad_.push_back(p.get_ui());
  }
  two_torsion_ = rational_two_torsion_order(record_.model);
  if (two_torsion_ == 2) isogenous_ = two_isogenous_curve(record_.model);
}

std::int64_t CurveContext::conductor() const {
  if (record_.conductor <= 0) {
    fail(ErrorCode::kInvalidArgument, "conductor of " + record_.label + " is unknown");
  }
  return record_.conductor;
}

std::int64_t CurveContext::ap(std::uint64_t p) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    if (auto v = aps_.find(p)) return *v;
  }
  std::int64_t v = a_p(record_.model, p);
  std::lock_guard<std::mutex> lock(mu_);
  aps_.insert(p, v);
  return v;
}

std::shared_ptr<const std::vector<std::int64_t>> CurveContext::coefficients(std::uint64_t n) {
  std::lock_guard<std::mutex> lock(mu_);
  if (an_ && an_->size() > n) return an_;
  std::uint64_t grow = an_ ? static_cast<std::uint64_t>(1.25 * static_cast<double>(an_->size())) : 0;
  std::uint64_t target = std::max<std::uint64_t>({n, grow, 1000});
  aps_.extend(record_.model, target, jobs_);
  an_ = std::make_shared<const std::vector<std::int64_t>>(a_n_table(aps_, bad_, target));
  return an_;
}

void CurveContext::seed_ap(std::uint64_t p, std::int64_t ap) {
  std::lock_guard<std::mutex> lock(mu_);
  aps_.insert(p, ap);
}

ApTable CurveContext::ap_snapshot() {
  std::lock_guard<std::mutex> lock(mu_);
  return aps_;
}

const PeriodData& CurveContext::periods(const Precision& prec) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = periods_[prec];
  if (!slot) slot = std::make_unique<PeriodData>(ltwist::periods(record_.model, prec));
  return *slot;
}

RootNumberProbe CurveContext::root_number(const Precision& prec) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = roots_.find(prec);
    if (it != roots_.end()) return it->second;
  }
  Real X = sqrt(Real(static_cast<long>(conductor()), prec.bits + kGuardBits));
  auto an = coefficients(series_length(X.to_double() * 1.2 * 1.01, prec.target() / 4));
  RootNumberProbe probe = probe_root_number(*an, nullptr, X, prec);
  std::lock_guard<std::mutex> lock(mu_);
  roots_[prec] = probe;
  return probe;
}

Real CurveContext::l_value(const Precision& prec) {
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = lvalues_.find(prec);
    if (it != lvalues_.end()) return it->second;
  }
  int w = root_number(prec).w;
  Real X = sqrt(Real(static_cast<long>(conductor()), prec.bits + kGuardBits));
  auto an = coefficients(series_length(X.to_double() * 1.21, prec.target() / 4));
  Real value = paired_value(*an, nullptr, X, w, prec, true);
  std::lock_guard<std::mutex> lock(mu_);
  lvalues_.emplace(prec, value);
  return value;
}

Real standalone_l_value(const WeierstrassModel& model, std::int64_t conductor, const Precision& prec,
                        int* w_out) {
  Real X = sqrt(Real(static_cast<long>(conductor), prec.bits + kGuardBits));
  std::uint64_t N = series_length(X.to_double() * 1.21, prec.target() / 4);
  ApTable aps;
  aps.extend(model, N);
  auto an = a_n_table(aps, primes_of(conductor), N);
  int w = probe_root_number(an, nullptr, X, prec).w;
  if (w_out) *w_out = w;
  return paired_value(an, nullptr, X, w, prec, true);
}

TwistedLValue CurveContext::twisted(std::int64_t M, const Precision& prec, const TwistOptions& opts) {
  auto key = std::make_pair(M, prec);
  {
    std::lock_guard<std::mutex> lock(mu_);
    auto it = twisted_.find(key);
    if (it != twisted_.end() && (!opts.cross_check || it->second.cross_value)) return it->second;
  }
  std::int64_t C = conductor();
  TwistDescriptor tw = make_twist(M, C);
  int w = root_number(prec).w * jacobi(mod(-C, tw.m), tw.m);
  JacobiCharacter chi(tw.m);
  Real X = sqrt(Real(static_cast<long>(C), prec.bits + kGuardBits)) * static_cast<long>(tw.m);
  double reach = opts.split_check ? 1.21 : 1.01;
  auto an = coefficients(series_length(X.to_double() * reach, prec.target() / 4));
  TwistedLValue out;
  out.M = M;
  out.w = w;
  out.value = paired_value(*an, &chi, X, w, prec, opts.split_check);
  if (opts.cross_check) {
    WeierstrassModel twist = quadratic_twist(record_.model, mpz_class(static_cast<long>(M)));
    int w_cross = 0;
    Real cross = standalone_l_value(twist, C * tw.m * tw.m, prec, &w_cross);
    double tol = std::max(1e-20 * abs(out.value).to_double(), 100 * prec.target());
    if (w_cross != w || abs(cross - out.value).to_double() > tol) {
      fail(ErrorCode::kRouteDisagreement,
           "twisted L-value routes disagree for M = " + std::to_string(M) + ": " +
               out.value.to_sci(25) + " vs " + cross.to_sci(25));
    }
    out.cross_value = std::move(cross);
  }
  std::lock_guard<std::mutex> lock(mu_);
  twisted_.insert_or_assign(key, out);
  return out;
}

TwistedLValue twisted_l_value(CurveContext& ctx, std::int64_t M, const Precision& prec,
                              const TwistOptions& opts) {
  return ctx.twisted(M, prec, opts);
}

Complex period_integral(CurveContext& ctx, std::int64_t k, std::int64_t m, const Precision& prec) {
  std::int64_t C = ctx.conductor();
  if (m < 2 || k <= 0 || k >= m || gcd_i64(k, m) != 1) {
    fail(ErrorCode::kInvalidArgument, "period_integral needs 0 < k < m with gcd(k, m) = 1");
  }
  if (gcd_i64(m, C) != 1) fail(ErrorCode::kNoGammaFound, "gcd(m, C) != 1");
  // gamma = [a, k; cC, m] in Gamma_0(C) with a m - k c C = 1.
  std::int64_t kc = mod(static_cast<std::int64_t>(mulmod(mod(k, m), mod(C, m), m)), m);
  std::int64_t c = mod(-static_cast<std::int64_t>(invmod(kc, m)), m);
  if (2 * c > m) c -= m;
  if (c == 0) fail(ErrorCode::kNoGammaFound, "no gamma for k/m");
  __int128 num = 1 + static_cast<__int128>(k) * c * C;
  if (num % m != 0) fail(ErrorCode::kNoGammaFound, "gamma construction failed");
  std::int64_t a = static_cast<std::int64_t>(num / m);
  std::int64_t cC = c * C;
  mpfr_prec_t wp = prec.bits + kGuardBits;
  Real X(static_cast<long>(std::llabs(cC)), wp);
  std::uint64_t N = series_length(X.to_double(), prec.target() / 8);
  auto an = ctx.coefficients(N);
  Real two_pi = Real::pi(wp) * 2;
  // Base point z0 = (-m + i)/(cC), gamma z0 = (a + i)/(cC).
  Real th0 = two_pi * static_cast<long>(-m) / static_cast<long>(cC);
  Real th1 = two_pi * static_cast<long>(a) / static_cast<long>(cC);
  Complex s0(prec.bits), s1(prec.bits);
  power_series(*an, nullptr, X, &th0, N, prec.bits, &s0.re, &s0.im);
  power_series(*an, nullptr, X, &th1, N, prec.bits, &s1.re, &s1.im);
  // s1 - s0 integrates from 0 to k/m. The conjugate (the path to -k/m) is the
  // normalization under which L(E, chi, 1) = g(chi)/m sum chi(k) <{0, k/m}>
  // also holds for odd chi.
  return (s1 - s0).conj();
}

Complex gauss_sum(std::int64_t d, const Precision& prec) {
  if (d < 1 || d % 2 == 0 || !is_squarefree(d)) {
    fail(ErrorCode::kInvalidArgument, "gauss_sum needs odd squarefree d");
  }
  mpfr_prec_t wp = prec.bits + kGuardBits;
  Real two_pi = Real::pi(wp) * 2;
  Complex g(wp);
  for (std::int64_t k = 1; k < d; ++k) {
    int chi = jacobi(k, d);
    if (chi == 0) continue;
    Real ang = two_pi * static_cast<long>(k) / static_cast<long>(d);
    if (chi > 0) {
      g.re += cos(ang);
      g.im += sin(ang);
    } else {
      g.re -= cos(ang);
      g.im -= sin(ang);
    }
  }
  mpfr_prec_round(g.re.get(), prec.bits, MPFR_RNDN);
  mpfr_prec_round(g.im.get(), prec.bits, MPFR_RNDN);
  return g;
}

}  // namespace ltwist
