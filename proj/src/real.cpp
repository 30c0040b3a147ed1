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

#include "real.hpp"

#include <vector>

namespace ltwist {

mpz_class Real::round() const {
  mpz_class z;
  mpfr_t t;
  mpfr_init2(t, prec());
  mpfr_round(t, v_);
  mpfr_get_z(z.get_mpz_t(), t, MPFR_RNDN);
  mpfr_clear(t);
  return z;
}

std::string Real::to_fixed(int digits) const {
  int n = mpfr_snprintf(nullptr, 0, "%.*Rf", digits, v_);
  std::vector<char> buf(n + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Rf", digits, v_);
  std::string s(buf.data());
  if (s.rfind("-0.", 0) == 0 && s.find_first_not_of("-0.") == std::string::npos) {
    s.erase(0, 1);
  }
  return s;
}

std::string Real::to_sci(int digits) const {
  int n = mpfr_snprintf(nullptr, 0, "%.*Re", digits - 1, v_);
  std::vector<char> buf(n + 1);
  mpfr_snprintf(buf.data(), buf.size(), "%.*Re", digits - 1, v_);
  return std::string(buf.data());
}

Real pow10(long e, mpfr_prec_t prec) {
  Real r(prec);
  mpfr_ui_pow_ui(r.get(), 10, static_cast<unsigned long>(e < 0 ? -e : e), MPFR_RNDN);
  if (e < 0) mpfr_ui_div(r.get(), 1, r.get(), MPFR_RNDN);
  return r;
}

namespace {

// Horner evaluation at x.
Real eval_cubic(const std::array<Real, 4>& c, const Real& x) {
  Real v = c[3];
  for (int i = 2; i >= 0; --i) {
    v *= x;
    v += c[i];
  }
  return v;
}

// Root in [lo, hi] given a sign change; `iters` halvings.
Real bisect(const std::array<Real, 4>& c, Real lo, Real hi, int iters) {
  int slo = eval_cubic(c, lo).sign();
  Real mid(lo.prec());
  for (int i = 0; i < iters; ++i) {
    mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
    int s = eval_cubic(c, mid).sign();
    if (s == 0) return mid;
    if (s == slo) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  mpfr_add(mid.get(), lo.get(), hi.get(), MPFR_RNDN);
  mpfr_div_2ui(mid.get(), mid.get(), 1, MPFR_RNDN);
  return mid;
}

}  // namespace

std::vector<Real> cubic_real_roots(const std::array<mpz_class, 4>& c, mpfr_prec_t prec) {
  const mpz_class& a = c[3];
  const mpz_class& b = c[2];
  const mpz_class& cc = c[1];
  const mpz_class& d = c[0];
  mpz_class disc = 18 * a * b * cc * d - 4 * b * b * b * d + b * b * cc * cc - 4 * a * cc * cc * cc -
                   27 * a * a * d * d;
  mpz_class bound = 0;
  for (int i = 0; i < 3; ++i) {
    mpz_class q = abs(c[i]) / abs(a) + 1;
    if (q > bound) bound = q;
  }
  bound += 1;
  // Bits of the bracket plus target precision.
  mpfr_prec_t work = prec + static_cast<mpfr_prec_t>(mpz_sizeinbase(bound.get_mpz_t(), 2)) + 32;
  std::array<Real, 4> cr = {Real(c[0], work), Real(c[1], work), Real(c[2], work), Real(c[3], work)};
  int iters = static_cast<int>(work) + 8;
  Real B(bound, work);
  std::vector<Real> roots;
  if (disc < 0) {
    Real lo = -B, hi = B;
    if (eval_cubic(cr, lo).sign() > 0) std::swap(lo, hi);
    roots.push_back(bisect(cr, lo, hi, iters));
  } else {
    // Critical points of the derivative 3a x^2 + 2b x + c.
    Real sd = sqrt(Real(mpz_class(b * b - 3 * a * cc), work));
    Real t1 = (Real(mpz_class(-b), work) - sd) / Real(mpz_class(3 * a), work);
    Real t2 = (Real(mpz_class(-b), work) + sd) / Real(mpz_class(3 * a), work);
    if (t2 < t1) std::swap(t1, t2);
    Real edges[4] = {-B, t1, t2, B};
    for (int k = 0; k < 3; ++k) {
      Real lo = edges[k], hi = edges[k + 1];
      if (eval_cubic(cr, lo).sign() > 0) std::swap(lo, hi);
      roots.push_back(bisect(cr, lo, hi, iters));
    }
  }
  for (auto& r : roots) mpfr_prec_round(r.get(), prec, MPFR_RNDN);
  return roots;
}

}  // namespace ltwist
