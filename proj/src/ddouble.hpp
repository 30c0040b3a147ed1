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

// Double-double arithmetic (about 104 bits) for the small tails of
// exponential series, where full MPFR precision is wasted.

#ifndef LTWIST_DDOUBLE_HPP_
#define LTWIST_DDOUBLE_HPP_

#include <mpfr.h>

#include <cmath>

namespace ltwist {

struct DD {
  double hi = 0, lo = 0;
};

inline DD two_sum(double a, double b) {
  double s = a + b;
  double bb = s - a;
  return {s, (a - (s - bb)) + (b - bb)};
}

inline DD quick_two_sum(double a, double b) {
  double s = a + b;
  return {s, b - (s - a)};
}

inline DD operator+(DD a, DD b) {
  DD s = two_sum(a.hi, b.hi);
  DD t = two_sum(a.lo, b.lo);
  s.lo += t.hi;
  s = quick_two_sum(s.hi, s.lo);
  s.lo += t.lo;
  return quick_two_sum(s.hi, s.lo);
}

inline DD operator-(DD a) { return {-a.hi, -a.lo}; }
inline DD operator-(DD a, DD b) { return a + (-b); }

inline DD operator*(DD a, DD b) {
  double p = a.hi * b.hi;
  double e = std::fma(a.hi, b.hi, -p);
  e += a.hi * b.lo + a.lo * b.hi;
  return quick_two_sum(p, e);
}

inline DD operator*(DD a, double b) {
  double p = a.hi * b;
  double e = std::fma(a.hi, b, -p);
  e += a.lo * b;
  return quick_two_sum(p, e);
}

inline DD operator/(DD a, double b) {
  double q1 = a.hi / b;
  DD r = a - DD{q1, 0} * b;
  double q2 = r.hi / b;
  r = r - DD{q2, 0} * b;
  double q3 = r.hi / b;
  DD q = quick_two_sum(q1, q2);
  return q + DD{q3, 0};
}

inline DD dd_from_mpfr(mpfr_srcptr x) {
  mpfr_t t;
  mpfr_init2(t, mpfr_get_prec(x));
  double hi = mpfr_get_d(x, MPFR_RNDN);
  mpfr_sub_d(t, x, hi, MPFR_RNDN);
  double lo = mpfr_get_d(t, MPFR_RNDN);
  mpfr_clear(t);
  return {hi, lo};
}

// x += a.
inline void mpfr_add_dd(mpfr_ptr x, DD a) {
  mpfr_add_d(x, x, a.hi, MPFR_RNDN);
  mpfr_add_d(x, x, a.lo, MPFR_RNDN);
}

struct CDD {
  DD re, im;
};

inline CDD operator*(const CDD& a, const CDD& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

}  // namespace ltwist

#endif  // LTWIST_DDOUBLE_HPP_
