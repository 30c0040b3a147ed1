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

// Thin value type over mpfr_t. Results of binary operators carry the larger
// of the two operand precisions; scalar operands do not widen.

#ifndef LTWIST_REAL_HPP_
#define LTWIST_REAL_HPP_

#include <gmpxx.h>
#include <mpfr.h>

#include <algorithm>
#include <array>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace ltwist {

class Real {
 public:
  explicit Real(mpfr_prec_t prec = 192) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  Real(long x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_si(v_, x, MPFR_RNDN);
  }
  Real(double x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_d(v_, x, MPFR_RNDN);
  }
  Real(const mpz_class& x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_z(v_, x.get_mpz_t(), MPFR_RNDN);
  }
  Real(const mpq_class& x, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_q(v_, x.get_mpq_t(), MPFR_RNDN);
  }
  Real(const std::string& decimal, mpfr_prec_t prec) {
    mpfr_init2(v_, prec);
    mpfr_set_str(v_, decimal.c_str(), 10, MPFR_RNDN);
  }
  Real(const Real& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  Real(Real&& o) noexcept {
    mpfr_init2(v_, MPFR_PREC_MIN);
    mpfr_swap(v_, o.v_);
  }
  Real& operator=(const Real& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  Real& operator=(Real&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~Real() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }
  mpfr_prec_t prec() const { return mpfr_get_prec(v_); }

  Real& operator+=(const Real& o) { mpfr_add(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator-=(const Real& o) { mpfr_sub(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator*=(const Real& o) { mpfr_mul(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator/=(const Real& o) { mpfr_div(v_, v_, o.v_, MPFR_RNDN); return *this; }
  Real& operator+=(long x) { mpfr_add_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator-=(long x) { mpfr_sub_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator*=(long x) { mpfr_mul_si(v_, v_, x, MPFR_RNDN); return *this; }
  Real& operator/=(long x) { mpfr_div_si(v_, v_, x, MPFR_RNDN); return *this; }

  Real operator-() const {
    Real r(prec());
    mpfr_neg(r.v_, v_, MPFR_RNDN);
    return r;
  }

  int sign() const { return mpfr_sgn(v_); }
  bool is_zero() const { return mpfr_zero_p(v_) != 0; }
  double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
  // Nearest integer.
  mpz_class round() const;
  // Fixed-point decimal with `digits` digits after the point.
  std::string to_fixed(int digits) const;
  // Scientific notation with `digits` significant digits.
  std::string to_sci(int digits) const;

  static Real pi(mpfr_prec_t prec) {
    Real r(prec);
    mpfr_const_pi(r.v_, MPFR_RNDN);
    return r;
  }

 private:
  mpfr_t v_;
};

inline mpfr_prec_t wider(const Real& a, const Real& b) { return std::max(a.prec(), b.prec()); }

inline Real operator+(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_add(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Real operator-(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_sub(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Real operator*(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_mul(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Real operator/(const Real& a, const Real& b) {
  Real r(wider(a, b));
  mpfr_div(r.get(), a.get(), b.get(), MPFR_RNDN);
  return r;
}
inline Real operator+(Real a, long b) { return a += b; }
inline Real operator-(Real a, long b) { return a -= b; }
inline Real operator*(Real a, long b) { return a *= b; }
inline Real operator/(Real a, long b) { return a /= b; }
inline Real operator*(long b, Real a) { return a *= b; }
// Doubles would silently convert to long above.
template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
Real operator+(const Real&, T) = delete;
template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
Real operator-(const Real&, T) = delete;
template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
Real operator*(const Real&, T) = delete;
template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
Real operator/(const Real&, T) = delete;
template <class T, std::enable_if_t<std::is_floating_point_v<T>, int> = 0>
Real operator*(T, const Real&) = delete;

inline bool operator<(const Real& a, const Real& b) { return mpfr_less_p(a.get(), b.get()) != 0; }
inline bool operator>(const Real& a, const Real& b) { return mpfr_greater_p(a.get(), b.get()) != 0; }
inline bool operator<=(const Real& a, const Real& b) { return mpfr_lessequal_p(a.get(), b.get()) != 0; }
inline bool operator>=(const Real& a, const Real& b) { return mpfr_greaterequal_p(a.get(), b.get()) != 0; }

inline Real abs(const Real& a) {
  Real r(a.prec());
  mpfr_abs(r.get(), a.get(), MPFR_RNDN);
  return r;
}
inline Real sqrt(const Real& a) {
  Real r(a.prec());
  mpfr_sqrt(r.get(), a.get(), MPFR_RNDN);
  return r;
}
inline Real exp(const Real& a) {
  Real r(a.prec());
  mpfr_exp(r.get(), a.get(), MPFR_RNDN);
  return r;
}
inline Real log(const Real& a) {
  Real r(a.prec());
  mpfr_log(r.get(), a.get(), MPFR_RNDN);
  return r;
}
inline Real cos(const Real& a) {
  Real r(a.prec());
  mpfr_cos(r.get(), a.get(), MPFR_RNDN);
  return r;
}
inline Real sin(const Real& a) {
  Real r(a.prec());
  mpfr_sin(r.get(), a.get(), MPFR_RNDN);
  return r;
}
inline Real log2(const Real& a) {
  Real r(a.prec());
  mpfr_log2(r.get(), a.get(), MPFR_RNDN);
  return r;
}
// 10^e at the given precision; e may be negative.
Real pow10(long e, mpfr_prec_t prec);

// Real roots, ascending, of c[3] x^3 + c[2] x^2 + c[1] x + c[0] with c[3] != 0
// and nonzero discriminant, by bisection on monotone brackets.
std::vector<Real> cubic_real_roots(const std::array<mpz_class, 4>& c, mpfr_prec_t prec);

struct Complex {
  Real re, im;

  explicit Complex(mpfr_prec_t prec = 192) : re(prec), im(prec) {}
  Complex(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  mpfr_prec_t prec() const { return std::max(re.prec(), im.prec()); }
  Complex conj() const { return Complex(re, -im); }
  Real norm() const { return re * re + im * im; }
  Real abs() const { return sqrt(norm()); }

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Real& x) { re *= x; im *= x; return *this; }
  Complex& operator*=(long x) { re *= x; im *= x; return *this; }
  Complex& operator/=(long x) { re /= x; im /= x; return *this; }
};

inline Complex operator+(Complex a, const Complex& b) { return a += b; }
inline Complex operator-(Complex a, const Complex& b) { return a -= b; }
inline Complex operator*(Complex a, long x) { return a *= x; }
inline Complex operator*(Complex a, const Real& x) { return a *= x; }
inline Complex operator*(const Complex& a, const Complex& b) {
  return Complex(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re);
}
// e^{i theta}
inline Complex expi(const Real& theta) { return Complex(cos(theta), sin(theta)); }

}  // namespace ltwist

#endif  // LTWIST_REAL_HPP_
