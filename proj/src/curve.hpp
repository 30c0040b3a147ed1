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

// Weierstrass models over Z, minimal models, quadratic twists, rational
// 2-torsion and the 2-isogenous curve.

#ifndef LTWIST_CURVE_HPP_
#define LTWIST_CURVE_HPP_

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace ltwist {

struct WeierstrassModel {
  mpz_class a1, a2, a3, a4, a6;
  mpz_class b2, b4, b6, b8, c4, c6, disc;
  mpq_class j;

  std::array<mpz_class, 5> coefficients() const { return {a1, a2, a3, a4, a6}; }
  std::string to_string() const;  // "[a1,a2,a3,a4,a6]"
  bool operator==(const WeierstrassModel& o) const {
    return a1 == o.a1 && a2 == o.a2 && a3 == o.a3 && a4 == o.a4 && a6 == o.a6;
  }
};

// Throws SingularModel when the discriminant vanishes.
WeierstrassModel compute_invariants(const std::array<mpz_class, 5>& a);
WeierstrassModel minimal_model(const WeierstrassModel& model);
// Minimal model with the given c4, c6 (up to Q-isomorphism).
WeierstrassModel minimal_model_from_c4c6(const mpz_class& c4, const mpz_class& c6);
// Minimal model of E^(M); throws NotSquarefree.
WeierstrassModel quadratic_twist(const WeierstrassModel& model, const mpz_class& M);

// Integer roots X of X^3 + b2 X^2 + 8 b4 X + 16 b6 (X = 4x), ascending.
std::vector<mpz_class> two_division_roots(const WeierstrassModel& model);
int rational_two_torsion_order(const WeierstrassModel& model);
WeierstrassModel two_isogenous_curve(const WeierstrassModel& model);

enum class FieldKind { kRationals, kGaussian, kOther };
struct FieldClass {
  FieldKind kind;
  mpz_class d0;  // squarefree part
  std::string to_string() const;
  bool operator==(const FieldClass& o) const { return kind == o.kind && d0 == o.d0; }
};
FieldClass field_class(const mpz_class& D);

int real_components(const WeierstrassModel& model);

struct CurveRecord {
  std::string label;
  WeierstrassModel model;
  std::int64_t conductor = 0;  // 0 when unknown
  bool optimal = false;
  bool manin_constant_assumed_odd = true;
  std::string source;
};

struct TwistDescriptor {
  std::int64_t M = 0;
  int eps = 1;
  std::vector<std::int64_t> primes;  // ascending
  std::int64_t m = 0;
  std::int64_t m_plus = 1, m_minus = 1;
  int r() const { return static_cast<int>(primes.size()); }
  int r_plus() const;
  int r_minus() const;
  std::string factorization() const;  // e.g. "-1*3*7"
};

// Validates admissibility: squarefree, M = 1 mod 4, M != 1, gcd(M, C) = 1.
TwistDescriptor make_twist(std::int64_t M, std::int64_t conductor);
// Sign-corrected product of distinct odd primes.
TwistDescriptor twist_from_primes(const std::vector<std::int64_t>& primes, std::int64_t conductor);

}  // namespace ltwist

#endif  // LTWIST_CURVE_HPP_
