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


#include <functional>

#include "arith.hpp"
#include "curve.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"

using namespace ltwist;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

}  // namespace

TEST_CASE("jacobi and kronecker symbols") {
  CHECK(jacobi(2, 15) == 1);
  CHECK(jacobi(7, 15) == -1);
  CHECK(jacobi(-1, 7) == -1);
  CHECK(jacobi(-1, 5) == 1);
  CHECK(jacobi(6, 9) == 0);
  CHECK(kronecker(5, 2) == -1);
  CHECK(kronecker(-3, 8) == -1);
  CHECK(kronecker(-7, 8) == 1);
  // multiplicativity in the top argument
  for (int a = -20; a <= 20; ++a)
    for (int b = -20; b <= 20; ++b) CHECK(jacobi(a * b, 21) == jacobi(a, 21) * jacobi(b, 21));
}

TEST_CASE("factorization, squarefree, ord2") {
  auto f = factor_u64(360);
  REQUIRE(f.size() == 3);
  CHECK(f[0].first == 2);
  CHECK(f[0].second == 3);
  CHECK(f[2].first == 5);
  CHECK(is_squarefree(-105));
  CHECK_FALSE(is_squarefree(-63));
  CHECK(ord2(mpz_class(-48)) == 4);
  CHECK(squarefree_part(mpz_class(-12)) == -3);
  CHECK(is_prime_u64(1000003));
  CHECK_FALSE(is_prime_u64(1000001));
  auto p = primes_up_to(30);
  CHECK(p.size() == 10);
  for (std::uint64_t q : {7ull, 13ull, 101ull, 1009ull}) {
    for (std::uint64_t a = 1; a < q; ++a) {
      if (jacobi(static_cast<std::int64_t>(a), static_cast<std::int64_t>(q)) != 1) continue;
      std::uint64_t s = sqrtmod(a, q);
      CHECK(mulmod(s, s, q) == a);
    }
  }
}

TEST_CASE("invariants of 11a1") {
  auto E = fixtures::model(0, -1, 1, -10, -20);
  CHECK(E.disc == -161051);
  CHECK(E.c4 == 496);
  CHECK(E.c6 == 20008);
  CHECK(E.j == mpq_class(-122023936, 161051));
  CHECK(code_of([] { fixtures::model(0, 0, 0, 0, 0); }) == ErrorCode::kSingularModel);
}

TEST_CASE("minimal model removes a scaling") {
  // 11a1 scaled by u = 2: a_i -> 2^i a_i.
  auto scaled = fixtures::model(0, -4, 8, -160, -1280);
  CHECK(minimal_model(scaled) == fixtures::model(0, -1, 1, -10, -20));
  // y^2 = x^3 - 6^4 x is y^2 = x^3 - x after scaling
  auto m = minimal_model(fixtures::model(0, 0, 0, -1296, 0));
  CHECK(m.disc == 64);
}

TEST_CASE("quadratic twists match reference minimal models") {
  auto E = fixtures::model(0, -1, 1, -10, -20);
  CHECK(quadratic_twist(E, 5) == fixtures::model(0, 1, 1, -258, -2981));
  CHECK(quadratic_twist(E, -3) == fixtures::model(0, 0, 1, -93, 625));
  CHECK(quadratic_twist(E, -15) == fixtures::model(0, 0, 1, -2325, 78156));
  auto F = fixtures::model(1, 0, 1, 4, -6);
  CHECK(quadratic_twist(F, -3) == fixtures::model(1, -1, 1, 40, 155));
  CHECK(quadratic_twist(F, 5) == fixtures::model(1, 1, 1, 112, -719));
  CHECK(code_of([&] { quadratic_twist(E, 12); }) == ErrorCode::kNotSquarefree);
}

TEST_CASE("rational two-torsion and the isogenous curve") {
  CHECK(rational_two_torsion_order(fixtures::model(0, -1, 1, -10, -20)) == 1);
  auto E14 = fixtures::model(1, 0, 1, 4, -6);
  CHECK(rational_two_torsion_order(E14) == 2);
  CHECK(rational_two_torsion_order(fixtures::model(0, 0, 0, -1, 0)) == 4);
  auto Ep = two_isogenous_curve(E14);
  CHECK(rational_two_torsion_order(Ep) >= 2);
  // same bad primes
  for (const auto& p : prime_divisors(Ep.disc)) CHECK((p == 2 || p == 7));
  CHECK_FALSE(Ep.j == E14.j);
}

TEST_CASE("field classes") {
  CHECK(field_class(mpz_class(-4)).kind == FieldKind::kGaussian);
  CHECK(field_class(mpz_class(36)).kind == FieldKind::kRationals);
  auto f = field_class(mpz_class(12));
  CHECK(f.kind == FieldKind::kOther);
  CHECK(f.d0 == 3);
}

TEST_CASE("twist descriptors") {
  auto t = make_twist(-15, 11);
  CHECK(t.eps == -1);
  CHECK(t.m == 15);
  CHECK(t.r() == 2);
  CHECK(t.factorization() == "-1*3*5");
  auto u = twist_from_primes({3, 7}, 11);
  CHECK(u.M == 21);
  auto v = twist_from_primes({3}, 11);
  CHECK(v.M == -3);
  CHECK(code_of([] { make_twist(-63, 11); }) == ErrorCode::kNotSquarefree);
  CHECK(code_of([] { make_twist(5, 10); }) == ErrorCode::kTwistNotCoprime);
  CHECK(code_of([] { make_twist(3, 11); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { make_twist(1, 11); }) != ErrorCode::kOk);
}
