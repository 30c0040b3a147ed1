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
#include <numeric>

#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "modsym.hpp"
#include "rationalize.hpp"

using namespace ltwist;

namespace {

const Precision kPrec(192, -30);

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kOk;
}

SymbolEngine& engine(const std::string& label) {
  static std::map<std::string, std::unique_ptr<SymbolEngine>> cache;
  auto& slot = cache[label];
  if (!slot) slot = std::make_unique<SymbolEngine>(fixtures::ctx(label), kPrec);
  return *slot;
}

}  // namespace

TEST_CASE("continued-fraction reconstruction") {
  Real x = Real(mpq_class(1, 5), 192) + Real(std::string("1e-35"), 192);
  CHECK(reconstruct_rational(x, 10000, Real(std::string("1e-20"), 192)) == mpq_class(1, 5));
  Real y = Real(mpq_class(-37, 96), 192);
  CHECK(reconstruct_rational(y, 10000, Real(std::string("1e-20"), 192)) == mpq_class(-37, 96));
  CHECK(reconstruct_rational(Real(192), 10000, Real(std::string("1e-20"), 192)) == 0);
  Real r2 = sqrt(Real(2L, 192));
  CHECK(code_of([&] { reconstruct_rational(r2, 10000, Real(std::string("1e-20"), 192)); }) ==
        ErrorCode::kNoRationalInWindow);
  CHECK(code_of([&] { reconstruct_rational(r2, 10000, Real(std::string("1e-5"), 192)); }) ==
        ErrorCode::kInvalidArgument);
}

TEST_CASE("2-adic valuation of rationals") {
  CHECK(ord2(mpq_class(3, 8)) == -3);
  CHECK(ord2(mpq_class(12, 5)) == 2);
  CHECK(ord2(mpq_class(-1, 1)) == 0);
  CHECK_FALSE(ord2(mpq_class(0)).has_value());
  CHECK(ord2_to_string(std::nullopt) == "inf");
}

TEST_CASE("torsion bounds") {
  CHECK(torsion_bound(fixtures::model(0, -1, 1, -10, -20), 11) == 5);
  CHECK(torsion_bound(fixtures::model(1, 0, 1, 4, -6), 14) == 6);
  CHECK(torsion_bound(fixtures::model(0, 1, 1, -23, -50), 37) == 3);
}

TEST_CASE("algebraic central values") {
  auto b11 = base_algebraic_l_value(fixtures::ctx("11a1"), kPrec);
  CHECK(b11.rational == mpq_class(1, 5));
  auto b14 = base_algebraic_l_value(fixtures::ctx("14a1"), kPrec);
  CHECK(b14.rational == mpq_class(1, 6));
  CHECK(b14.ord2 == -1);

  auto& eng = engine("11a1");
  const std::vector<std::pair<std::int64_t, int>> refs = {{5, 5}, {-3, 1}, {-15, 1}};
  for (auto [M, q] : refs) {
    CAPTURE(M);
    auto v = algebraic_l_value(eng, M);
    CHECK(v.rational == q);
    CHECK_FALSE(v.is_zero);
    CHECK(v.routes_agree);
    REQUIRE(v.symbol_ord2.has_value());
    CHECK(*v.symbol_ord2 == *v.ord2);
    CHECK(v.period_ratio_residual < 1e-20);
  }
  auto z = algebraic_l_value(eng, -7);
  CHECK(z.is_zero);
  CHECK(z.w == -1);
  CHECK_FALSE(z.ord2.has_value());
}

TEST_CASE("lattice coordinates") {
  const auto& pd = engine("11a1").periods();
  Complex z(pd.c_f, Real(192));
  auto lc = lattice_coordinates(pd, z);
  CHECK(lc.s == 2);
  CHECK(lc.t == 0);
  Complex w(pd.c_f / 3L, Real(192));
  CHECK(code_of([&] { lattice_coordinates(pd, w); }) == ErrorCode::kNotLatticePoint);
}

TEST_CASE("principal and quadratic symbol sums, both routes") {
  auto& eng = engine("11a1");
  for (std::int64_t m : {3, 5, 7, 15, 21}) {
    CAPTURE(m);
    auto s = bracket_principal(eng, m, true);
    CHECK(s.residual < 1e-20);
    for (std::int64_t d : divisors_of_squarefree(odd_prime_factors(m))) {
      if (d == 1) continue;
      auto q = bracket_quadratic(eng, m, d, true);
      CHECK(q.residual < 1e-20);
    }
  }
}

TEST_CASE("integrality of the character sums") {
  for (const char* label : {"11a1", "14a1"}) {
    auto& eng = engine(label);
    for (std::int64_t m : {3, 5, 15, 33, 39, 105}) {
      if (std::gcd(m, eng.context().conductor()) != 1) continue;
      CAPTURE(label);
      CAPTURE(m);
      auto rep = integrality_report(eng, m);
      CHECK(rep.divisible);
      CHECK(rep.routes_agree);
      CHECK(rep.even_residual < 1e-6);
      CHECK(rep.odd_residual < 1e-6);
      if (rep.parity_checked) CHECK(rep.parity_equal);
    }
  }
}

TEST_CASE("modulus helpers") {
  CHECK(odd_prime_factors(105) == std::vector<std::int64_t>{3, 5, 7});
  CHECK(divisors_of_squarefree({3, 5}) == std::vector<std::int64_t>{1, 3, 5, 15});
  CHECK(code_of([] { check_symbol_modulus(9, 11); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([] { check_symbol_modulus(33, 11); }) == ErrorCode::kTwistNotCoprime);
  CHECK(code_of([] { check_symbol_modulus(15, 11); }) == ErrorCode::kOk);
}
