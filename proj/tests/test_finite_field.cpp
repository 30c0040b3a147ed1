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


#include <cmath>

#include "arith.hpp"
#include "doctest.h"
#include "finite_field.hpp"
#include "fixtures.hpp"

using namespace ltwist;

TEST_CASE("a_p of 11a1 against the q-expansion") {
  auto E = fixtures::model(0, -1, 1, -10, -20);
  const std::map<std::uint64_t, std::int64_t> ref = {{2, -2}, {3, -1}, {5, 1},  {7, -2},  {11, 1}, {13, 4},
                                                    {17, -2}, {19, 0}, {23, -1}, {29, 0}, {31, 7}};
  for (auto [p, a] : ref) CHECK(a_p(E, p) == a);
  auto an = a_n_table(E, 12);
  CHECK(an[1] == 1);
  CHECK(an[4] == 2);
  CHECK(an[6] == 2);
  CHECK(an[9] == -2);
  CHECK(an[10] == -2);
  CHECK(an[12] == -2);
}

TEST_CASE("point counts agree across methods, Hasse bound") {
  for (auto E : {fixtures::model(0, -1, 1, -10, -20), fixtures::model(1, 0, 1, 4, -6),
                 fixtures::model(0, 1, 1, -23, -50), fixtures::model(1, -1, 0, -15, 8)}) {
    for (std::uint64_t p : primes_up_to(400)) {
      if (mpz_divisible_ui_p(E.disc.get_mpz_t(), p)) continue;
      std::uint64_t n = count_points(E, p);
      if (p < 150) CHECK(n == count_points_naive(E, p));
      if (p >= 5) CHECK(n == count_points_bsgs(E, p));
      double a = static_cast<double>(p + 1) - static_cast<double>(n);
      CHECK(a * a <= 4.0 * static_cast<double>(p));
    }
  }
}

TEST_CASE("bad-prime coefficients") {
  CHECK(a_p(fixtures::model(0, -1, 1, -10, -20), 11) == 1);   // split
  CHECK(a_p(fixtures::model(1, 0, 1, 4, -6), 2) == -1);        // 14a1: non-split at 2
  CHECK(a_p(fixtures::model(1, 0, 1, 4, -6), 7) == 1);
  CHECK(a_p(fixtures::model(0, 0, 1, 0, -7), 3) == 0);         // 27a1: additive
}

TEST_CASE("ApTable extend and seed") {
  auto E = fixtures::model(0, -1, 1, -10, -20);
  ApTable t("11a1");
  t.extend(E, 100);
  CHECK(t.bound() >= 100);
  CHECK(t.at(13) == 4);
  CHECK_FALSE(t.find(4).has_value());
  ApTable u("11a1");
  u.insert(13, 4);
  u.extend(E, 100, 2);
  CHECK(u.entries() == t.entries());
}

TEST_CASE("local two-structure") {
  auto E14 = fixtures::model(1, 0, 1, 4, -6);
  auto L = local_two_structure(E14, 3);
  CHECK(L.N == 6);
  CHECK(L.two_part == 1);
  CHECK(L.two_torsion_count == 2);
  for (std::uint64_t q : primes_up_to(300)) {
    if (q < 3 || q == 7) continue;
    auto d = local_two_structure(E14, q);
    CHECK(static_cast<std::int64_t>(d.N) == static_cast<std::int64_t>(q) + 1 - d.a);
    CHECK(two_division_root_count(E14, q) + 1 == d.two_torsion_count);
  }
}

TEST_CASE("2-torsion criterion on a few primes") {
  auto E11 = fixtures::model(0, -1, 1, -10, -20);
  auto E14 = fixtures::model(1, 0, 1, 4, -6);
  auto iso = two_isogenous_curve(E14);
  for (std::uint64_t q : primes_up_to(200)) {
    if (q < 3) continue;
    if (q != 11) CHECK(lemma21_check(E11, q).agree);
    if (q != 7) {
      auto r = lemma21_check(E14, 2, &iso, q);
      CHECK(r.branch == "ii");
      CHECK(r.agree);
    }
  }
}
