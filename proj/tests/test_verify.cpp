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


#include <algorithm>
#include <atomic>
#include <functional>
#include <numeric>

#include "arith.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "prime_sets.hpp"
#include "verify.hpp"

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

}  // namespace

TEST_CASE("membership in S") {
  auto& c = fixtures::ctx("14a1");
  CHECK(in_S(c, 7).reason == SReason::kBadPrime);
  auto s = sieve_S(c, 200);
  CHECK(s.primes.size() == 13);
  for (std::uint64_t q : s.primes) CHECK(in_S(c, q).in_S);
  for (std::uint64_t q = 3; q < 200; q += 2) {
    bool member = std::find(s.primes.begin(), s.primes.end(), q) != s.primes.end();
    if (is_prime_u64(q) && !member) CHECK_FALSE(in_S(c, q).in_S);
  }
  CHECK(s.report.rational_two_torsion == 2);
}

TEST_CASE("t_E(M) and the local factor at twist primes") {
  auto& c = fixtures::ctx("11a1");
  // |E(F_3)| = 5, |E(F_5)| = 5, |E(F_7)| = 10
  CHECK(t_of(c, make_twist(-3, 11)) == 0);
  CHECK(t_of(c, make_twist(-7, 11)) == 1);
  CHECK(t_of(c, make_twist(-35, 11)) == 1);
  CHECK(tamagawa_ord2_at_twist_prime(c, -7, 7) == 1);
  CHECK(code_of([&] { tamagawa_ord2_at_twist_prime(c, -7, 3); }) == ErrorCode::kNotTwistPrime);
  CHECK(code_of([&] { t_of(c, TwistDescriptor{-11, -1, {11}, 11, 1, 11}); }) == ErrorCode::kTwistNotCoprime);
}

TEST_CASE("admissible twist enumeration") {
  CHECK(admissible_twists(15, 11) == std::vector<std::int64_t>{-3, 5, -7, 13, -15});
  auto tw = admissible_twists(60, 14);
  for (auto M : tw) {
    CHECK(((M % 4) + 4) % 4 == 1);
    CHECK(std::gcd(M, std::int64_t{14}) == 1);
  }
}

TEST_CASE("deterministic samples from S") {
  CHECK(sample_twists_from_S({3, 5, 7, 11}, 2, 3) == std::vector<std::int64_t>{-15, 21, 33});
  CHECK(sample_twists_from_S({3, 5}, 3, 10).empty());
  CHECK(sample_twists_from_S({3, 5, 7}, 1, 10) == std::vector<std::int64_t>{-3, 5, -7});
}

TEST_CASE("parallel_for visits each index once") {
  std::vector<std::atomic<int>> hits(97);
  parallel_for(hits.size(), 4, [&](std::size_t i) { hits[i]++; });
  for (auto& h : hits) CHECK(h.load() == 1);
}

TEST_CASE("the two vanishing examples") {
  auto recs = reproduce_counterexamples([](const std::string& l) { return &fixtures::ctx(l); }, kPrec);
  REQUIRE(recs.size() == 2);
  for (const auto& r : recs) {
    CAPTURE(r.label);
    CHECK(r.zero);
    CHECK(r.other_conditions);
    CHECK(r.congruence_excluded);
    CHECK(r.verdict == Verdict::kPass);
  }
  CHECK(recs[0].M == -3);
  CHECK(recs[1].M == -7);
}

TEST_CASE("2-torsion criterion sweep") {
  auto sw = verify_lemma21(fixtures::ctx("14a1"), 200);
  CHECK(sw.results.size() == 200);
  CHECK(sw.agreements == 200);
  auto sw11 = verify_lemma21(fixtures::ctx("11a1"), 200);
  CHECK(sw11.agreements == 200);
}

TEST_CASE("hypothesis ledger for 14a1") {
  auto h = check_hypotheses(fixtures::ctx("14a1"), kPrec);
  CHECK(h.disc_negative);
  CHECK(h.two_torsion_z2);
  CHECK(h.l_ratio == "1/6");
  CHECK(h.exact_valuation_eligible);
  auto h11 = check_hypotheses(fixtures::ctx("11a1"), kPrec);
  CHECK_FALSE(h11.exact_valuation_eligible);
}

TEST_CASE("lower bound on a few twists of 14a1") {
  SymbolEngine eng(fixtures::ctx("14a1"), kPrec);
  auto reps = verify_lower_bound(eng, 40, {});
  CHECK_FALSE(reps.empty());
  for (const auto& r : reps) {
    CAPTURE(r.twist.M);
    CHECK(r.verdict != Verdict::kFail);
    CHECK(r.error.empty());
  }
}

TEST_CASE("identity suite on small moduli") {
  SymbolEngine eng(fixtures::ctx("11a1"), kPrec);
  for (const auto& rec : verify_identities(eng, {3, 5, 7, 15})) {
    CAPTURE(rec.identity);
    CAPTURE(rec.m);
    CHECK(rec.verdict == Verdict::kPass);
  }
}
