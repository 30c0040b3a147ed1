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

#include "prime_sets.hpp"

#include <cstdlib>

#include "arith.hpp"
#include "errors.hpp"
#include "finite_field.hpp"

namespace ltwist {

const char* s_reason_name(SReason r) {
  switch (r) {
    case SReason::kOk:
      return "OK";
    case SReason::kBadPrime:
      return "BAD_PRIME";
    case SReason::kCongruenceFail:
      return "CONGRUENCE_FAIL";
    case SReason::kTwoPartMismatch:
      return "TWO_PART_MISMATCH";
  }
  return "?";
}

namespace {

bool divides_conductor(CurveContext& ctx, std::uint64_t q) {
  for (auto p : ctx.bad_primes()) {
    if (p == q) return true;
  }
  return false;
}

int torsion_ord2(int order) { return order == 4 ? 2 : order == 2 ? 1 : 0; }

std::uint64_t group_order(CurveContext& ctx, std::uint64_t q) {
  return q + 1 - static_cast<std::uint64_t>(ctx.ap(q));
}

}  // namespace

SMembership in_S(CurveContext& ctx, std::uint64_t q) {
  SMembership out;
  out.q = q;
  if (q == 2 || divides_conductor(ctx, q)) {
    out.reason = SReason::kBadPrime;
    return out;
  }
  if (ctx.model().disc > 0 && q % 4 != 1) {
    out.reason = SReason::kCongruenceFail;
    return out;
  }
  if (ord2_u64(group_order(ctx, q)) != torsion_ord2(ctx.two_torsion())) {
    out.reason = SReason::kTwoPartMismatch;
    return out;
  }
  out.in_S = true;
  return out;
}

SieveResult sieve_S(CurveContext& ctx, std::uint64_t X, const SieveFilters& filters) {
  if (X < 10) fail(ErrorCode::kInvalidArgument, "sieve bound must be at least 10");
  ctx.coefficients(X);
  SieveResult res;
  DensityReport& rep = res.report;
  rep.bound = X;
  rep.rational_two_torsion = ctx.two_torsion();
  rep.F = field_class(ctx.model().disc);
  const WeierstrassModel* isog = ctx.isogenous();
  if (isog) rep.F_prime = field_class(isog->disc);

  for (std::uint32_t q : primes_up_to(X)) {
    ++rep.prime_count;
    if (q == 2 || divides_conductor(ctx, q)) continue;
    ++rep.good_odd_count;
    std::uint64_t N = group_order(ctx, q);
    int v = ord2_u64(N);
    if (rep.rational_two_torsion == 2 && v == 1) {
      ++rep.four_cyclic_count;
      if (q % 4 == 1) ++rep.four_cyclic_one_mod_four_count;
    }
    if (rep.rational_two_torsion == 1 && v == 0 && q % 4 == 1) ++rep.trivial_two_one_mod_four_count;
    SMembership s = in_S(ctx, q);
    if (!s.in_S) continue;
    if (filters.one_mod_four_trivial_two_torsion && (q % 4 != 1 || v != 0)) continue;
    res.primes.push_back(q);
  }
  rep.count = res.primes.size();
  rep.fraction = rep.prime_count ? static_cast<double>(rep.count) / static_cast<double>(rep.prime_count) : 0;

  if (rep.rational_two_torsion == 1) {
    rep.cor_trivial_applies = true;
    if (rep.count == 0) {
      rep.consistent = false;
      rep.notes.push_back("E(Q)[2] = 0 but no prime of S up to the bound");
    }
    if (rep.trivial_two_one_mod_four_count == 0) {
      rep.consistent = false;
      rep.notes.push_back("no q = 1 mod 4 with E(F_q)[2] = 0 up to the bound");
    }
  } else if (rep.rational_two_torsion == 2) {
    rep.cor_four_applies = true;
    rep.cor_four_predicts_positive = rep.F_prime->kind != FieldKind::kRationals;
    if (!rep.cor_four_predicts_positive) {
      rep.notes.push_back("F' = Q: primes with E(F_q)[4] = Z/2 predicted absent");
      if (rep.four_cyclic_count != 0) rep.consistent = false;
    } else if (rep.four_cyclic_count == 0) {
      rep.consistent = false;
      rep.notes.push_back("F' != Q but no q with E(F_q)[4] = Z/2 up to the bound");
    }
    rep.cor_four_mod4_applies = rep.F.kind != FieldKind::kGaussian &&
                                rep.F_prime->kind != FieldKind::kRationals &&
                                rep.F_prime->kind != FieldKind::kGaussian;
    if (rep.cor_four_mod4_applies && rep.four_cyclic_one_mod_four_count == 0) {
      rep.consistent = false;
      rep.notes.push_back("no q = 1 mod 4 with E(F_q)[4] = Z/2 up to the bound");
    }
  } else {
    rep.notes.push_back("full rational 2-torsion: S is not defined");
  }
  return res;
}

int t_of(CurveContext& ctx, const TwistDescriptor& twist) {
  if (gcd_i64(twist.M, ctx.conductor()) != 1) {
    fail(ErrorCode::kTwistNotCoprime, "gcd(M, C) != 1 for M = " + std::to_string(twist.M));
  }
  int t = 0;
  for (std::int64_t q : twist.primes) {
    if (group_order(ctx, static_cast<std::uint64_t>(q)) % 2 == 0) ++t;
  }
  return t;
}

int tamagawa_ord2_at_twist_prime(CurveContext& ctx, std::int64_t M, std::uint64_t q) {
  if (M == 0 || q < 3 || std::llabs(M) % static_cast<std::int64_t>(q) != 0 || !is_prime_u64(q)) {
    fail(ErrorCode::kNotTwistPrime, std::to_string(q) + " is not a prime factor of " + std::to_string(M));
  }
  if (divides_conductor(ctx, q)) {
    fail(ErrorCode::kNotTwistPrime, std::to_string(q) + " divides the conductor");
  }
  int roots = two_division_root_count(ctx.model(), q);
  return torsion_ord2(roots + 1);
}

}  // namespace ltwist
