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

// The prime set S, t_E(M), and the density statements.

#ifndef LTWIST_PRIME_SETS_HPP_
#define LTWIST_PRIME_SETS_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "curve.hpp"

namespace ltwist {

enum class SReason { kOk, kBadPrime, kCongruenceFail, kTwoPartMismatch };
const char* s_reason_name(SReason r);

struct SMembership {
  std::uint64_t q = 0;
  bool in_S = false;
  SReason reason = SReason::kOk;
};

// q odd prime. q | 2C gives BAD_PRIME rather than an error.
SMembership in_S(CurveContext& ctx, std::uint64_t q);

struct SieveFilters {
  // Only q = 1 mod 4 with E(F_q)[2] = 0 (the second density statement for
  // curves without rational 2-torsion).
  bool one_mod_four_trivial_two_torsion = false;
};

struct DensityReport {
  std::uint64_t bound = 0;
  std::uint64_t prime_count = 0;  // pi(X)
  std::uint64_t good_odd_count = 0;
  std::uint64_t count = 0;        // |S cap [2, X]| after filters
  double fraction = 0;            // count / pi(X)
  int rational_two_torsion = 1;
  FieldClass F{FieldKind::kOther, 0};
  std::optional<FieldClass> F_prime;
  // Primes with E(F_q)[4] = Z/2, for curves with E(Q)[2] = Z/2.
  std::uint64_t four_cyclic_count = 0;
  std::uint64_t four_cyclic_one_mod_four_count = 0;
  // Primes q = 1 mod 4 with E(F_q)[2] = 0, for E(Q)[2] = 0.
  std::uint64_t trivial_two_one_mod_four_count = 0;
  // Which density statements apply, and what they predict.
  bool cor_trivial_applies = false;     // E(Q)[2] = 0: positive density
  bool cor_four_applies = false;        // E(Q)[2] = Z/2: positive iff F' != Q
  bool cor_four_predicts_positive = false;
  bool cor_four_mod4_applies = false;   // Z/2, F != Q(i), F' != Q, Q(i)
  // Predictions that can be refuted at this bound (an empty predicted-empty
  // family stays consistent).
  bool consistent = true;
  std::vector<std::string> notes;
};

struct SieveResult {
  std::vector<std::uint64_t> primes;  // members of S up to X, ascending
  DensityReport report;
};

SieveResult sieve_S(CurveContext& ctx, std::uint64_t X, const SieveFilters& filters = {});

// Number of q | M with N_q even. Throws TwistNotCoprime.
int t_of(CurveContext& ctx, const TwistDescriptor& twist);

// ord_2 |E(F_q)[2]| for q | M. Throws NotTwistPrime.
int tamagawa_ord2_at_twist_prime(CurveContext& ctx, std::int64_t M, std::uint64_t q);

}  // namespace ltwist

#endif  // LTWIST_PRIME_SETS_HPP_
