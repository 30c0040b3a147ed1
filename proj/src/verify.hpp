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

// Sweeps that check the lower bound, the exact valuation, the local 2-torsion
// criteria, the symbol identities and the two vanishing examples.

#ifndef LTWIST_VERIFY_HPP_
#define LTWIST_VERIFY_HPP_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "finite_field.hpp"
#include "modsym.hpp"
#include "prime_sets.hpp"
#include "rationalize.hpp"

namespace ltwist {

// kWarn replaces kFail in research mode.
enum class Verdict { kPass, kFail, kVacuous, kSkipped, kWarn };
const char* verdict_name(Verdict v);

struct VerifyOptions {
  bool research = false;
  int jobs = 1;
  RationalizeConfig rational;
};

struct TwistReport {
  std::string label;
  TwistDescriptor twist;
  int t = 0;
  int bound = 0;  // lower bound, or the exact value for the exact-valuation runs
  std::optional<AlgebraicLValue> value;
  Verdict verdict = Verdict::kSkipped;
  std::string error;  // error code name when the computation failed
  std::string note;
  double seconds = 0;
};

// Admissible M with |M| <= bound, ordered by |M| and negative first.
std::vector<std::int64_t> admissible_twists(std::int64_t bound, std::int64_t conductor);

// Runs `fn` over [0, n) on `jobs` threads, strided by worker.
void parallel_for(std::size_t n, int jobs, const std::function<void(std::size_t)>& fn);

std::vector<TwistReport> verify_lower_bound(SymbolEngine& eng, std::int64_t max_m, const VerifyOptions& opts);

struct HypothesisLedger {
  std::string label;
  bool optimal = false;
  bool disc_negative = false;
  int rational_two_torsion = 1;
  bool two_torsion_z2 = false;
  bool manin_odd = true;  // from the table, not computed
  std::string l_ratio;    // L(E,1)/c_inf(E) as a fraction
  std::optional<int> ord2_l_ratio;
  bool ord2_minus_one = false;
  bool nonvanishing_condition = false;  // ord2(L/c_inf) = -ord2|E(Q)[2]|
  std::uint64_t s_bound = 0;
  std::uint64_t s_count = 0;
  bool s_nonempty = false;
  bool exact_valuation_eligible = false;
  bool nonvanishing_eligible = false;
};

HypothesisLedger check_hypotheses(CurveContext& ctx, const Precision& prec, std::uint64_t s_bound = 200);

// The first `samples` r-subsets of S cap [3, prime_bound] in lexicographic
// order by prime size, each signed so that M = 1 mod 4.
std::vector<std::int64_t> sample_twists_from_S(const std::vector<std::uint64_t>& S, int r, int samples);

std::vector<TwistReport> verify_exact_valuation(SymbolEngine& eng, int r, int samples, std::uint64_t prime_bound,
                                                const VerifyOptions& opts);

struct NonvanishingResult {
  int r = 0;
  std::int64_t bound = 0;
  bool applicable = true;  // false: S empty (NOT_APPLICABLE)
  std::uint64_t candidates = 0;
  std::uint64_t nonzero = 0;
  std::vector<std::int64_t> first_nonzero;  // up to 10
  std::vector<std::string> errors;
};

NonvanishingResult nonvanishing_search(SymbolEngine& eng, int r, std::int64_t bound, const VerifyOptions& opts);

struct CounterexampleRecord {
  std::string label;
  std::int64_t q = 0;
  std::int64_t M = 0;
  double abs_normalized = 0;
  std::string rational;
  bool zero = false;
  bool other_conditions = false;  // q odd, good, ord2 N_q = ord2 |E(Q)[2]|
  bool congruence_excluded = false;
  std::string in_s_reason;
  Verdict verdict = Verdict::kFail;
  std::string note;
};

// `find` maps a label to a context (null when absent).
std::vector<CounterexampleRecord> reproduce_counterexamples(
    const std::function<CurveContext*(const std::string&)>& find, const Precision& prec);

struct LemmaRecord {
  std::int64_t m = 0;
  int r = 0;
  std::string value;  // <m>_{chi^0}/c_f
  std::optional<int> ord2;
  int bound = 0;
  bool strict = false;
  Verdict verdict = Verdict::kSkipped;
  std::string note;
};

std::vector<LemmaRecord> verify_strict_bound_lemma(SymbolEngine& eng, const std::vector<std::int64_t>& ms,
                                                   const VerifyOptions& opts);
std::vector<LemmaRecord> verify_weak_bound_lemma(SymbolEngine& eng, const std::vector<std::int64_t>& ms,
                                                 const VerifyOptions& opts);

struct IdentityRecord {
  std::string identity;  // "sum-over-divisors", "twisted-value", "propagation", "product-formula"
  std::int64_t m = 0;
  std::int64_t d = 0;
  double residual = 0;
  Verdict verdict = Verdict::kFail;
  std::string note;
};

std::vector<IdentityRecord> verify_identities(SymbolEngine& eng, const std::vector<std::int64_t>& ms,
                                              double tolerance = 1e-20);

struct Lemma21Sweep {
  bool applicable = true;
  int rational_two_torsion = 1;
  std::vector<Lemma21Result> results;
  std::uint64_t agreements = 0;
};

Lemma21Sweep verify_lemma21(CurveContext& ctx, int count = 200);

}  // namespace ltwist

#endif  // LTWIST_VERIFY_HPP_
