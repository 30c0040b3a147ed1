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

// Reduction mod p: point counts, traces of Frobenius, Dirichlet coefficients
// and the local 2-primary structure at odd good primes.

#ifndef LTWIST_FINITE_FIELD_HPP_
#define LTWIST_FINITE_FIELD_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "curve.hpp"

namespace ltwist {

// |E(F_p)| for p of good reduction. Odd p use a quadratic-residue table;
// p = 2, 3 enumerate the long Weierstrass congruence. O(p).
std::uint64_t count_points(const WeierstrassModel& model, std::uint64_t p);
// Double loop over (x, y) on the long form, projective closure included.
// Valid for every p; at bad p it counts the singular point too.
std::uint64_t count_points_naive(const WeierstrassModel& model, std::uint64_t p);
// Baby-step giant-step group order (Mestre), p >= 5 of good reduction.
std::uint64_t count_points_bsgs(const WeierstrassModel& model, std::uint64_t p);

// a_p in {-1, 0, 1} at p | disc of a minimal model.
int a_p_bad(const WeierstrassModel& model, std::uint64_t p);
// a_p at any prime; dispatches on reduction type and size of p.
std::int64_t a_p(const WeierstrassModel& model, std::uint64_t p);

// Primes up to a bound with their a_p, ascending.
class ApTable {
 public:
  ApTable() = default;
  explicit ApTable(std::string label) : label_(std::move(label)) {}

  const std::string& label() const { return label_; }
  std::uint64_t bound() const { return bound_; }
  // Fills all primes up to n_max, reusing known entries.
  void extend(const WeierstrassModel& model, std::uint64_t n_max, int jobs = 1);
  // Seeds entries (from a cache file); they are trusted.
  void insert(std::uint64_t p, std::int64_t ap);
  std::optional<std::int64_t> find(std::uint64_t p) const;
  std::int64_t at(std::uint64_t p) const;
  const std::map<std::uint64_t, std::int64_t>& entries() const { return ap_; }

 private:
  std::string label_;
  std::uint64_t bound_ = 1;
  std::map<std::uint64_t, std::int64_t> ap_;
};

// a_1 .. a_{n_max}; index 0 holds 0. `bad` = primes dividing the conductor.
std::vector<std::int64_t> a_n_table(const ApTable& aps, const std::vector<std::uint64_t>& bad,
                                    std::uint64_t n_max);
std::vector<std::int64_t> a_n_table(const WeierstrassModel& model, std::uint64_t n_max);

struct LocalData {
  std::uint64_t q = 0;
  std::uint64_t N = 0;
  std::int64_t a = 0;
  int two_part = 0;
  int two_torsion_count = 1;
  bool four_torsion_cyclic = false;
};

// Number of roots mod q of the 2-division cubic 4x^3 + b2 x^2 + 2 b4 x + b6,
// via deg gcd(x^q - x, f).
int two_division_root_count(const WeierstrassModel& model, std::uint64_t q);
// Whether the unique F_q-rational 2-torsion point lies in 2 E(F_q).
// Requires exactly one root of the cubic mod q.
bool two_torsion_point_halves(const WeierstrassModel& model, std::uint64_t q);

LocalData local_two_structure(const WeierstrassModel& model, std::uint64_t q);
LocalData local_two_structure(const WeierstrassModel& model, std::uint64_t q, std::int64_t aq);

struct Lemma21Result {
  std::uint64_t q = 0;
  std::string branch;  // "i" or "ii"
  bool group_side = false;
  bool field_side = false;
  bool agree = false;
};

// Branch (i) for E(Q)[2] = 0 and (ii) for E(Q)[2] = Z/2; `isogenous` is
// required for branch (ii).
Lemma21Result lemma21_check(const WeierstrassModel& model, int rational_two_torsion,
                            const WeierstrassModel* isogenous, std::uint64_t q);
Lemma21Result lemma21_check(const WeierstrassModel& model, std::uint64_t q);

}  // namespace ltwist

#endif  // LTWIST_FINITE_FIELD_HPP_
