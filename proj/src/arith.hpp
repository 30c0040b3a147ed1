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

// Small-integer number theory shared by the modules.

#ifndef LTWIST_ARITH_HPP_
#define LTWIST_ARITH_HPP_

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

namespace ltwist {

using Factorization = std::vector<std::pair<std::uint64_t, int>>;

std::vector<std::uint32_t> primes_up_to(std::uint64_t n);

// Smallest-prime-factor table for 0..n.
class FactorSieve {
 public:
  explicit FactorSieve(std::uint64_t n);
  std::uint64_t limit() const { return spf_.size() - 1; }
  std::uint32_t spf(std::uint64_t k) const { return spf_[k]; }
  bool is_prime(std::uint64_t k) const { return k >= 2 && spf_[k] == k; }

 private:
  std::vector<std::uint32_t> spf_;
};

bool is_prime_u64(std::uint64_t n);
Factorization factor_u64(std::uint64_t n);
bool is_squarefree(std::int64_t n);

// Primes dividing n, found by trial division up to 10^6; a cofactor above
// that bound is reported as a single entry (prime or, if not, composite).
std::vector<mpz_class> prime_divisors(const mpz_class& n);
int valuation(const mpz_class& n, const mpz_class& p);
// ord_2 of a nonzero integer.
int ord2(const mpz_class& n);
int ord2_u64(std::uint64_t n);

// Signed squarefree part: n = s * k^2 with s squarefree.
mpz_class squarefree_part(const mpz_class& n);

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m);
// Inverse modulo m; requires gcd(a, m) = 1.
std::uint64_t invmod(std::uint64_t a, std::uint64_t m);
std::int64_t mod(std::int64_t a, std::int64_t m);
// Square root modulo an odd prime, for a quadratic residue a.
std::uint64_t sqrtmod(std::uint64_t a, std::uint64_t p);

// Jacobi symbol (a|n) for odd n > 0.
int jacobi(std::int64_t a, std::int64_t n);
// Kronecker symbol (a|n) for any n != 0.
int kronecker(std::int64_t a, std::int64_t n);

std::int64_t gcd_i64(std::int64_t a, std::int64_t b);

}  // namespace ltwist

#endif  // LTWIST_ARITH_HPP_
