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

#include "arith.hpp"

#include <cstdlib>
#include <numeric>

#include "errors.hpp"

namespace ltwist {

namespace {
constexpr std::uint64_t kTrialLimit = 1000000;
}

std::vector<std::uint32_t> primes_up_to(std::uint64_t n) {
  std::vector<std::uint32_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(n + 1, false);
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (composite[i]) continue;
    out.push_back(static_cast<std::uint32_t>(i));
    for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
  }
  return out;
}

FactorSieve::FactorSieve(std::uint64_t n) : spf_(n + 1, 0) {
  for (std::uint64_t i = 2; i <= n; ++i) {
    if (spf_[i] != 0) continue;
    for (std::uint64_t j = i; j <= n; j += i) {
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
    }
  }
  if (n >= 1) spf_[1] = 1;
}

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

std::uint64_t invmod(std::uint64_t a, std::uint64_t m) {
  std::int64_t t = 0, nt = 1;
  std::int64_t r = static_cast<std::int64_t>(m), nr = static_cast<std::int64_t>(a % m);
  while (nr != 0) {
    std::int64_t q = r / nr;
    std::int64_t tmp = t - q * nt;
    t = nt;
    nt = tmp;
    tmp = r - q * nr;
    r = nr;
    nr = tmp;
  }
  if (r != 1) fail(ErrorCode::kInvalidArgument, "invmod: not invertible");
  if (t < 0) t += static_cast<std::int64_t>(m);
  return static_cast<std::uint64_t>(t);
}

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

Factorization factor_u64(std::uint64_t n) {
  Factorization f;
  for (std::uint64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    f.emplace_back(p, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  return f;
}

bool is_squarefree(std::int64_t n) {
  if (n == 0) return false;
  for (auto& [p, e] : factor_u64(static_cast<std::uint64_t>(std::llabs(n)))) {
    if (e > 1) return false;
  }
  return true;
}

std::vector<mpz_class> prime_divisors(const mpz_class& n) {
  std::vector<mpz_class> out;
  mpz_class m = abs(n);
  if (m == 0) fail(ErrorCode::kInvalidArgument, "prime_divisors of 0");
  for (std::uint64_t p = 2; p <= kTrialLimit && m > 1; p += (p == 2 ? 1 : 2)) {
    if (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      out.emplace_back(static_cast<unsigned long>(p));
      while (mpz_divisible_ui_p(m.get_mpz_t(), p)) m /= static_cast<unsigned long>(p);
    }
  }
  if (m > 1) {
    if (mpz_perfect_square_p(m.get_mpz_t())) m = sqrt(m);
    out.push_back(m);
  }
  return out;
}

int valuation(const mpz_class& n, const mpz_class& p) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "valuation of 0");
  int v = 0;
  mpz_class m = n;
  while (mpz_divisible_p(m.get_mpz_t(), p.get_mpz_t())) {
    m /= p;
    ++v;
  }
  return v;
}

int ord2(const mpz_class& n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "ord2 of 0");
  return static_cast<int>(mpz_scan1(n.get_mpz_t(), 0));
}

int ord2_u64(std::uint64_t n) {
  if (n == 0) fail(ErrorCode::kInvalidArgument, "ord2 of 0");
  return __builtin_ctzll(n);
}

mpz_class squarefree_part(const mpz_class& n) {
  if (n == 0) fail(ErrorCode::kZeroDiscriminant, "squarefree part of 0");
  mpz_class m = abs(n);
  mpz_class s = 1;
  for (std::uint64_t p = 2; p <= kTrialLimit && m > 1; p += (p == 2 ? 1 : 2)) {
    int e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      m /= static_cast<unsigned long>(p);
      ++e;
    }
    if (e & 1) s *= static_cast<unsigned long>(p);
  }
  if (m > 1 && !mpz_perfect_square_p(m.get_mpz_t())) s *= m;
  return n < 0 ? mpz_class(-s) : s;
}

std::uint64_t sqrtmod(std::uint64_t a, std::uint64_t p) {
  a %= p;
  if (a == 0 || p == 2) return a;
  if (p % 4 == 3) return powmod(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  std::uint64_t q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  std::uint64_t z = 2;
  while (powmod(z, (p - 1) / 2, p) != p - 1) ++z;
  std::uint64_t c = powmod(z, q, p);
  std::uint64_t x = powmod(a, (q + 1) / 2, p);
  std::uint64_t t = powmod(a, q, p);
  int m = s;
  while (t != 1) {
    int i = 0;
    std::uint64_t tt = t;
    while (tt != 1) {
      tt = mulmod(tt, tt, p);
      ++i;
      if (i == m) fail(ErrorCode::kInvalidArgument, "sqrtmod: nonresidue");
    }
    std::uint64_t b = c;
    for (int j = 0; j < m - i - 1; ++j) b = mulmod(b, b, p);
    x = mulmod(x, b, p);
    c = mulmod(b, b, p);
    t = mulmod(t, c, p);
    m = i;
  }
  return x;
}

int jacobi(std::int64_t a, std::int64_t n) {
  if (n <= 0 || (n & 1) == 0) fail(ErrorCode::kInvalidArgument, "jacobi: n must be odd positive");
  a = mod(a, n);
  int result = 1;
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      std::int64_t r = n & 7;
      if (r == 3 || r == 5) result = -result;
    }
    std::swap(a, n);
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

int kronecker(std::int64_t a, std::int64_t n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  int v = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++v;
  }
  if (v > 0) {
    if ((a & 1) == 0) return 0;
    std::int64_t r = mod(a, 8);
    if ((v & 1) && (r == 3 || r == 5)) result = -result;
  }
  if (n == 1) return result;
  return result * jacobi(a, n);
}

std::int64_t gcd_i64(std::int64_t a, std::int64_t b) {
  return std::gcd(a < 0 ? -a : a, b < 0 ? -b : b);
}

}  // namespace ltwist
