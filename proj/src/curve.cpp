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

#include "curve.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "arith.hpp"
#include "errors.hpp"
#include "real.hpp"

namespace ltwist {

std::string WeierstrassModel::to_string() const {
  std::ostringstream os;
  os << "[" << a1 << "," << a2 << "," << a3 << "," << a4 << "," << a6 << "]";
  return os.str();
}

WeierstrassModel compute_invariants(const std::array<mpz_class, 5>& a) {
  WeierstrassModel m;
  m.a1 = a[0];
  m.a2 = a[1];
  m.a3 = a[2];
  m.a4 = a[3];
  m.a6 = a[4];
  m.b2 = m.a1 * m.a1 + 4 * m.a2;
  m.b4 = 2 * m.a4 + m.a1 * m.a3;
  m.b6 = m.a3 * m.a3 + 4 * m.a6;
  m.b8 = m.a1 * m.a1 * m.a6 + 4 * m.a2 * m.a6 - m.a1 * m.a3 * m.a4 + m.a2 * m.a3 * m.a3 -
         m.a4 * m.a4;
  m.c4 = m.b2 * m.b2 - 24 * m.b4;
  m.c6 = -m.b2 * m.b2 * m.b2 + 36 * m.b2 * m.b4 - 216 * m.b6;
  m.disc = -m.b2 * m.b2 * m.b8 - 8 * m.b4 * m.b4 * m.b4 - 27 * m.b6 * m.b6 + 9 * m.b2 * m.b4 * m.b6;
  if (m.disc == 0) fail(ErrorCode::kSingularModel, "singular model " + m.to_string());
  m.j = mpq_class(m.c4 * m.c4 * m.c4, m.disc);
  m.j.canonicalize();
  return m;
}

namespace {

bool divisible(const mpz_class& n, const mpz_class& d) {
  return mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t()) != 0;
}

mpz_class pow_z(const mpz_class& p, unsigned long e) {
  mpz_class r;
  mpz_pow_ui(r.get_mpz_t(), p.get_mpz_t(), e);
  return r;
}

mpz_class pmod(const mpz_class& n, unsigned long m) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), n.get_mpz_t(), m);
  return r;
}

// Local integrality condition for (c4, c6) at p = 2 or 3.
bool kraus_holds(unsigned long p, const mpz_class& c4, const mpz_class& c6) {
  if (p == 3) {
    if (c6 == 0) return true;
    return valuation(c6, 3) != 2;
  }
  if (pmod(c6, 4) == 3) return true;
  bool c4_ok = (c4 == 0) || valuation(c4, 2) >= 4;
  mpz_class r = pmod(c6, 32);
  return c4_ok && (r == 0 || r == 8);
}

// Integral model with the given invariants and a1, a3 in {0,1}, a2 in {-1,0,1}.
bool build_reduced(const mpz_class& c4, const mpz_class& c6, WeierstrassModel* out) {
  for (int a1 = 0; a1 <= 1; ++a1) {
    for (int a2 = -1; a2 <= 1; ++a2) {
      for (int a3 = 0; a3 <= 1; ++a3) {
        mpz_class b2 = a1 + 4 * a2;
        mpz_class n4 = b2 * b2 - c4;
        if (!divisible(n4, 24)) continue;
        mpz_class b4 = n4 / 24;
        mpz_class t4 = b4 - a1 * a3;
        if (!divisible(t4, 2)) continue;
        mpz_class n6 = -b2 * b2 * b2 + 36 * b2 * b4 - c6;
        if (!divisible(n6, 216)) continue;
        mpz_class b6 = n6 / 216;
        mpz_class t6 = b6 - a3;
        if (!divisible(t6, 4)) continue;
        *out = compute_invariants({mpz_class(a1), mpz_class(a2), mpz_class(a3), t4 / 2, t6 / 4});
        return true;
      }
    }
  }
  return false;
}

}  // namespace

WeierstrassModel minimal_model_from_c4c6(const mpz_class& c4_in, const mpz_class& c6_in) {
  // Scaling by u = 6 first makes every local condition hold, so the prime
  // loop below only ever divides out.
  mpz_class c4 = c4_in * 1296;
  mpz_class c6 = c6_in * 46656;
  mpz_class num = c4 * c4 * c4 - c6 * c6;
  if (num == 0) fail(ErrorCode::kSingularModel, "c4^3 = c6^2");
  mpz_class disc = num / 1728;
  mpz_class g = gcd(c4, c6);
  for (const mpz_class& p : prime_divisors(g)) {
    int e4 = c4 == 0 ? 1 << 20 : valuation(c4, p) / 4;
    int e6 = c6 == 0 ? 1 << 20 : valuation(c6, p) / 6;
    int ed = valuation(disc, p) / 12;
    int e = std::min({e4, e6, ed});
    if (p == 2 || p == 3) {
      unsigned long pu = p.get_ui();
      while (e > 0 &&
             !kraus_holds(pu, c4 / pow_z(p, 4 * e), c6 / pow_z(p, 6 * e))) {
        --e;
      }
    }
    if (e > 0) {
      c4 /= pow_z(p, 4 * e);
      c6 /= pow_z(p, 6 * e);
      disc /= pow_z(p, 12 * e);
    }
  }
  WeierstrassModel out;
  if (!build_reduced(c4, c6, &out)) {
    fail(ErrorCode::kInternal, "no integral model for c4=" + c4.get_str() + " c6=" + c6.get_str());
  }
  return out;
}

WeierstrassModel minimal_model(const WeierstrassModel& model) {
  return minimal_model_from_c4c6(model.c4, model.c6);
}

WeierstrassModel quadratic_twist(const WeierstrassModel& model, const mpz_class& M) {
  if (M == 0 || squarefree_part(M) != M) {
    fail(ErrorCode::kNotSquarefree, "twist parameter " + M.get_str() + " is not squarefree");
  }
  return minimal_model_from_c4c6(model.c4 * M * M, model.c6 * M * M * M);
}

std::vector<mpz_class> two_division_roots(const WeierstrassModel& model) {
  std::array<mpz_class, 4> g = {16 * model.b6, 8 * model.b4, model.b2, mpz_class(1)};
  std::vector<mpz_class> roots;
  mpfr_prec_t prec = 64;
  for (const auto& c : g) prec += static_cast<mpfr_prec_t>(mpz_sizeinbase(c.get_mpz_t(), 2));
  for (const Real& x : cubic_real_roots(g, prec)) {
    mpz_class base = x.round();
    for (int d = -1; d <= 1; ++d) {
      mpz_class X = base + d;
      if (X * X * X + g[2] * X * X + g[1] * X + g[0] == 0 &&
          std::find(roots.begin(), roots.end(), X) == roots.end()) {
        roots.push_back(X);
      }
    }
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

int rational_two_torsion_order(const WeierstrassModel& model) {
  return 1 + static_cast<int>(two_division_roots(model).size());
}

WeierstrassModel two_isogenous_curve(const WeierstrassModel& model) {
  auto roots = two_division_roots(model);
  if (roots.empty()) fail(ErrorCode::kNoRationalTwoTorsion, "no rational 2-torsion");
  if (roots.size() == 3) fail(ErrorCode::kFullTwoTorsion, "full rational 2-torsion");
  const mpz_class& x0 = roots[0];
  // W^2 = T(T^2 + aT + b) after X = T + x0.
  mpz_class a = 3 * x0 + model.b2;
  mpz_class b = 3 * x0 * x0 + 2 * model.b2 * x0 + 8 * model.b4;
  auto isog = compute_invariants({mpz_class(0), mpz_class(-2 * a), mpz_class(0),
                                  mpz_class(a * a - 4 * b), mpz_class(0)});
  return minimal_model(isog);
}

std::string FieldClass::to_string() const {
  switch (kind) {
    case FieldKind::kRationals:
      return "RATIONALS";
    case FieldKind::kGaussian:
      return "GAUSSIAN";
    default:
      return "OTHER(" + d0.get_str() + ")";
  }
}

FieldClass field_class(const mpz_class& D) {
  if (D == 0) fail(ErrorCode::kZeroDiscriminant, "field_class of 0");
  mpz_class s = squarefree_part(D);
  if (s == 1) return {FieldKind::kRationals, s};
  if (s == -1) return {FieldKind::kGaussian, s};
  return {FieldKind::kOther, s};
}

int real_components(const WeierstrassModel& model) { return model.disc > 0 ? 2 : 1; }

int TwistDescriptor::r_plus() const {
  return static_cast<int>(std::count_if(primes.begin(), primes.end(),
                                        [](std::int64_t q) { return q % 4 == 1; }));
}

int TwistDescriptor::r_minus() const { return r() - r_plus(); }

std::string TwistDescriptor::factorization() const {
  std::string s = eps < 0 ? "-1" : "1";
  for (auto q : primes) s += "*" + std::to_string(q);
  return s;
}

TwistDescriptor make_twist(std::int64_t M, std::int64_t conductor) {
  if (M == 1) fail(ErrorCode::kInvalidArgument, "M = 1 is not an admissible twist");
  if (M == 0 || !is_squarefree(M)) {
    fail(ErrorCode::kNotSquarefree, "M = " + std::to_string(M) + " is not squarefree");
  }
  if (mod(M, 4) != 1) fail(ErrorCode::kInvalidArgument, "M = " + std::to_string(M) + " is not 1 mod 4");
  if (conductor != 0 && gcd_i64(M, conductor) != 1) {
    fail(ErrorCode::kTwistNotCoprime, "gcd(M, C) != 1 for M = " + std::to_string(M));
  }
  TwistDescriptor t;
  t.M = M;
  t.eps = M < 0 ? -1 : 1;
  t.m = std::llabs(M);
  for (auto& [p, e] : factor_u64(static_cast<std::uint64_t>(t.m))) {
    t.primes.push_back(static_cast<std::int64_t>(p));
    if (p % 4 == 1) {
      t.m_plus *= static_cast<std::int64_t>(p);
    } else {
      t.m_minus *= static_cast<std::int64_t>(p);
    }
  }
  return t;
}

TwistDescriptor twist_from_primes(const std::vector<std::int64_t>& primes, std::int64_t conductor) {
  std::int64_t m = 1;
  for (auto q : primes) m *= q;
  return make_twist(m % 4 == 1 ? m : -m, conductor);
}

}  // namespace ltwist
