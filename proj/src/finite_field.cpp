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

#include "finite_field.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>
#include <random>
#include <thread>

#include "arith.hpp"
#include "errors.hpp"

namespace ltwist {

namespace {

// Residue-table counting is used up to this prime, BSGS above.
constexpr std::uint64_t kBsgsThreshold = 2000;

std::uint64_t reduce(const mpz_class& n, std::uint64_t p) {
  return mpz_fdiv_ui(n.get_mpz_t(), p);
}

bool divides(std::uint64_t p, const mpz_class& n) {
  return mpz_divisible_ui_p(n.get_mpz_t(), p) != 0;
}

std::uint64_t isqrt(std::uint64_t n) {
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

// Affine count on Y^2 = 4x^3 + b2 x^2 + 2 b4 x + b6, odd p; the point at
// infinity included. Also correct at bad p (counts the singular point).
std::uint64_t count_by_table(const WeierstrassModel& m, std::uint64_t p) {
  std::vector<std::int8_t> chi(p, -1);
  chi[0] = 0;
  for (std::uint64_t y = 1; y <= p / 2; ++y) chi[y * y % p] = 1;
  std::uint64_t b2 = reduce(m.b2, p), b4 = reduce(m.b4, p), b6 = reduce(m.b6, p);
  std::uint64_t c1 = 2 * b4 % p;
  std::int64_t total = 0;
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = (4 * x % p + b2) % p;
    v = (v * x + c1) % p;
    v = (v * x + b6) % p;
    total += chi[v];
  }
  return static_cast<std::uint64_t>(static_cast<std::int64_t>(p) + 1 + total);
}

// ---- Jacobian arithmetic on y^2 = x^3 + A x + B over F_p, p < 2^32 ----

struct Jac {
  std::uint64_t X = 0, Y = 1, Z = 0;
  bool inf() const { return Z == 0; }
};

struct ShortCurve {
  std::uint64_t p, A, B;

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return a * b % p; }
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
    std::uint64_t s = a + b;
    return s >= p ? s - p : s;
  }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + p - b; }

  Jac dbl(const Jac& P) const {
    if (P.inf() || P.Y == 0) return Jac{};
    std::uint64_t XX = mul(P.X, P.X), YY = mul(P.Y, P.Y), YYYY = mul(YY, YY);
    std::uint64_t ZZ = mul(P.Z, P.Z);
    std::uint64_t S = mul(4, mul(P.X, YY));
    std::uint64_t M = add(mul(3, XX), mul(A, mul(ZZ, ZZ)));
    Jac R;
    R.X = sub(mul(M, M), add(S, S));
    R.Y = sub(mul(M, sub(S, R.X)), mul(8, YYYY));
    R.Z = mul(2, mul(P.Y, P.Z));
    return R;
  }

  Jac plus(const Jac& P, const Jac& Q) const {
    if (P.inf()) return Q;
    if (Q.inf()) return P;
    std::uint64_t Z1Z1 = mul(P.Z, P.Z), Z2Z2 = mul(Q.Z, Q.Z);
    std::uint64_t U1 = mul(P.X, Z2Z2), U2 = mul(Q.X, Z1Z1);
    std::uint64_t S1 = mul(P.Y, mul(Q.Z, Z2Z2)), S2 = mul(Q.Y, mul(P.Z, Z1Z1));
    if (U1 == U2) return S1 == S2 ? dbl(P) : Jac{};
    std::uint64_t H = sub(U2, U1), R = sub(S2, S1);
    std::uint64_t HH = mul(H, H), HHH = mul(H, HH), V = mul(U1, HH);
    Jac out;
    out.X = sub(sub(mul(R, R), HHH), add(V, V));
    out.Y = sub(mul(R, sub(V, out.X)), mul(S1, HHH));
    out.Z = mul(mul(P.Z, Q.Z), H);
    return out;
  }

  Jac times(std::uint64_t k, const Jac& P) const {
    Jac R{};
    Jac base = P;
    while (k) {
      if (k & 1) R = plus(R, base);
      base = dbl(base);
      k >>= 1;
    }
    return R;
  }
};

// Affine (x, y) of finite Jacobian points, one inversion for the batch.
void normalize(const ShortCurve& E, const std::vector<Jac>& pts,
               std::vector<std::pair<std::uint64_t, std::uint64_t>>* out) {
  const std::size_t n = pts.size();
  std::vector<std::uint64_t> prefix(n + 1, 1);
  for (std::size_t i = 0; i < n; ++i) {
    prefix[i + 1] = pts[i].inf() ? prefix[i] : E.mul(prefix[i], pts[i].Z);
  }
  std::uint64_t inv = invmod(prefix[n], E.p);
  out->assign(n, {0, 0});
  for (std::size_t i = n; i-- > 0;) {
    if (pts[i].inf()) continue;
    std::uint64_t zi = E.mul(inv, prefix[i]);
    inv = E.mul(inv, pts[i].Z);
    std::uint64_t zi2 = E.mul(zi, zi);
    (*out)[i] = {E.mul(pts[i].X, zi2), E.mul(pts[i].Y, E.mul(zi2, zi))};
  }
}

// Some n in [lo, hi] with nP = O, or 0 if none.
std::uint64_t multiple_in_window(const ShortCurve& E, const Jac& P, std::uint64_t lo,
                                 std::uint64_t hi) {
  std::uint64_t width = hi - lo + 1;
  std::uint64_t s = isqrt(width / 2) + 1;
  std::vector<Jac> baby(s + 1);
  baby[0] = Jac{};
  for (std::uint64_t j = 1; j <= s; ++j) baby[j] = E.plus(baby[j - 1], P);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> baby_aff;
  normalize(E, baby, &baby_aff);
  struct Entry {
    std::uint64_t x, y, j;
  };
  std::vector<Entry> table;
  table.reserve(s);
  for (std::uint64_t j = 1; j <= s; ++j) {
    if (baby[j].inf()) return j;  // j is the order itself
    table.push_back({baby_aff[j].first, baby_aff[j].second, j});
  }
  std::sort(table.begin(), table.end(), [](const Entry& a, const Entry& b) {
    return a.x < b.x || (a.x == b.x && a.j < b.j);
  });
  const std::uint64_t step = 2 * s + 1;
  const std::uint64_t giants = width / step + 1;
  std::vector<Jac> giant(giants);
  Jac G = E.times(step, P);
  giant[0] = E.times(lo + s, P);
  for (std::uint64_t i = 1; i < giants; ++i) giant[i] = E.plus(giant[i - 1], G);
  std::vector<std::pair<std::uint64_t, std::uint64_t>> giant_aff;
  normalize(E, giant, &giant_aff);
  for (std::uint64_t i = 0; i < giants; ++i) {
    std::uint64_t centre = lo + s + i * step;
    if (giant[i].inf()) return centre;
    auto [x, y] = giant_aff[i];
    auto it = std::lower_bound(table.begin(), table.end(), x,
                               [](const Entry& e, std::uint64_t v) { return e.x < v; });
    if (it != table.end() && it->x == x) {
      // R = jP gives (centre - j)P = O; R = -jP gives (centre + j)P = O.
      return it->y == y ? centre - it->j : centre + it->j;
    }
  }
  return 0;
}

std::uint64_t order_of(const ShortCurve& E, const Jac& P, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t n = multiple_in_window(E, P, lo, hi);
  if (n == 0) return 0;
  for (auto& [ell, e] : factor_u64(n)) {
    for (int k = 0; k < e; ++k) {
      if (E.times(n / ell, P).inf()) {
        n /= ell;
      } else {
        break;
      }
    }
  }
  return n;
}

bool is_qr(std::uint64_t a, std::uint64_t p) { return a == 0 || powmod(a, (p - 1) / 2, p) == 1; }

}  // namespace

std::uint64_t count_points_naive(const WeierstrassModel& m, std::uint64_t p) {
  std::int64_t a1 = reduce(m.a1, p), a2 = reduce(m.a2, p), a3 = reduce(m.a3, p);
  std::int64_t a4 = reduce(m.a4, p), a6 = reduce(m.a6, p);
  std::int64_t P = static_cast<std::int64_t>(p);
  std::uint64_t count = 1;
  for (std::int64_t x = 0; x < P; ++x) {
    std::int64_t rhs = (((x + a2) % P * x % P + a4) % P * x % P + a6) % P;
    for (std::int64_t y = 0; y < P; ++y) {
      std::int64_t lhs = (y * y % P + a1 * x % P * y % P + a3 * y % P) % P;
      if (lhs == rhs) ++count;
    }
  }
  return count;
}

std::uint64_t count_points(const WeierstrassModel& m, std::uint64_t p) {
  if (divides(p, m.disc)) {
    fail(ErrorCode::kBadReduction, "p = " + std::to_string(p) + " divides the discriminant");
  }
  if (p <= 3) return count_points_naive(m, p);
  return count_by_table(m, p);
}

std::uint64_t count_points_bsgs(const WeierstrassModel& m, std::uint64_t p) {
  if (p < 5 || p >= (1ULL << 32)) fail(ErrorCode::kInvalidArgument, "count_points_bsgs: p out of range");
  if (divides(p, m.disc)) {
    fail(ErrorCode::kBadReduction, "p = " + std::to_string(p) + " divides the discriminant");
  }
  // y^2 = x^3 - 27 c4 x - 54 c6 is isomorphic to E for p >= 5.
  std::uint64_t A = (p - reduce(27 * m.c4, p)) % p;
  std::uint64_t B = (p - reduce(54 * m.c6, p)) % p;
  std::uint64_t d = 2;
  while (is_qr(d, p)) ++d;
  ShortCurve curves[2] = {{p, A, B}, {p, A * d % p * d % p, B * d % p * d % p * d % p}};
  std::uint64_t r = isqrt(4 * p);
  std::uint64_t lo = p + 1 - r, hi = p + 1 + r;
  std::uint64_t lcm[2] = {1, 1};
  std::mt19937_64 rng(p);
  for (int iter = 0; iter < 60; ++iter) {
    int side = iter & 1;
    const ShortCurve& E = curves[side];
    Jac P;
    for (;;) {
      std::uint64_t x = rng() % p;
      std::uint64_t rhs = (E.mul(E.mul(x, x), x) + E.mul(E.A, x) + E.B) % p;
      if (!is_qr(rhs, p)) continue;
      P = Jac{x, sqrtmod(rhs, p), 1};
      break;
    }
    std::uint64_t ord = order_of(E, P, lo, hi);
    if (ord == 0) break;
    lcm[side] = std::lcm(lcm[side], ord);
    std::uint64_t found = 0, count = 0;
    std::uint64_t first = (lo + lcm[0] - 1) / lcm[0] * lcm[0];
    for (std::uint64_t N = first; N <= hi && count < 2; N += lcm[0]) {
      if ((2 * p + 2 - N) % lcm[1] == 0) {
        found = N;
        ++count;
      }
    }
    if (count == 1) return found;
  }
  return count_by_table(m, p);
}

int a_p_bad(const WeierstrassModel& m, std::uint64_t p) {
  if (!divides(p, m.disc)) {
    fail(ErrorCode::kGoodReduction, "p = " + std::to_string(p) + " does not divide the discriminant");
  }
  // Exactly one singular point; nonsingular count = total - 1 = p - a_p.
  std::uint64_t total = p <= 3 ? count_points_naive(m, p) : count_by_table(m, p);
  return static_cast<int>(static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(total));
}

std::int64_t a_p(const WeierstrassModel& m, std::uint64_t p) {
  if (divides(p, m.disc)) return a_p_bad(m, p);
  std::uint64_t N = p < kBsgsThreshold ? count_points(m, p) : count_points_bsgs(m, p);
  return static_cast<std::int64_t>(p) + 1 - static_cast<std::int64_t>(N);
}

void ApTable::insert(std::uint64_t p, std::int64_t ap) { ap_[p] = ap; }

std::optional<std::int64_t> ApTable::find(std::uint64_t p) const {
  auto it = ap_.find(p);
  if (it == ap_.end()) return std::nullopt;
  return it->second;
}

std::int64_t ApTable::at(std::uint64_t p) const {
  auto it = ap_.find(p);
  if (it == ap_.end()) {
    fail(ErrorCode::kCoefficientTableTooShort, "a_p missing for p = " + std::to_string(p));
  }
  return it->second;
}

void ApTable::extend(const WeierstrassModel& model, std::uint64_t n_max, int jobs) {
  if (n_max <= bound_) return;
  std::vector<std::uint64_t> todo;
  for (std::uint32_t p : primes_up_to(n_max)) {
    if (!ap_.count(p)) todo.push_back(p);
  }
  std::vector<std::int64_t> vals(todo.size());
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(todo.size() / 64) + 1));
  auto work = [&](int w) {
    for (std::size_t i = w; i < todo.size(); i += jobs) vals[i] = a_p(model, todo[i]);
  };
  if (jobs == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < jobs; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (std::size_t i = 0; i < todo.size(); ++i) ap_[todo[i]] = vals[i];
  bound_ = n_max;
}

std::vector<std::int64_t> a_n_table(const ApTable& aps, const std::vector<std::uint64_t>& bad,
                                    std::uint64_t n_max) {
  if (aps.bound() < n_max) {
    fail(ErrorCode::kCoefficientTableTooShort, "a_p table bound " + std::to_string(aps.bound()) +
                                                   " below " + std::to_string(n_max));
  }
  std::vector<std::int64_t> a(n_max + 1, 0);
  if (n_max >= 1) a[1] = 1;
  FactorSieve sieve(n_max);
  for (std::uint64_t n = 2; n <= n_max; ++n) {
    std::uint64_t p = sieve.spf(n);
    std::uint64_t pk = 1, m = n;
    while (m % p == 0) {
      m /= p;
      pk *= p;
    }
    if (m > 1) {
      a[n] = a[pk] * a[m];
      continue;
    }
    std::int64_t ap = aps.at(p);
    if (pk == p) {
      a[n] = ap;
    } else if (std::find(bad.begin(), bad.end(), p) != bad.end()) {
      a[n] = ap * a[n / p];
    } else {
      a[n] = ap * a[n / p] - static_cast<std::int64_t>(p) * a[n / p / p];
    }
  }
  return a;
}

std::vector<std::int64_t> a_n_table(const WeierstrassModel& model, std::uint64_t n_max) {
  ApTable aps;
  aps.extend(model, n_max);
  std::vector<std::uint64_t> bad;
  for (auto& [p, ap] : aps.entries()) {
    if (divides(p, model.disc)) bad.push_back(p);
  }
  return a_n_table(aps, bad, n_max);
}

namespace {

// Polynomials of degree < 3 modulo a monic cubic over F_q.
using Poly3 = std::array<std::uint64_t, 3>;

struct CubicRing {
  std::uint64_t q;
  std::array<std::uint64_t, 3> f;  // x^3 = -(f[2] x^2 + f[1] x + f[0])

  Poly3 mul(const Poly3& u, const Poly3& v) const {
    std::array<std::uint64_t, 5> w{};
    for (int i = 0; i < 3; ++i) {
      for (int j = 0; j < 3; ++j) w[i + j] = (w[i + j] + u[i] * v[j]) % q;
    }
    for (int k = 4; k >= 3; --k) {
      std::uint64_t c = w[k];
      w[k] = 0;
      for (int i = 0; i < 3; ++i) w[k - 3 + i] = (w[k - 3 + i] + q - c * f[i] % q) % q;
    }
    return {w[0], w[1], w[2]};
  }
};

// Monic 2-division cubic mod q.
std::array<std::uint64_t, 3> monic_cubic(const WeierstrassModel& m, std::uint64_t q) {
  std::uint64_t inv4 = invmod(4, q);
  return {reduce(m.b6, q) * inv4 % q, 2 * reduce(m.b4, q) % q * inv4 % q, reduce(m.b2, q) * inv4 % q};
}

int poly_degree(const std::vector<std::uint64_t>& p) {
  for (int i = static_cast<int>(p.size()) - 1; i >= 0; --i) {
    if (p[i] != 0) return i;
  }
  return -1;
}

// gcd over F_q; returns the monic gcd.
std::vector<std::uint64_t> poly_gcd(std::vector<std::uint64_t> a, std::vector<std::uint64_t> b,
                                    std::uint64_t q) {
  while (poly_degree(b) >= 0) {
    int db = poly_degree(b);
    std::uint64_t inv = invmod(b[db], q);
    while (poly_degree(a) >= db) {
      int da = poly_degree(a);
      std::uint64_t c = a[da] * inv % q;
      for (int i = 0; i <= db; ++i) a[da - db + i] = (a[da - db + i] + q - c * b[i] % q) % q;
    }
    std::swap(a, b);
  }
  int da = poly_degree(a);
  std::uint64_t inv = invmod(a[da], q);
  for (auto& c : a) c = c * inv % q;
  a.resize(da + 1);
  return a;
}

// Monic gcd(x^q - x, f).
std::vector<std::uint64_t> split_part(const WeierstrassModel& m, std::uint64_t q) {
  CubicRing R{q, monic_cubic(m, q)};
  Poly3 result{1, 0, 0}, base{0, 1, 0};
  for (std::uint64_t e = q; e; e >>= 1) {
    if (e & 1) result = R.mul(result, base);
    base = R.mul(base, base);
  }
  result[1] = (result[1] + q - 1) % q;
  std::vector<std::uint64_t> f = {R.f[0], R.f[1], R.f[2], 1};
  std::vector<std::uint64_t> h = {result[0], result[1], result[2]};
  return poly_gcd(f, h, q);
}

void require_odd_good(const WeierstrassModel& m, std::uint64_t q) {
  if (q < 3 || q % 2 == 0) fail(ErrorCode::kInvalidArgument, "q must be an odd prime");
  if (divides(q, m.disc)) {
    fail(ErrorCode::kBadReduction, "q = " + std::to_string(q) + " divides the discriminant");
  }
}

}  // namespace

int two_division_root_count(const WeierstrassModel& m, std::uint64_t q) {
  require_odd_good(m, q);
  return static_cast<int>(split_part(m, q).size()) - 1;
}

bool two_torsion_point_halves(const WeierstrassModel& m, std::uint64_t q) {
  require_odd_good(m, q);
  auto g = split_part(m, q);
  if (g.size() != 2) fail(ErrorCode::kWrongTorsionShape, "expected exactly one root mod q");
  // Root x0 of the monic cubic; X = 4x0 on W^2 = X^3 + b2 X^2 + 8 b4 X + 16 b6.
  std::uint64_t x0 = (q - g[0]) % q;
  std::uint64_t X0 = 4 * x0 % q;
  std::uint64_t b2 = reduce(m.b2, q), b4 = reduce(m.b4, q);
  // Translate the root to the origin: W^2 = T(T^2 + aT + b).
  std::uint64_t a = (3 * X0 + b2) % q;
  std::uint64_t b = (3 * X0 % q * X0 % q + 2 * b2 % q * X0 % q + 8 * b4 % q) % q;
  // (0,0) = 2P iff x(P)^2 = b and 2 x(P) + a is a nonzero square.
  if (powmod(b, (q - 1) / 2, q) != 1) return false;
  std::uint64_t s = sqrtmod(b, q);
  for (std::uint64_t x : {s, (q - s) % q}) {
    std::uint64_t t = (2 * x + a) % q;
    if (t != 0 && powmod(t, (q - 1) / 2, q) == 1) return true;
  }
  return false;
}

LocalData local_two_structure(const WeierstrassModel& m, std::uint64_t q, std::int64_t aq) {
  require_odd_good(m, q);
  LocalData d;
  d.q = q;
  d.a = aq;
  d.N = static_cast<std::uint64_t>(static_cast<std::int64_t>(q) + 1 - aq);
  d.two_part = ord2_u64(d.N);
  d.two_torsion_count = 1 + two_division_root_count(m, q);
  d.four_torsion_cyclic = d.two_torsion_count == 2 && !two_torsion_point_halves(m, q);
  return d;
}

LocalData local_two_structure(const WeierstrassModel& m, std::uint64_t q) {
  return local_two_structure(m, q, a_p(m, q));
}

Lemma21Result lemma21_check(const WeierstrassModel& m, int rational_two_torsion,
                            const WeierstrassModel* isogenous, std::uint64_t q) {
  require_odd_good(m, q);
  Lemma21Result r;
  r.q = q;
  if (rational_two_torsion == 1) {
    r.branch = "i";
    // E(F_q)[2] = 0 read off the group order; degree 3 read off the cubic.
    std::uint64_t N = static_cast<std::uint64_t>(static_cast<std::int64_t>(q) + 1 - a_p(m, q));
    r.group_side = (N % 2) == 1;
    r.field_side = two_division_root_count(m, q) == 0;
  } else if (rational_two_torsion == 2) {
    if (isogenous == nullptr) fail(ErrorCode::kInvalidArgument, "branch (ii) needs the isogenous curve");
    require_odd_good(*isogenous, q);
    r.branch = "ii";
    LocalData d = local_two_structure(m, q);
    r.group_side = d.four_torsion_cyclic;
    r.field_side = two_division_root_count(m, q) == 1 && two_division_root_count(*isogenous, q) == 1;
  } else {
    fail(ErrorCode::kWrongTorsionShape, "the 2-torsion test needs E(Q)[2] of order 1 or 2");
  }
  r.agree = r.group_side == r.field_side;
  return r;
}

Lemma21Result lemma21_check(const WeierstrassModel& m, std::uint64_t q) {
  int t = rational_two_torsion_order(m);
  if (t == 2) {
    WeierstrassModel iso = two_isogenous_curve(m);
    return lemma21_check(m, t, &iso, q);
  }
  return lemma21_check(m, t, nullptr, q);
}

}  // namespace ltwist
