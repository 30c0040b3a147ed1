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

// Periods, central L-values of E and its quadratic twists, Gauss sums and
// individual modular-symbol period integrals.

#ifndef LTWIST_ANALYTIC_HPP_
#define LTWIST_ANALYTIC_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "curve.hpp"
#include "finite_field.hpp"
#include "real.hpp"

namespace ltwist {

struct Precision {
  int bits = 192;
  int target_exp10 = -30;  // target_abs_err = 10^target_exp10

  Precision() = default;
  Precision(int b, int e) : bits(b), target_exp10(e) {}
  // Throws InvalidArgument unless target_abs_err >= 2^(16 - bits).
  void validate() const;
  double target() const;
  Real target_real() const;
  Precision raised(int extra_bits) const { return Precision(bits + extra_bits, target_exp10); }
  bool operator<(const Precision& o) const {
    return std::tie(bits, target_exp10) < std::tie(o.bits, o.target_exp10);
  }
  bool operator==(const Precision& o) const { return bits == o.bits && target_exp10 == o.target_exp10; }
};

enum class LatticeShape { kRectangular, kRhombic };

struct PeriodData {
  Real omega_plus, omega_minus;
  int delta = 1;
  LatticeShape shape = LatticeShape::kRhombic;
  Real c_inf, c_inf_minus;  // delta * Omega^+-
  Real c_f, c_f_minus;      // divided by the Manin constant (taken as 1)
};

PeriodData periods(const WeierstrassModel& model, const Precision& prec);

// Smallest n with (X/2pi)(n + X) exp(-2 pi n / X) < err.
std::uint64_t series_length(double X, double err);

// (n | d) for odd squarefree d > 0, tabulated over residues mod d.
class JacobiCharacter {
 public:
  explicit JacobiCharacter(std::int64_t d);
  std::int64_t modulus() const { return d_; }
  int operator()(std::uint64_t n) const { return table_[n % static_cast<std::uint64_t>(d_)]; }

 private:
  std::int64_t d_;
  std::vector<std::int8_t> table_;
};

// Sum_{n <= N} a_n chi(n) / n * exp(-2 pi n / X); chi may be null.
Real exp_series(const std::vector<std::int64_t>& an, const JacobiCharacter* chi, const Real& X,
                std::uint64_t N, mpfr_prec_t prec);

struct RootNumberProbe {
  int w = 0;
  double margin = 0;        // |V_w(1) - V_w(1.2)|
  double other_margin = 0;  // same for -w
};

struct TwistedLValue {
  std::int64_t M = 0;
  int w = 0;
  Real value;
  std::optional<Real> cross_value;  // l_value of the twisted minimal model
};

struct TwistOptions {
  bool cross_check = true;
  // Re-evaluate through the functional equation at t = 1.2.
  bool split_check = true;
};

// Per-curve engine: coefficient cache and memoized analytic values. Safe to
// share across threads.
class CurveContext {
 public:
  explicit CurveContext(CurveRecord record, int jobs = 1);

  const CurveRecord& record() const { return record_; }
  const WeierstrassModel& model() const { return record_.model; }
  const std::string& label() const { return record_.label; }
  // Throws InvalidArgument when the conductor is unknown.
  std::int64_t conductor() const;
  const std::vector<std::uint64_t>& bad_primes() const { return bad_; }
  int two_torsion() const { return two_torsion_; }
  // E' for curves with E(Q)[2] = Z/2, else null.
  const WeierstrassModel* isogenous() const { return isogenous_ ? &*isogenous_ : nullptr; }
  int jobs() const { return jobs_; }

  std::int64_t ap(std::uint64_t p);
  // Coefficients a_0..a_n (a_0 = 0), possibly longer.
  std::shared_ptr<const std::vector<std::int64_t>> coefficients(std::uint64_t n);
  void seed_ap(std::uint64_t p, std::int64_t ap);
  ApTable ap_snapshot();

  const PeriodData& periods(const Precision& prec);
  RootNumberProbe root_number(const Precision& prec);
  Real l_value(const Precision& prec);
  // Memoized per (M, precision); see twisted_l_value.
  TwistedLValue twisted(std::int64_t M, const Precision& prec, const TwistOptions& opts);

 private:
  CurveRecord record_;
  int jobs_;
  std::vector<std::uint64_t> bad_;
  int two_torsion_;
  std::optional<WeierstrassModel> isogenous_;

  std::mutex mu_;
  ApTable aps_;
  std::shared_ptr<const std::vector<std::int64_t>> an_;
  std::map<Precision, std::unique_ptr<PeriodData>> periods_;
  std::map<Precision, RootNumberProbe> roots_;
  std::map<Precision, Real> lvalues_;
  std::map<std::pair<std::int64_t, Precision>, TwistedLValue> twisted_;
};

// Root number by comparing the functional-equation pairing at t = 1 and
// t = 1.2 for both signs. `chi` twists the coefficients; `level` is the
// conductor of the twisted series.
RootNumberProbe probe_root_number(const std::vector<std::int64_t>& an, const JacobiCharacter* chi,
                                  const Real& sqrt_level, const Precision& prec);

// L(E^(M), 1) from the series with coefficients a_n chi_M(n).
TwistedLValue twisted_l_value(CurveContext& ctx, std::int64_t M, const Precision& prec,
                              const TwistOptions& opts = {});
// L(E, 1) of an arbitrary curve from its own point counts.
Real standalone_l_value(const WeierstrassModel& model, std::int64_t conductor, const Precision& prec,
                        int* w_out = nullptr);

// Period integral <{0, k/m}, f> for gcd(k, m) = 1, gcd(m, C) = 1, 0 < k < m.
Complex period_integral(CurveContext& ctx, std::int64_t k, std::int64_t m, const Precision& prec);

// g(chi_d) = sum_{k mod d} (k|d) e^{2 pi i k / d}, by direct summation.
Complex gauss_sum(std::int64_t d, const Precision& prec);

}  // namespace ltwist

#endif  // LTWIST_ANALYTIC_HPP_
