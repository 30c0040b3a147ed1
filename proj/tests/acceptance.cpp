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


// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <memory>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "arith.hpp"
#include "commands.hpp"
#include "errors.hpp"
#include "io.hpp"
#include "modsym.hpp"
#include "prime_sets.hpp"
#include "rationalize.hpp"
#include "verify.hpp"

using namespace ltwist;

namespace {

const Precision kPrec(192, -30);

std::map<std::string, std::unique_ptr<CurveContext>> g_contexts;

CurveContext& ctx(const std::string& label) {
  auto& slot = g_contexts[label];
  if (!slot) slot = std::make_unique<CurveContext>(resolve_curve(label, builtin_curves()));
  return *slot;
}

struct Outcome {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      if (problems.size() < 5) problems.push_back(what);
    }
  }
};

std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

double rel_diff(const Real& a, const Real& b) {
  Real d = abs(a - b);
  Real s = abs(b);
  if (s.to_double() < 1) return d.to_double();
  return (d / s).to_double();
}

// 1. symbol identities, dual routes
Outcome identities() {
  Outcome o;
  std::size_t n = 0;
  double worst = 0;
  for (const char* label : {"11a1", "14a1"}) {
    auto& c = ctx(label);
    std::vector<std::int64_t> ms;
    for (std::int64_t m : {3, 5, 7, 13, 15, 21, 35})
      if (std::gcd(m, c.conductor()) == 1) ms.push_back(m);
    SymbolEngine eng(c, kPrec);
    for (const auto& r : verify_identities(eng, ms, 1e-20)) {
      ++n;
      worst = std::max(worst, r.residual);
      o.require(r.verdict == Verdict::kPass,
                std::string(label) + " " + r.identity + " m=" + std::to_string(r.m) + " residual " + fmt("%.3g", r.residual));
    }
  }
  o.require(n > 0, "no identity checks ran");
  o.detail = std::to_string(n) + " checks on 11a1, 14a1, max residual " + fmt("%.2g", worst);
  return o;
}

std::vector<std::int64_t> moduli_below(std::int64_t C, std::uint64_t bound, int max_r) {
  std::vector<std::int64_t> primes;
  for (auto p : primes_up_to(bound - 1))
    if (p > 2 && C % p != 0) primes.push_back(p);
  std::vector<std::int64_t> out;
  std::function<void(std::size_t, std::int64_t, int)> rec = [&](std::size_t start, std::int64_t m, int r) {
    if (r > 0) out.push_back(m);
    if (r == max_r) return;
    for (std::size_t i = start; i < primes.size(); ++i) rec(i + 1, m * primes[i], r + 1);
  };
  rec(0, 1, 0);
  std::sort(out.begin(), out.end());
  return out;
}

// 2. integrality of the character sums
Outcome integrality() {
  Outcome o;
  std::size_t n = 0, parity = 0;
  bool negative_disc_seen = false;
  for (const char* label : {"11a1", "14a1"}) {
    auto& c = ctx(label);
    negative_disc_seen |= c.model().disc < 0;
    SymbolEngine eng(c, Precision(128, -20));
    for (std::int64_t m : moduli_below(c.conductor(), 60, 3)) {
      ++n;
      std::string tag = std::string(label) + " m=" + std::to_string(m);
      try {
        auto rep = integrality_report(eng, m);
        o.require(rep.divisible, tag + " not divisible");
        o.require(rep.even_residual < 1e-6 && rep.odd_residual < 1e-6, tag + " residual");
        o.require(rep.routes_agree, tag + " routes disagree");
        if (c.model().disc < 0) {
          o.require(rep.parity_checked && rep.parity_equal, tag + " parity");
          ++parity;
        }
      } catch (const Error& e) {
        o.require(false, tag + " " + error_code_name(e.code()));
      }
    }
  }
  o.require(negative_disc_seen, "no curve with negative discriminant");
  o.detail = std::to_string(n) + " moduli (r <= 3, primes < 60) on 11a1, 14a1, parity checked on " +
             std::to_string(parity);
  return o;
}

std::map<std::string, std::vector<TwistReport>> g_sweeps;

// 3. lower bound sweep, |M| <= 499
Outcome lower_bound() {
  Outcome o;
  std::size_t pass = 0, vac = 0;
  for (const char* label : {"11a1", "14a1", "34a1", "37b1"}) {
    SymbolEngine eng(ctx(label), kPrec);
    auto reps = verify_lower_bound(eng, 499, {});
    for (const auto& r : reps) {
      std::string tag = std::string(label) + " M=" + std::to_string(r.twist.M);
      o.require(r.verdict != Verdict::kFail, tag + " FAIL");
      o.require(r.error.empty(), tag + " " + r.error);
      if (r.verdict == Verdict::kPass) ++pass;
      if (r.verdict == Verdict::kVacuous) ++vac;
    }
    g_sweeps[label] = std::move(reps);
  }
  o.detail = "11a1, 14a1, 34a1, 37b1: " + std::to_string(pass) + " PASS, " + std::to_string(vac) +
             " VACUOUS (L = 0), 0 FAIL required";
  return o;
}

// 4. exact valuation where the hypotheses hold
Outcome exact_valuation() {
  Outcome o;
  std::vector<std::string> eligible;
  std::size_t n = 0;
  for (const auto& rec : builtin_curves()) {
    auto& c = ctx(rec.label);
    HypothesisLedger h;
    try {
      h = check_hypotheses(c, kPrec);
    } catch (const Error& e) {
      o.require(false, rec.label + " ledger " + error_code_name(e.code()));
      continue;
    }
    if (!h.exact_valuation_eligible) continue;
    eligible.push_back(rec.label);
    SymbolEngine eng(c, kPrec);
    auto S = sieve_S(c, 200).primes;
    for (int r : {1, 2, 3}) {
      auto expected = sample_twists_from_S(S, r, 10).size();
      auto reps = verify_exact_valuation(eng, r, 10, 200, {});
      o.require(reps.size() == expected, rec.label + " r=" + std::to_string(r) + " sample count");
      for (const auto& t : reps) {
        ++n;
        o.require(t.verdict == Verdict::kPass, rec.label + " M=" + std::to_string(t.twist.M) + " " +
                                                  verdict_name(t.verdict) + " " + t.error + t.note);
      }
    }
  }
  o.require(!eligible.empty(), "no eligible curve");
  std::string names;
  for (const auto& l : eligible) names += (names.empty() ? "" : ",") + l;
  o.detail = std::to_string(n) + " twists on " + names + ", ord2 = r - 1 required";
  return o;
}

// 5. the two vanishing examples
Outcome counterexamples() {
  Outcome o;
  auto recs = reproduce_counterexamples([](const std::string& l) { return &ctx(l); }, kPrec);
  o.require(recs.size() == 2, "expected two records");
  for (const auto& r : recs) {
    o.require(r.verdict == Verdict::kPass && r.zero, r.label + " M=" + std::to_string(r.M) + " " + r.note);
    o.detail += (o.detail.empty() ? "" : ", ") + r.label + "^(" + std::to_string(r.M) + ") value " + r.rational;
  }
  return o;
}

// 6. local 2-torsion criterion, both branches
Outcome lemma21() {
  Outcome o;
  std::size_t curves = 0, primes = 0, branch_i = 0, branch_ii = 0;
  for (const auto& rec : builtin_curves()) {
    auto sw = verify_lemma21(ctx(rec.label), 200);
    if (!sw.applicable) continue;
    ++curves;
    primes += sw.results.size();
    (sw.rational_two_torsion == 1 ? branch_i : branch_ii)++;
    o.require(sw.results.size() >= 200, rec.label + " fewer than 200 primes");
    o.require(sw.agreements == sw.results.size(), rec.label + " disagreement");
  }
  o.require(branch_i > 0 && branch_ii > 0, "both branches needed");
  o.detail = std::to_string(curves) + " curves (" + std::to_string(branch_i) + " trivial, " +
             std::to_string(branch_ii) + " Z/2), " + std::to_string(primes) + " primes, all agree";
  return o;
}

// 7. density statements up to 1e5
Outcome density_statements() {
  Outcome o;
  auto s11 = sieve_S(ctx("11a1"), 100000);
  o.require(s11.report.rational_two_torsion == 1 && s11.report.count > 0, "11a1: S empty");
  std::string rational_iso;
  std::uint64_t four_cyclic = 0;
  for (const auto& rec : builtin_curves()) {
    auto& c = ctx(rec.label);
    if (c.two_torsion() != 2 || !c.isogenous()) continue;
    if (field_class(c.isogenous()->disc).kind != FieldKind::kRationals) continue;
    auto s = sieve_S(c, 100000);
    o.require(s.report.cor_four_applies && !s.report.cor_four_predicts_positive,
              rec.label + ": prediction not 'empty'");
    o.require(s.report.four_cyclic_count == 0 && s.report.consistent, rec.label + ": family not empty");
    rational_iso = rec.label;
    four_cyclic = s.report.four_cyclic_count;
    break;
  }
  o.require(!rational_iso.empty(), "no curve with F' = Q in the table");
  o.detail = "11a1 |S cap [2,1e5]| = " + std::to_string(s11.report.count) + "; " + rational_iso +
             " (F' = Q) E(F_q)[4] = Z/2 count " + std::to_string(four_cyclic);
  return o;
}

// 8. numerical regression
Outcome numerics() {
  Outcome o;
  double worst_stab = 0, worst_route = 0;
  const Precision hi = kPrec.raised(64);
  for (const char* label : {"11a1", "14a1", "34a1", "37b1", "19a1"}) {
    auto& c = ctx(label);
    const auto& a = c.periods(kPrec);
    const auto& b = c.periods(hi);
    for (auto d : {rel_diff(a.omega_plus, b.omega_plus), rel_diff(a.omega_minus, b.omega_minus),
                   rel_diff(c.l_value(kPrec), c.l_value(hi))}) {
      worst_stab = std::max(worst_stab, d);
    }
    for (std::int64_t M : admissible_twists(30, c.conductor())) {
      auto x = twisted_l_value(c, M, kPrec, {false, false});
      auto y = twisted_l_value(c, M, hi, {false, false});
      worst_stab = std::max(worst_stab, rel_diff(x.value, y.value));
    }
    auto p1 = period_integral(c, 2, 5, kPrec);
    auto p2 = period_integral(c, 2, 5, hi);
    worst_stab = std::max({worst_stab, rel_diff(p1.re, p2.re), rel_diff(p1.im, p2.im)});
  }
  o.require(worst_stab < 1e-25, "stability " + fmt("%.3g", worst_stab));

  std::size_t pairs = 0;
  for (const char* label : {"11a1", "14a1", "34a1", "37b1"}) {
    auto& c = ctx(label);
    auto tw = admissible_twists(200, c.conductor());
    for (std::size_t i = 0; i < tw.size() && i < 25; ++i) {
      auto t = twisted_l_value(c, tw[i], kPrec, {true, false});
      if (!t.cross_value) {
        o.require(false, std::string(label) + " M=" + std::to_string(tw[i]) + " no cross value");
        continue;
      }
      double d = rel_diff(t.value, *t.cross_value);
      worst_route = std::max(worst_route, d);
      ++pairs;
    }
  }
  o.require(pairs >= 100, "only " + std::to_string(pairs) + " pairs");
  o.require(worst_route < 1e-20, "route difference " + fmt("%.3g", worst_route));

  std::size_t aps = 0;
  for (auto& [label, c] : g_contexts) {
    auto snap = c->ap_snapshot();
    for (auto [p, a] : snap.entries()) {
      ++aps;
      o.require(static_cast<double>(a) * static_cast<double>(a) <= 4.0 * static_cast<double>(p),
                label + " a_" + std::to_string(p));
    }
  }
  o.detail = "+64 bits max diff " + fmt("%.2g", worst_stab) + "; " + std::to_string(pairs) +
             " twisted pairs max diff " + fmt("%.2g", worst_route) + "; Hasse on " + std::to_string(aps) + " a_p";
  return o;
}

// 9. ord2 through both routes, period ratios
Outcome reduction_step() {
  Outcome o;
  std::size_t n = 0;
  double worst = 0;
  for (const auto& [label, reps] : g_sweeps) {
    for (const auto& r : reps) {
      if (!r.value || r.value->is_zero) continue;
      ++n;
      const auto& v = *r.value;
      std::string tag = label + " M=" + std::to_string(r.twist.M);
      o.require(v.symbol_ord2.has_value() && v.ord2.has_value() && *v.symbol_ord2 == *v.ord2, tag + " ord2 routes");
      o.require(v.routes_agree, tag + " routes");
      o.require(v.period_ratio_residual < 1e-20, tag + " period ratio " + fmt("%.3g", v.period_ratio_residual));
      worst = std::max(worst, v.period_ratio_residual);
    }
  }
  o.require(n > 0, "no nonzero sweep cases (run criterion 3 first)");
  o.detail = std::to_string(n) + " nonzero cases, period ratio max distance to 2^k " + fmt("%.2g", worst);
  return o;
}

// 10. reports independent of the worker count
Outcome determinism() {
  Outcome o;
  struct Run {
    const char* command;
    const char* curve;
    std::function<void(RunConfig&)> tweak;
  };
  const std::vector<Run> runs = {
      {"verify lower-bound", "14a1", [](RunConfig& c) { c.max_m = 150; }},
      {"integrality", "11a1", [](RunConfig& c) { c.prime_bound = 30; c.r_values = {1, 2, 3}; }},
      {"verify exact-valuation", "14a1", [](RunConfig& c) { c.r_values = {1, 2}; c.samples = 4; }},
      {"verify lemmas", "11a1", [](RunConfig& c) { c.prime_bound = 30; }},
      {"sieve-s", "37b1", [](RunConfig& c) { c.prime_bound = 20000; }},
  };
  for (const auto& run : runs) {
    std::string first;
    for (int jobs : {1, 4, 8}) {
      Session s;
      RunConfig cfg;
      run.tweak(cfg);
      cfg.jobs = jobs;
      std::string dump = strip_timing(s.run(run.command, cfg, std::string(run.curve)).report).dump();
      if (jobs == 1) first = dump;
      else o.require(dump == first, std::string(run.command) + " differs at jobs=" + std::to_string(jobs));
    }
  }
  o.detail = std::to_string(runs.size()) + " commands x jobs {1,4,8}";
  return o;
}

}  // namespace

int main() {
  struct Item {
    int id;
    const char* name;
    Outcome (*fn)();
  };
  const Item items[] = {
      {1, "symbol identities", identities},
      {2, "integrality", integrality},
      {3, "lower bound sweep", lower_bound},
      {4, "exact valuation", exact_valuation},
      {5, "vanishing examples", counterexamples},
      {6, "local 2-torsion criterion", lemma21},
      {7, "density statements", density_statements},
      {8, "numerical regression", numerics},
      {9, "ord2 route consistency", reduction_step},
      {10, "determinism", determinism},
  };
  int failed = 0;
  for (const auto& it : items) {
    auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it.fn();
    } catch (const std::exception& e) {
      o.pass = false;
      o.problems.push_back(std::string("exception: ") + e.what());
    }
    double s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s  %2d %-26s %s (%.1fs)\n", o.pass ? "PASS" : "FAIL", it.id, it.name, o.detail.c_str(), s);
    for (const auto& p : o.problems) std::printf("        %s\n", p.c_str());
    std::fflush(stdout);
    failed += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(items)) - failed, std::size(items));
  return failed ? 1 : 0;
}
