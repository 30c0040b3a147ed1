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

#include "commands.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>

#include "arith.hpp"
#include "errors.hpp"

namespace ltwist {

namespace {

using Clock = std::chrono::steady_clock;

Json ord2_json(const std::optional<int>& v) { return v ? Json(*v) : Json("inf"); }

Json precision_json(const Precision& p) { return Json{{"bits", p.bits}, {"target_exp10", p.target_exp10}}; }

Json summary_of(const std::vector<Verdict>& vs) {
  std::map<std::string, int> counts;
  for (auto v : {Verdict::kPass, Verdict::kFail, Verdict::kVacuous, Verdict::kSkipped, Verdict::kWarn}) {
    counts[verdict_name(v)] = 0;
  }
  for (auto v : vs) ++counts[verdict_name(v)];
  Json j;
  for (const char* k : {"PASS", "FAIL", "VACUOUS", "SKIPPED", "WARN"}) j[k] = counts[k];
  j["total"] = vs.size();
  return j;
}

std::vector<std::int64_t> default_identity_moduli() { return {3, 5, 7, 13, 15, 21, 35}; }

// Odd squarefree m > 1 coprime to C, prime factors < prime_bound, r(m) <= max_r,
// ascending.
std::vector<std::int64_t> symbol_moduli(std::int64_t C, std::uint64_t prime_bound, int max_r) {
  std::vector<std::int64_t> primes;
  for (auto p : primes_up_to(prime_bound - 1)) {
    if (p > 2 && C % p != 0) primes.push_back(p);
  }
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

std::vector<std::int64_t> coprime(std::vector<std::int64_t> ms, std::int64_t C) {
  ms.erase(std::remove_if(ms.begin(), ms.end(), [C](std::int64_t m) { return gcd_i64(m, C) != 1; }), ms.end());
  return ms;
}

Json lattice_json(const PeriodData& pd, const Complex& z) {
  Json j;
  try {
    LatticeCoords lc = lattice_coordinates(pd, z);
    j["s"] = lc.s.get_str();
    j["t"] = lc.t.get_str();
    j["same_parity"] = lc.same_parity;
  } catch (const Error& e) {
    j["error"] = error_code_name(e.code());
  }
  return j;
}

Json symbol_json(const SymbolSum& s, const PeriodData& pd) {
  Json j;
  j["m"] = s.m;
  j["character"] = s.kind == CharacterKind::kPrincipal ? "principal" : "quadratic";
  j["d"] = s.d;
  j["re"] = real_str(s.value.re);
  j["im"] = real_str(s.value.im);
  j["re_over_c_f"] = real_str(s.re_norm);
  j["im_over_c_f_minus"] = real_str(s.im_norm);
  if (s.direct) {
    j["direct_re"] = real_str(s.direct->re);
    j["direct_im"] = real_str(s.direct->im);
    j["route_residual"] = s.residual;
  }
  j["lattice"] = lattice_json(pd, s.value);
  return j;
}

Json periods_json(const PeriodData& pd) {
  Json j;
  j["omega_plus"] = real_str(pd.omega_plus);
  j["omega_minus"] = real_str(pd.omega_minus);
  j["lattice"] = pd.shape == LatticeShape::kRectangular ? "RECTANGULAR" : "RHOMBIC";
  j["delta"] = pd.delta;
  j["c_inf"] = real_str(pd.c_inf);
  j["c_inf_minus"] = real_str(pd.c_inf_minus);
  return j;
}

Json density_json(const DensityReport& r) {
  Json j;
  j["bound"] = r.bound;
  j["prime_count"] = r.prime_count;
  j["good_odd_count"] = r.good_odd_count;
  j["count"] = r.count;
  j["fraction"] = r.fraction;
  j["rational_two_torsion"] = r.rational_two_torsion;
  j["F"] = r.F.to_string();
  j["F_prime"] = r.F_prime ? r.F_prime->to_string() : "none";
  j["four_cyclic_count"] = r.four_cyclic_count;
  j["four_cyclic_one_mod_four_count"] = r.four_cyclic_one_mod_four_count;
  j["trivial_two_one_mod_four_count"] = r.trivial_two_one_mod_four_count;
  j["density_trivial_torsion_applies"] = r.cor_trivial_applies;
  j["density_z2_applies"] = r.cor_four_applies;
  j["density_z2_predicts_positive"] = r.cor_four_predicts_positive;
  j["density_z2_mod4_applies"] = r.cor_four_mod4_applies;
  j["consistent"] = r.consistent;
  j["verdict"] = r.consistent ? "PASS" : "FAIL";
  j["notes"] = r.notes;
  return j;
}

Json ledger_json(const HypothesisLedger& h) {
  Json j;
  j["optimal"] = h.optimal;
  j["disc_negative"] = h.disc_negative;
  j["rational_two_torsion"] = h.rational_two_torsion;
  j["two_torsion_z2"] = h.two_torsion_z2;
  j["manin_constant_odd"] = h.manin_odd;
  j["l_ratio"] = h.l_ratio;
  j["ord2_l_ratio"] = ord2_json(h.ord2_l_ratio);
  j["ord2_l_ratio_is_minus_one"] = h.ord2_minus_one;
  j["nonvanishing_condition"] = h.nonvanishing_condition;
  j["s_bound"] = h.s_bound;
  j["s_count"] = h.s_count;
  j["s_nonempty"] = h.s_nonempty;
  j["exact_valuation_eligible"] = h.exact_valuation_eligible;
  j["nonvanishing_eligible"] = h.nonvanishing_eligible;
  return j;
}

Json lemma_json(const LemmaRecord& r, const char* kind) {
  Json j;
  j["lemma"] = kind;
  j["m"] = r.m;
  j["r"] = r.r;
  j["value"] = r.value;
  j["ord2"] = ord2_json(r.ord2);
  j["bound"] = r.bound;
  j["strict"] = r.strict;
  j["verdict"] = verdict_name(r.verdict);
  j["note"] = r.note;
  return j;
}

bool bad_verdict(Verdict v, const std::string& error) {
  return v == Verdict::kFail || (v == Verdict::kSkipped && !error.empty());
}

std::string context_key(const CurveRecord& rec, int jobs) {
  return rec.label + "|" + rec.model.to_string() + "|" + std::to_string(rec.conductor) + "|" + std::to_string(jobs);
}

}  // namespace

Json algebraic_json(const AlgebraicLValue& v) {
  Json j;
  j["w"] = v.w;
  j["l_value"] = real_str(v.l_value);
  j["c_inf_twist"] = real_str(v.c_inf_twist);
  j["normalized"] = real_str(v.normalized);
  j["rational"] = v.rational.get_str();
  j["ord2"] = ord2_json(v.ord2);
  j["is_zero"] = v.is_zero;
  j["route"] = v.route;
  j["torsion_bound"] = v.torsion;
  j["den_bound"] = v.den_bound.get_str();
  j["escalated"] = v.escalated;
  if (v.symbol_ord2 || v.symbol_rational) {
    j["symbol_rational"] = v.symbol_rational ? v.symbol_rational->get_str() : "";
    j["symbol_ord2"] = ord2_json(v.symbol_ord2);
  }
  j["routes_agree"] = v.routes_agree;
  j["period_ratio"] = real_str(v.period_ratio);
  j["period_ratio_log2"] = v.period_ratio_log2;
  j["period_ratio_residual"] = v.period_ratio_residual;
  return j;
}

Json twist_report_json(const TwistReport& rep) {
  Json j;
  j["M"] = rep.twist.M;
  j["factorization"] = rep.twist.factorization();
  j["r"] = rep.twist.r();
  j["t"] = rep.t;
  j["bound"] = rep.bound;
  j["verdict"] = verdict_name(rep.verdict);
  if (rep.value) {
    j.update(algebraic_json(*rep.value));
    j["provenance"] = Json{{"route", rep.value->route},
                           {"den_bound", rep.value->den_bound.get_str()},
                           {"torsion_bound", rep.value->torsion},
                           {"escalated", rep.value->escalated}};
  }
  if (!rep.error.empty()) j["error"] = rep.error;
  if (!rep.note.empty()) j["note"] = rep.note;
  j["seconds"] = rep.seconds;
  return j;
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names = {
      "curve-info",         "ap",
      "lvalue",             "twist",
      "msym",               "integrality",
      "sieve-s",            "density",
      "verify lower-bound", "verify exact-valuation",
      "verify identities",  "verify lemma21",
      "verify counterexamples", "verify lemmas",
      "nonvanish"};
  return names;
}

Session::Session() : table_(builtin_curves()) {}

void Session::load_table(const std::string& path) {
  auto t = parse_curve_table(read_file(path));
  std::lock_guard<std::mutex> lock(mu_);
  table_ = std::move(t);
  contexts_.clear();
}

CurveContext& Session::context(const CurveRecord& rec, int jobs, const std::string& cache_dir) {
  std::lock_guard<std::mutex> lock(mu_);
  auto key = context_key(rec, jobs);
  auto it = contexts_.find(key);
  if (it != contexts_.end()) return *it->second;
  auto ctx = std::make_unique<CurveContext>(rec, jobs);
  if (!cache_dir.empty()) {
    for (auto [p, a] : load_ap_cache(ap_cache_path(cache_dir, rec.label))) ctx->seed_ap(p, a);
  }
  return *contexts_.emplace(key, std::move(ctx)).first->second;
}

void Session::save_cache(CurveContext& ctx, const std::string& cache_dir) {
  if (cache_dir.empty()) return;
  save_ap_cache(ap_cache_path(cache_dir, ctx.label()), ctx.ap_snapshot());
}

CommandResult Session::run(const std::string& command, const RunConfig& cfg,
                           const std::optional<std::string>& curve) {
  cfg.validate();
  const auto& names = command_names();
  if (std::find(names.begin(), names.end(), command) == names.end()) {
    fail(ErrorCode::kInvalidArgument, "unknown command '" + command + "'");
  }
  CommandResult out;
  Json results = Json::array();
  const Precision prec = cfg.precision();
  VerifyOptions vopts;
  vopts.research = cfg.research;
  vopts.jobs = cfg.jobs;
  vopts.rational = cfg.rational();
  std::vector<Verdict> verdicts;
  bool errored = false;  // SKIPPED after a computation error
  Json extra = Json::object();

  if (command == "verify counterexamples") {
    auto find = [&](const std::string& label) -> CurveContext* {
      for (const auto& r : table_) {
        if (r.label == label) return &context(r, cfg.jobs, cfg.cache_dir);
      }
      return nullptr;
    };
    for (const auto& rec : reproduce_counterexamples(find, prec)) {
      Json j;
      j["label"] = rec.label;
      j["q"] = rec.q;
      j["M"] = rec.M;
      j["abs_normalized"] = rec.abs_normalized;
      j["rational"] = rec.rational;
      j["zero"] = rec.zero;
      j["other_conditions"] = rec.other_conditions;
      j["congruence_excluded"] = rec.congruence_excluded;
      j["in_s_reason"] = rec.in_s_reason;
      j["verdict"] = verdict_name(rec.verdict);
      if (!rec.note.empty()) j["note"] = rec.note;
      verdicts.push_back(rec.verdict);
      results.push_back(j);
    }
    for (const auto& r : table_) {
      if (r.label == "34a1" || r.label == "99c1") save_cache(context(r, cfg.jobs, cfg.cache_dir), cfg.cache_dir);
    }
    out.report = make_report(command, cfg, std::nullopt, results);
    out.report["summary"] = summary_of(verdicts);
    out.all_pass = std::none_of(verdicts.begin(), verdicts.end(), [](Verdict v) { return v == Verdict::kFail; });
    return out;
  }

  if (!curve) fail(ErrorCode::kInvalidArgument, command + " needs --curve");
  CurveRecord rec = resolve(*curve);
  CurveContext& ctx = context(rec, cfg.jobs, cfg.cache_dir);
  auto t0 = Clock::now();
  SymbolOptions sopts;
  sopts.twist = TwistOptions{true, true};
  bool has_conductor = rec.conductor > 0;

  if (command == "curve-info") {
    const WeierstrassModel& m = ctx.model();
    Json j;
    j["coefficients"] = m.to_string();
    j["b2"] = m.b2.get_str();
    j["b4"] = m.b4.get_str();
    j["b6"] = m.b6.get_str();
    j["b8"] = m.b8.get_str();
    j["c4"] = m.c4.get_str();
    j["c6"] = m.c6.get_str();
    j["disc"] = m.disc.get_str();
    j["j"] = m.j.get_str();
    j["minimal"] = abs(minimal_model(m).disc) == abs(m.disc);
    j["real_components"] = real_components(m);
    j["rational_two_torsion"] = ctx.two_torsion();
    j["field_F"] = field_class(m.disc).to_string();
    if (ctx.isogenous()) {
      j["isogenous"] = ctx.isogenous()->to_string();
      j["field_F_prime"] = field_class(ctx.isogenous()->disc).to_string();
    }
    if (has_conductor) {
      Json bad = Json::array();
      for (auto p : ctx.bad_primes()) bad.push_back(p);
      j["bad_primes"] = bad;
      j["torsion_bound"] = torsion_bound(m, rec.conductor);
      j["periods"] = periods_json(ctx.periods(prec));
      RootNumberProbe rn = ctx.root_number(prec);
      j["root_number"] = rn.w;
      HypothesisLedger h = check_hypotheses(ctx, prec, cfg.prime_bound);
      j["hypotheses"] = ledger_json(h);
    }
    results.push_back(j);
  } else if (command == "ap") {
    for (auto p : primes_up_to(cfg.prime_bound)) {
      Json j;
      j["p"] = p;
      std::int64_t a = ctx.ap(p);
      j["a_p"] = a;
      bool good = rec.conductor > 0 ? rec.conductor % p != 0 : mpz_divisible_ui_p(rec.model.disc.get_mpz_t(), p) == 0;
      j["good"] = good;
      if (good) {
        j["N_p"] = static_cast<std::int64_t>(p) + 1 - a;
        j["hasse_ok"] = static_cast<double>(a) * a <= 4.0 * p;
        if (!j["hasse_ok"].get<bool>()) verdicts.push_back(Verdict::kFail);
      }
      results.push_back(j);
    }
  } else if (command == "lvalue") {
    BaseLValue b = base_algebraic_l_value(ctx, prec, cfg.rational());
    RootNumberProbe rn = ctx.root_number(prec);
    Json j;
    j["w"] = b.w;
    j["root_number_margin"] = rn.margin;
    j["other_sign_margin"] = rn.other_margin;
    j["l_value"] = real_str(b.l_value);
    j["c_inf"] = real_str(ctx.periods(prec).c_inf);
    j["normalized"] = real_str(b.normalized);
    j["rational"] = b.rational.get_str();
    j["ord2"] = ord2_json(b.ord2);
    j["torsion_bound"] = b.torsion;
    results.push_back(j);
  } else if (command == "twist") {
    if (!cfg.twist) fail(ErrorCode::kInvalidArgument, "twist needs --twist M");
    SymbolEngine eng(ctx, prec, sopts);
    TwistDescriptor tw = make_twist(*cfg.twist, ctx.conductor());
    AlgebraicLValue v = algebraic_l_value(eng, *cfg.twist, cfg.rational());
    TwistedLValue tl = ctx.twisted(*cfg.twist, prec, sopts.twist);
    Json j;
    j["M"] = tw.M;
    j["factorization"] = tw.factorization();
    j["t"] = t_of(ctx, tw);
    j.update(algebraic_json(v));
    if (tl.cross_value) j["cross_l_value"] = real_str(*tl.cross_value);
    results.push_back(j);
  } else if (command == "msym") {
    SymbolEngine eng(ctx, prec, SymbolOptions{});
    auto ms = cfg.moduli.empty() ? coprime(default_identity_moduli(), ctx.conductor()) : cfg.moduli;
    const PeriodData& pd = eng.periods();
    for (auto m : ms) {
      check_symbol_modulus(m, ctx.conductor());
      results.push_back(symbol_json(bracket_principal(eng, m, true), pd));
      for (auto d : divisors_of_squarefree(odd_prime_factors(m))) {
        if (d > 1) results.push_back(symbol_json(bracket_quadratic(eng, m, d, true), pd));
      }
    }
  } else if (command == "integrality") {
    SymbolEngine eng(ctx, prec, SymbolOptions{});
    int max_r = *std::max_element(cfg.r_values.begin(), cfg.r_values.end());
    auto ms = cfg.moduli.empty() ? symbol_moduli(ctx.conductor(), cfg.prime_bound, max_r) : cfg.moduli;
    std::vector<Json> rows(ms.size());
    std::vector<Verdict> vs(ms.size(), Verdict::kPass);
    parallel_for(ms.size(), cfg.jobs, [&](std::size_t i) {
      Json j;
      j["m"] = ms[i];
      try {
        IntegralityReport r = integrality_report(eng, ms[i]);
        j["r"] = r.r;
        j["even_sum"] = r.even_sum.get_str();
        j["odd_sum"] = r.odd_sum.get_str();
        j["even_residual"] = r.even_residual;
        j["odd_residual"] = r.odd_residual;
        j["divisible"] = r.divisible;
        j["psi"] = r.psi.get_str();
        j["psi_prime"] = r.psi_prime.get_str();
        j["parity_checked"] = r.parity_checked;
        j["parity_equal"] = r.parity_equal;
        Json routes = Json::array();
        for (auto rt : r.routes) routes.push_back(integrality_route_name(rt));
        j["routes"] = routes;
        if (r.star_psi) {
          j["star_psi"] = r.star_psi->get_str();
          j["star_psi_prime"] = r.star_psi_prime->get_str();
        }
        j["routes_agree"] = r.routes_agree;
        bool ok = r.divisible && r.parity_equal && r.routes_agree;
        vs[i] = ok ? Verdict::kPass : Verdict::kFail;
      } catch (const Error& e) {
        j["error"] = error_code_name(e.code());
        j["note"] = e.what();
        vs[i] = Verdict::kFail;
      }
      j["verdict"] = verdict_name(vs[i]);
      rows[i] = std::move(j);
    });
    for (auto& r : rows) results.push_back(std::move(r));
    verdicts = vs;
  } else if (command == "sieve-s" || command == "density") {
    SieveResult s = sieve_S(ctx, cfg.prime_bound);
    Json j = density_json(s.report);
    if (command == "sieve-s") j["primes"] = s.primes;
    verdicts.push_back(s.report.consistent ? Verdict::kPass : Verdict::kFail);
    results.push_back(j);
  } else if (command == "verify lower-bound") {
    SymbolEngine eng(ctx, prec, sopts);
    auto reps = verify_lower_bound(eng, cfg.max_m, vopts);
    for (const auto& r : reps) {
      results.push_back(twist_report_json(r));
      verdicts.push_back(r.verdict);
      errored = errored || bad_verdict(r.verdict, r.error);
    }
  } else if (command == "verify exact-valuation") {
    SymbolEngine eng(ctx, prec, sopts);
    extra["hypotheses"] = ledger_json(check_hypotheses(ctx, prec, cfg.prime_bound));
    for (int r : cfg.r_values) {
      for (const auto& rep : verify_exact_valuation(eng, r, cfg.samples, cfg.prime_bound, vopts)) {
        Json j = twist_report_json(rep);
        j["r_requested"] = r;
        results.push_back(j);
        verdicts.push_back(rep.verdict);
        errored = errored || bad_verdict(rep.verdict, rep.error);
      }
    }
  } else if (command == "verify identities") {
    SymbolEngine eng(ctx, prec, SymbolOptions{});
    auto ms = cfg.moduli.empty() ? default_identity_moduli() : cfg.moduli;
    for (const auto& r : verify_identities(eng, ms)) {
      Json j;
      j["identity"] = r.identity;
      j["m"] = r.m;
      j["d"] = r.d;
      j["residual"] = r.residual;
      j["verdict"] = verdict_name(r.verdict);
      if (!r.note.empty()) j["note"] = r.note;
      verdicts.push_back(r.verdict);
      results.push_back(j);
    }
  } else if (command == "verify lemma21") {
    Lemma21Sweep s = verify_lemma21(ctx, cfg.count);
    for (const auto& r : s.results) {
      results.push_back(Json{{"q", r.q},
                             {"branch", r.branch},
                             {"group_side", r.group_side},
                             {"field_side", r.field_side},
                             {"agree", r.agree},
                             {"verdict", r.agree ? "PASS" : "FAIL"}});
      verdicts.push_back(r.agree ? Verdict::kPass : Verdict::kFail);
    }
    extra["applicable"] = s.applicable;
    extra["agreements"] = s.agreements;
  } else if (command == "verify lemmas") {
    SymbolEngine eng(ctx, prec, SymbolOptions{});
    auto ms = cfg.moduli.empty() ? symbol_moduli(ctx.conductor(), 60, 3) : cfg.moduli;
    for (const auto& r : verify_weak_bound_lemma(eng, ms, vopts)) {
      results.push_back(lemma_json(r, "weak"));
      verdicts.push_back(r.verdict);
    }
    for (const auto& r : verify_strict_bound_lemma(eng, ms, vopts)) {
      results.push_back(lemma_json(r, "strict"));
      verdicts.push_back(r.verdict);
    }
  } else if (command == "nonvanish") {
    SymbolEngine eng(ctx, prec, sopts);
    HypothesisLedger h = check_hypotheses(ctx, prec);
    extra["hypotheses"] = ledger_json(h);
    for (int r : cfg.r_values) {
      NonvanishingResult nv = nonvanishing_search(eng, r, cfg.max_m, vopts);
      Json j;
      j["r"] = r;
      j["bound"] = nv.bound;
      j["applicable"] = nv.applicable;
      j["candidates"] = nv.candidates;
      j["nonzero"] = nv.nonzero;
      j["first_nonzero"] = nv.first_nonzero;
      j["errors"] = nv.errors;
      Verdict v = !nv.applicable ? Verdict::kSkipped
                  : nv.nonzero > 0 || !h.nonvanishing_eligible ? Verdict::kPass
                                                               : Verdict::kFail;
      if (!nv.errors.empty()) v = Verdict::kFail;
      j["verdict"] = nv.applicable ? verdict_name(v) : "NOT_APPLICABLE";
      verdicts.push_back(v);
      results.push_back(j);
    }
  }

  save_cache(ctx, cfg.cache_dir);
  out.report = make_report(command, cfg, rec, results);
  for (auto& [k, v] : extra.items()) out.report[k] = v;
  if (!verdicts.empty()) out.report["summary"] = summary_of(verdicts);
  out.report["precision"] = precision_json(prec);
  out.report["seconds"] = std::chrono::duration<double>(Clock::now() - t0).count();
  out.all_pass =
      !errored && std::none_of(verdicts.begin(), verdicts.end(), [](Verdict v) { return v == Verdict::kFail; });
  return out;
}

}  // namespace ltwist
