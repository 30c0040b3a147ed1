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

#include "ltwist/ltwist.h"

#include <climits>
#include <cstdlib>
#include <cstring>
#include <string>

#include "arith.hpp"
#include "commands.hpp"
#include "errors.hpp"

struct ltw_session {
  ltwist::Session session;
  std::string table_path;  // empty for the bundled table
};

struct ltw_curve {
  ltwist::CurveContext* ctx;
  ltwist::Session* session;
};

namespace {

thread_local std::string last_error;

ltw_status set_error(ltw_status s, const std::string& msg) {
  last_error = msg;
  return s;
}

char* dup(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p) std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

template <class F>
ltw_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return LTW_OK;
  } catch (const ltwist::Error& e) {
    return set_error(static_cast<ltw_status>(e.code()), e.what());
  } catch (const nlohmann::json::exception& e) {
    return set_error(LTW_INVALID_ARGUMENT, e.what());
  } catch (const std::bad_alloc&) {
    return set_error(LTW_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return set_error(LTW_INTERNAL, e.what());
  }
}

ltw_status null_arg(const char* what) { return set_error(LTW_INVALID_ARGUMENT, std::string(what) + " is null"); }

}  // namespace

extern "C" {

const char* ltw_version(void) { return "1.0.0"; }

const char* ltw_status_name(ltw_status s) { return ltwist::error_code_name(static_cast<ltwist::ErrorCode>(s)); }

const char* ltw_last_error(void) { return last_error.c_str(); }

void ltw_string_free(char* s) { std::free(s); }

ltw_status ltw_session_new(ltw_session** out) {
  if (!out) return null_arg("out");
  return guarded([&] { *out = new ltw_session(); });
}

void ltw_session_free(ltw_session* s) { delete s; }

ltw_status ltw_session_load_table(ltw_session* s, const char* path) {
  if (!s || !path) return null_arg("session or path");
  return guarded([&] {
    s->session.load_table(path);
    s->table_path = path;
  });
}

ltw_status ltw_session_labels(ltw_session* s, char** out) {
  if (!s || !out) return null_arg("session or out");
  return guarded([&] {
    std::string r;
    for (const auto& c : s->session.table()) r += c.label + "\n";
    *out = dup(r);
  });
}

ltw_status ltw_commands(char** out) {
  if (!out) return null_arg("out");
  return guarded([&] {
    std::string r;
    for (const auto& c : ltwist::command_names()) r += c + "\n";
    *out = dup(r);
  });
}

ltw_status ltw_curve_open(ltw_session* s, const char* spec, int jobs, ltw_curve** out) {
  if (!s || !spec || !out) return null_arg("session, spec or out");
  return guarded([&] {
    if (jobs < 1) ltwist::fail(ltwist::ErrorCode::kInvalidArgument, "jobs must be positive");
    ltwist::CurveRecord rec = s->session.resolve(spec);
    auto* c = new ltw_curve{&s->session.context(rec, jobs, ""), &s->session};
    *out = c;
  });
}

void ltw_curve_free(ltw_curve* c) { delete c; }

ltw_status ltw_curve_label(const ltw_curve* c, char** out) {
  if (!c || !out) return null_arg("curve or out");
  return guarded([&] { *out = dup(c->ctx->label()); });
}

ltw_status ltw_curve_conductor(const ltw_curve* c, int64_t* out) {
  if (!c || !out) return null_arg("curve or out");
  return guarded([&] { *out = c->ctx->conductor(); });
}

ltw_status ltw_curve_ap(ltw_curve* c, uint64_t p, int64_t* out) {
  if (!c || !out) return null_arg("curve or out");
  return guarded([&] {
    if (!ltwist::is_prime_u64(p)) ltwist::fail(ltwist::ErrorCode::kInvalidArgument, "p is not prime");
    *out = c->ctx->ap(p);
  });
}

ltw_status ltw_curve_l_value(ltw_curve* c, int bits, int target_exp10, char** value, int* root_number) {
  if (!c || !value) return null_arg("curve or value");
  return guarded([&] {
    ltwist::Precision prec(bits, target_exp10);
    prec.validate();
    ltwist::Real L = c->ctx->l_value(prec);
    if (root_number) *root_number = c->ctx->root_number(prec).w;
    *value = dup(ltwist::real_str(L));
  });
}

ltw_status ltw_curve_twist_ratio(ltw_curve* c, int64_t M, int bits, int target_exp10, char** rational,
                                 int32_t* ord2) {
  if (!c || !rational) return null_arg("curve or rational");
  return guarded([&] {
    ltwist::Precision prec(bits, target_exp10);
    prec.validate();
    ltwist::SymbolEngine eng(*c->ctx, prec);
    ltwist::AlgebraicLValue v = ltwist::algebraic_l_value(eng, M);
    if (ord2) *ord2 = v.ord2 ? *v.ord2 : INT32_MAX;
    *rational = dup(v.rational.get_str());
  });
}

ltw_status ltw_run(ltw_session* s, const char* command, const char* config_json, const char* curve, char** report,
                   int* all_pass) {
  if (!s || !command || !report) return null_arg("session, command or report");
  return guarded([&] {
    ltwist::Json cj = config_json && *config_json ? ltwist::Json::parse(config_json) : ltwist::Json::object();
    ltwist::RunConfig cfg = ltwist::RunConfig::from_json(cj);
    if (!cfg.table_path.empty() && cfg.table_path != s->table_path) {
      s->session.load_table(cfg.table_path);
      s->table_path = cfg.table_path;
    }
    std::optional<std::string> spec;
    if (curve) spec = curve;
    ltwist::CommandResult r = s->session.run(command, cfg, spec);
    if (all_pass) *all_pass = r.all_pass ? 1 : 0;
    *report = dup(ltwist::emit_report(r.report, cfg.format));
  });
}

ltw_status ltw_report_to_csv(const char* report_json, char** csv) {
  if (!report_json || !csv) return null_arg("report or csv");
  return guarded([&] { *csv = dup(ltwist::report_to_csv(ltwist::Json::parse(report_json))); });
}

ltw_status ltw_csv_to_results(const char* csv, char** results_json) {
  if (!csv || !results_json) return null_arg("csv or results");
  return guarded([&] { *results_json = dup(ltwist::csv_to_results(csv).dump()); });
}

}  // extern "C"
