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

// ltwist-cli: command-line front end over the ltwist C interface.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <list>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "ltwist/ltwist.h"

namespace {

struct Opts {
  std::string command;
  std::string curve;
  std::string table;
  std::int64_t max_m = 499;
  std::vector<int> r{1, 2, 3};
  std::uint64_t prime_bound = 200;
  int bits = 192;
  int target = -30;
  std::string out;
  std::string format = "json";
  std::string cache;
  int jobs = 1;
  bool research = false;
  std::vector<std::int64_t> moduli;
  std::int64_t twist = 0;
  int samples = 10;
  int count = 200;
  bool needs_curve = true;
};

CLI::App* add_command(CLI::App& parent, std::list<Opts>& all, const std::string& name, const std::string& full,
                      const std::string& help, Opts defaults = {}) {
  all.push_back(defaults);
  Opts& o = all.back();
  o.command = full;
  CLI::App* sub = parent.add_subcommand(name, help);
  if (o.needs_curve) {
    sub->add_option("--curve", o.curve, "curve label or a1,a2,a3,a4,a6[:conductor]")->required();
  }
  sub->add_option("--table", o.table, "curve table file (default: bundled table)");
  sub->add_option("--max-m", o.max_m, "bound on |M|")->capture_default_str();
  sub->add_option("--r", o.r, "numbers of prime factors")->capture_default_str();
  sub->add_option("--prime-bound", o.prime_bound, "prime bound")->capture_default_str();
  sub->add_option("--precision-bits", o.bits, "working precision in bits")->capture_default_str();
  sub->add_option("--target-exp10", o.target, "target absolute error 10^e")->capture_default_str();
  sub->add_option("--out", o.out, "write the report here instead of stdout");
  sub->add_option("--format", o.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}))
      ->capture_default_str();
  sub->add_option("--cache", o.cache, "a_p cache directory");
  sub->add_option("--jobs", o.jobs, "worker threads")->check(CLI::Range(1, 256))->capture_default_str();
  sub->add_flag("--research", o.research, "report violations as warnings");
  sub->add_option("--m", o.moduli, "symbol moduli");
  sub->add_option("--twist", o.twist, "twist M");
  sub->add_option("--samples", o.samples, "samples per r")->capture_default_str();
  sub->add_option("--count", o.count, "primes to test")->capture_default_str();
  return sub;
}

int usage_status(ltw_status s) {
  switch (s) {
    case LTW_INVALID_ARGUMENT:
    case LTW_UNKNOWN_CURVE:
    case LTW_PARSE_ERROR:
    case LTW_VALIDATION_ERROR:
    case LTW_IO_ERROR:
      return 2;
    default:
      return 1;
  }
}

int execute(const Opts& o) {
  nlohmann::ordered_json cfg;
  cfg["precision_bits"] = o.bits;
  cfg["target_exp10"] = o.target;
  cfg["max_m"] = o.max_m;
  cfg["prime_bound"] = o.prime_bound;
  cfg["r_values"] = o.r;
  cfg["samples"] = o.samples;
  cfg["moduli"] = o.moduli;
  if (o.twist != 0) cfg["twist"] = o.twist;
  cfg["count"] = o.count;
  cfg["research"] = o.research;
  cfg["jobs"] = o.jobs;
  cfg["cache_dir"] = o.cache;
  cfg["format"] = o.format;
  if (!o.table.empty()) cfg["table"] = o.table;

  ltw_session* session = nullptr;
  if (ltw_session_new(&session) != LTW_OK) {
    std::cerr << "error: " << ltw_last_error() << "\n";
    return 1;
  }
  char* report = nullptr;
  int all_pass = 0;
  std::string cj = cfg.dump();
  ltw_status st = ltw_run(session, o.command.c_str(), cj.c_str(), o.needs_curve ? o.curve.c_str() : nullptr,
                          &report, &all_pass);
  if (st != LTW_OK) {
    std::cerr << "error [" << ltw_status_name(st) << "]: " << ltw_last_error() << "\n";
    ltw_session_free(session);
    return usage_status(st);
  }
  int rc = all_pass ? 0 : 1;
  if (o.out.empty()) {
    std::fputs(report, stdout);
  } else {
    std::ofstream f(o.out, std::ios::trunc);
    f << report;
    if (!f) {
      std::cerr << "error: cannot write " << o.out << "\n";
      rc = 2;
    }
  }
  ltw_string_free(report);
  ltw_session_free(session);
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quadratic twists of elliptic curves: L-values, modular symbols and 2-adic checks"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(ltw_version()));
  std::list<Opts> all;
  std::vector<std::pair<CLI::App*, Opts*>> leaves;
  auto add = [&](CLI::App& parent, const std::string& name, const std::string& full, const std::string& help,
                 Opts d = {}) {
    CLI::App* sub = add_command(parent, all, name, full, help, d);
    leaves.emplace_back(sub, &all.back());
  };
  Opts ap;
  ap.prime_bound = 100;
  Opts integ;
  integ.prime_bound = 60;
  integ.r = {3};
  Opts sieve;
  sieve.prime_bound = 1000;
  Opts dens;
  dens.prime_bound = 100000;
  Opts nonv;
  nonv.max_m = 3000;
  nonv.r = {1, 2};
  Opts counter;
  counter.needs_curve = false;

  add(app, "curve-info", "curve-info", "invariants, periods, root number, hypotheses");
  add(app, "ap", "ap", "a_p for primes up to --prime-bound", ap);
  add(app, "lvalue", "lvalue", "L(E,1) and L(E,1)/c_inf", {});
  add(app, "twist", "twist", "algebraic L-value of the twist by --twist M");
  add(app, "msym", "msym", "modular-symbol character sums for --m");
  add(app, "integrality", "integrality", "integrality of the character sums", integ);
  add(app, "sieve-s", "sieve-s", "primes of S up to --prime-bound", sieve);
  add(app, "density", "density", "density statements for S up to --prime-bound", dens);
  CLI::App* verify = app.add_subcommand("verify", "verification sweeps");
  verify->require_subcommand(1);
  add(*verify, "lower-bound", "verify lower-bound", "ord2 lower bound over admissible |M| <= --max-m");
  add(*verify, "exact-valuation", "verify exact-valuation", "exact ord2 on r-subsets of S");
  add(*verify, "identities", "verify identities", "symbol identities by two routes");
  add(*verify, "lemma21", "verify lemma21", "local 2-torsion criteria over --count primes");
  add(*verify, "counterexamples", "verify counterexamples", "the two vanishing twists", counter);
  add(*verify, "lemmas", "verify lemmas", "valuation bounds for <m>", {});
  add(app, "nonvanish", "nonvanish", "count nonvanishing twists with r factors in S", nonv);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }
  for (auto& [sub, o] : leaves) {
    if (sub->parsed()) return execute(*o);
  }
  std::cerr << app.help();
  return 2;
}
