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


#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "commands.hpp"
#include "doctest.h"
#include "errors.hpp"
#include "fixtures.hpp"
#include "io.hpp"

using namespace ltwist;

namespace {

std::pair<ErrorCode, std::string> error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return {e.code(), e.what()};
  }
  return {ErrorCode::kOk, ""};
}

std::filesystem::path scratch_dir(const std::string& name) {
  auto p = std::filesystem::temp_directory_path() / ("ltwist_unit_" + name + "_" + std::to_string(::getpid()));
  std::filesystem::remove_all(p);
  std::filesystem::create_directories(p);
  return p;
}

}  // namespace

TEST_CASE("curve table parsing") {
  auto rows = parse_curve_table("# header\n\n11a1 0 -1 1 -10 -20 11 1 # note here\n14a1 1 0 1 4 -6 14 0\n");
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].label == "11a1");
  CHECK(rows[0].source == "note here");
  CHECK(rows[0].optimal);
  CHECK_FALSE(rows[1].optimal);
  CHECK(rows[1].conductor == 14);

  auto e1 = error_of([] { parse_curve_table("11a1 0 -1 1 -10 -20 11 1\n11a1 0 -1 1 -10\n"); });
  CHECK(e1.first == ErrorCode::kParseError);
  CHECK(e1.second.find("line 2") != std::string::npos);
  CHECK(error_of([] { parse_curve_table("x 0 a 1 -10 -20 11 1\n"); }).first == ErrorCode::kParseError);
  CHECK(error_of([] { parse_curve_table("x 0 -1 1 -10 -20 11 2\n"); }).first == ErrorCode::kParseError);
  CHECK(error_of([] { parse_curve_table("x 0 -1 1 -10 -20 11 1\nx 0 -1 1 -10 -20 11 1\n"); }).first ==
        ErrorCode::kParseError);
  // scaled (non-minimal) model, wrong conductor support, singular model
  CHECK(error_of([] { parse_curve_table("x 0 -4 8 -160 -1280 11 1\n"); }).first == ErrorCode::kValidationError);
  CHECK(error_of([] { parse_curve_table("x 0 -1 1 -10 -20 13 1\n"); }).first == ErrorCode::kValidationError);
  CHECK(error_of([] { parse_curve_table("x 0 0 0 0 0 11 1\n"); }).first == ErrorCode::kValidationError);
}

TEST_CASE("bundled table") {
  const auto& t = builtin_curves();
  CHECK(t.size() >= 40);
  for (const auto& r : t) CHECK(r.conductor > 0);
}

TEST_CASE("curve resolution") {
  const auto& t = builtin_curves();
  CHECK(resolve_curve("11a1", t).conductor == 11);
  auto r = resolve_curve("[0, -1, 1, -10, -20]", t);
  CHECK(r.label == "11a1");
  CHECK(r.optimal);
  auto s = resolve_curve("0,0,1,-93,625:99", t);
  CHECK(s.conductor == 99);
  CHECK(s.model == fixtures::model(0, 0, 1, -93, 625));
  CHECK(error_of([&] { resolve_curve("nope", t); }).first == ErrorCode::kUnknownCurve);
  CHECK(error_of([&] { resolve_curve("0,0,1,-93,625:x", t); }).first == ErrorCode::kInvalidArgument);
}

TEST_CASE("run configuration round trip and validation") {
  RunConfig c;
  c.max_m = 123;
  c.r_values = {2};
  c.research = true;
  c.twist = -3;
  auto j = c.to_json();
  CHECK_FALSE(j.contains("jobs"));
  CHECK_FALSE(j.contains("cache_dir"));
  auto d = RunConfig::from_json(j);
  CHECK(d.max_m == 123);
  CHECK(d.r_values == std::vector<int>{2});
  CHECK(d.research);
  CHECK(d.twist == -3);
  CHECK(d.to_json() == j);

  RunConfig bad;
  bad.precision_bits = 40;
  CHECK_THROWS(bad.validate());
  RunConfig bad2;
  bad2.r_values = {0};
  CHECK_THROWS(bad2.validate());
  CHECK(error_of([] { RunConfig::from_json(Json{{"max_m", "x"}}); }).first == ErrorCode::kInvalidArgument);
}

TEST_CASE("csv projection round trip") {
  Json results = Json::array();
  results.push_back({{"M", -3}, {"rational", "1/5"}, {"ord2", 0}, {"zero", false}, {"residual", 1.5e-30},
                     {"nested", {{"a", 1}}}, {"note", "a, \"quoted\" note"}});
  results.push_back({{"M", 5}, {"rational", "5"}, {"ord2", nullptr}, {"zero", true}, {"residual", 0.25},
                     {"nested", {{"a", 2}}}, {"note", ""}});
  RunConfig cfg;
  auto rep = make_report("test", cfg, std::nullopt, results);
  auto csv = report_to_csv(rep);
  auto back = csv_to_results(csv);
  REQUIRE(back.size() == 2);
  for (std::size_t i = 0; i < 2; ++i) {
    auto expect = results[i];
    expect.erase("nested");
    CHECK(back[i] == expect);
  }
  CHECK(back[0]["rational"].is_string());
  CHECK(back[1]["rational"].is_string());
}

TEST_CASE("timing fields are stripped") {
  Json j = {{"seconds", 1.0}, {"results", {{{"seconds", 2.0}, {"x", 1}}}}};
  auto s = strip_timing(j);
  CHECK_FALSE(s.contains("seconds"));
  CHECK_FALSE(s["results"][0].contains("seconds"));
  CHECK(s["results"][0]["x"] == 1);
}

TEST_CASE("a_p cache: save, load, cold and warm runs agree") {
  auto dir = scratch_dir("cache");
  ApTable t("11a1");
  t.extend(fixtures::model(0, -1, 1, -10, -20), 500);
  auto path = ap_cache_path(dir.string(), "11a1");
  save_ap_cache(path, t);
  auto loaded = load_ap_cache(path);
  CHECK(loaded.size() == t.entries().size());
  for (auto [p, a] : loaded) CHECK(t.at(p) == a);

  std::filesystem::remove(path);
  RunConfig cfg;
  cfg.cache_dir = dir.string();
  cfg.prime_bound = 2000;
  Session cold;
  auto r1 = cold.run("ap", cfg, std::string("11a1"));
  CHECK(std::filesystem::exists(path));
  Session warm;
  auto r2 = warm.run("ap", cfg, std::string("11a1"));
  CHECK(strip_timing(r1.report) == strip_timing(r2.report));

  std::ofstream(path) << "2 -2\nnot a line\n";
  CHECK(error_of([&] { load_ap_cache(path); }).first == ErrorCode::kParseError);
  std::filesystem::remove_all(dir);
}

TEST_CASE("session rejects unknown commands and missing curves") {
  Session s;
  RunConfig cfg;
  CHECK(error_of([&] { s.run("frobnicate", cfg, std::string("11a1")); }).first == ErrorCode::kInvalidArgument);
  CHECK(error_of([&] { s.run("lvalue", cfg, std::nullopt); }).first == ErrorCode::kInvalidArgument);
  auto r = s.run("lvalue", cfg, std::string("11a1"));
  CHECK(r.all_pass);
  CHECK(r.report["command"] == "lvalue");
}
