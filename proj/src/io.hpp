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

// Curve tables, run configuration, a_p cache files and report documents.

#ifndef LTWIST_IO_HPP_
#define LTWIST_IO_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "analytic.hpp"
#include "curve.hpp"
#include "json.hpp"
#include "rationalize.hpp"

namespace ltwist {

using Json = nlohmann::ordered_json;

extern const char* const kBuiltinCurveTable;

// Rows `label a1 a2 a3 a4 a6 conductor optimal [# note]`. Throws ParseError
// (with the line number) or ValidationError (non-minimal model, or conductor
// and discriminant with different prime support).
std::vector<CurveRecord> parse_curve_table(const std::string& text);
const std::vector<CurveRecord>& builtin_curves();
std::string read_file(const std::string& path);

// A table label, or coefficients "a1,a2,a3,a4,a6" with an optional
// ":conductor" suffix (brackets and spaces ignored). Throws UnknownCurve.
CurveRecord resolve_curve(const std::string& spec, const std::vector<CurveRecord>& table);

struct RunConfig {
  int precision_bits = 192;
  int target_exp10 = -30;
  double den_bound_factor = 1e4;
  int abs_err_exp10 = -20;
  double zero_threshold = 1e-15;
  std::int64_t max_m = 499;
  std::uint64_t prime_bound = 200;
  std::vector<int> r_values{1, 2, 3};
  int samples = 10;
  std::vector<std::int64_t> moduli;  // --m
  std::optional<std::int64_t> twist;  // --twist
  int count = 200;
  bool research = false;
  int jobs = 1;
  std::string cache_dir;
  std::string format = "json";
  std::string table_path;

  // Throws InvalidArgument.
  void validate() const;
  Precision precision() const { return Precision(precision_bits, target_exp10); }
  RationalizeConfig rational() const;
  // Reproducibility-relevant fields only; jobs and cache_dir are omitted
  // because reports do not depend on them.
  Json to_json() const;
  static RunConfig from_json(const Json& j);
};

// a_p cache: one `p a_p` line per prime under <dir>/<label>.ap.
std::string ap_cache_path(const std::string& dir, const std::string& label);
std::vector<std::pair<std::uint64_t, std::int64_t>> load_ap_cache(const std::string& path);
void save_ap_cache(const std::string& path, const ApTable& table);

// Number formatting shared by every report.
std::string real_str(const Real& x);
Json curve_json(const CurveRecord& rec);

// Document {command, config, curve, results[]}. The CSV projection keeps the
// scalar fields of each result; nested objects and arrays are dropped.
Json make_report(const std::string& command, const RunConfig& cfg, const std::optional<CurveRecord>& curve,
                 Json results);
std::string emit_report(const Json& report, const std::string& format);
std::string report_to_csv(const Json& report);
// Parses CSV rows back into a results array, inferring numbers, booleans and
// null (empty cells).
Json csv_to_results(const std::string& csv);
// Drops the timing fields so that reports from different runs compare equal.
Json strip_timing(Json report);

}  // namespace ltwist

#endif  // LTWIST_IO_HPP_
