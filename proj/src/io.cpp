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

#include "io.hpp"

#include <algorithm>
#include <cctype>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "arith.hpp"
#include "errors.hpp"

namespace ltwist {

namespace {

std::string trim(const std::string& s) {
  auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

bool parse_int(const std::string& s, mpz_class& out) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (std::size_t k = i; k < s.size(); ++k) {
    if (!std::isdigit(static_cast<unsigned char>(s[k]))) return false;
  }
  return out.set_str(s[0] == '+' ? s.substr(1) : s, 10) == 0;
}

std::vector<mpz_class> support_of(std::int64_t n) {
  std::vector<mpz_class> out;
  for (auto& [p, e] : factor_u64(static_cast<std::uint64_t>(n))) {
    (void)e;
    out.emplace_back(static_cast<unsigned long>(p));
  }
  return out;
}

void validate_record(const CurveRecord& rec, int line) {
  const WeierstrassModel& m = rec.model;
  std::string where = "line " + std::to_string(line) + " (" + rec.label + ")";
  WeierstrassModel min = minimal_model(m);
  if (abs(min.disc) != abs(m.disc)) {
    fail(ErrorCode::kValidationError, where + ": model " + m.to_string() + " is not minimal; minimal model " +
                                          min.to_string());
  }
  std::vector<mpz_class> dp = prime_divisors(m.disc);
  std::vector<mpz_class> cp = support_of(rec.conductor);
  std::sort(dp.begin(), dp.end());
  std::sort(cp.begin(), cp.end());
  if (dp != cp) {
    std::string d, c;
    for (auto& p : dp) d += (d.empty() ? "" : ",") + p.get_str();
    for (auto& p : cp) c += (c.empty() ? "" : ",") + p.get_str();
    fail(ErrorCode::kValidationError, where + ": discriminant " + m.disc.get_str() + " has prime support {" + d +
                                          "} but conductor " + std::to_string(rec.conductor) + " has {" + c + "}");
  }
}

}  // namespace

std::vector<CurveRecord> parse_curve_table(const std::string& text) {
  std::vector<CurveRecord> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string note;
    auto hash = raw.find('#');
    if (hash != std::string::npos) {
      note = trim(raw.substr(hash + 1));
      raw = raw.substr(0, hash);
    }
    std::istringstream fields(raw);
    std::vector<std::string> tok;
    for (std::string t; fields >> t;) tok.push_back(t);
    if (tok.empty()) continue;
    auto bad = [&](const std::string& why) {
      fail(ErrorCode::kParseError, "line " + std::to_string(line) + ": " + why);
    };
    if (tok.size() != 8) bad("expected 8 fields, found " + std::to_string(tok.size()));
    std::array<mpz_class, 5> a;
    for (int i = 0; i < 5; ++i) {
      if (!parse_int(tok[1 + i], a[i])) bad("coefficient '" + tok[1 + i] + "' is not an integer");
    }
    mpz_class cond, opt;
    if (!parse_int(tok[6], cond) || cond <= 0 || !cond.fits_slong_p()) bad("conductor must be a positive integer");
    if (!parse_int(tok[7], opt) || (opt != 0 && opt != 1)) bad("optimal flag must be 0 or 1");
    CurveRecord rec;
    rec.label = tok[0];
    try {
      rec.model = compute_invariants(a);
    } catch (const Error& e) {
      fail(ErrorCode::kValidationError, "line " + std::to_string(line) + " (" + rec.label + "): " + e.what());
    }
    rec.conductor = cond.get_si();
    rec.optimal = opt == 1;
    rec.source = note;
    validate_record(rec, line);
    for (const auto& r : out) {
      if (r.label == rec.label) bad("duplicate label " + rec.label);
    }
    out.push_back(std::move(rec));
  }
  return out;
}

const std::vector<CurveRecord>& builtin_curves() {
  static const std::vector<CurveRecord> table = parse_curve_table(kBuiltinCurveTable);
  return table;
}

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) fail(ErrorCode::kIoError, "cannot read " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

CurveRecord resolve_curve(const std::string& spec, const std::vector<CurveRecord>& table) {
  for (const auto& r : table) {
    if (r.label == spec) return r;
  }
  std::string s;
  for (char c : spec) {
    if (c != '[' && c != ']' && c != ' ') s += c;
  }
  std::string coeffs = s, cond;
  if (auto colon = s.find(':'); colon != std::string::npos) {
    coeffs = s.substr(0, colon);
    cond = s.substr(colon + 1);
  }
  std::vector<std::string> parts;
  std::stringstream ss(coeffs);
  for (std::string t; std::getline(ss, t, ',');) parts.push_back(t);
  std::array<mpz_class, 5> a;
  bool ok = parts.size() == 5;
  for (int i = 0; ok && i < 5; ++i) ok = parse_int(parts[i], a[i]);
  if (!ok) fail(ErrorCode::kUnknownCurve, "unknown curve '" + spec + "'");
  CurveRecord rec;
  rec.model = compute_invariants(a);
  rec.label = rec.model.to_string();
  rec.source = "command line";
  if (!cond.empty()) {
    mpz_class c;
    if (!parse_int(cond, c) || c <= 0 || !c.fits_slong_p()) {
      fail(ErrorCode::kInvalidArgument, "bad conductor in '" + spec + "'");
    }
    rec.conductor = c.get_si();
    validate_record(rec, 0);
  }
  // Look the curve up by coefficients so table flags carry over.
  for (const auto& r : table) {
    if (r.model == rec.model && (rec.conductor == 0 || rec.conductor == r.conductor)) return r;
  }
  return rec;
}

void RunConfig::validate() const {
  auto need = [](bool ok, const std::string& what) {
    if (!ok) fail(ErrorCode::kInvalidArgument, what);
  };
  need(precision_bits >= 64 && precision_bits <= 4096, "precision bits must lie in [64, 4096]");
  precision().validate();
  need(den_bound_factor >= 1, "den_bound factor must be at least 1");
  need(zero_threshold > 0 && zero_threshold < 1, "zero threshold must lie in (0, 1)");
  need(max_m >= 3 && max_m <= 1000000, "max-m must lie in [3, 10^6]");
  need(prime_bound >= 3 && prime_bound <= 100000000, "prime-bound must lie in [3, 10^8]");
  for (int r : r_values) need(r >= 1 && r <= 8, "r must lie in [1, 8]");
  need(samples >= 1 && samples <= 10000, "samples must lie in [1, 10^4]");
  need(count >= 1 && count <= 1000000, "count must lie in [1, 10^6]");
  need(jobs >= 1 && jobs <= 256, "jobs must lie in [1, 256]");
  need(format == "json" || format == "csv", "format must be json or csv");
  for (auto m : moduli) need(m > 1, "moduli must exceed 1");
}

RationalizeConfig RunConfig::rational() const {
  RationalizeConfig c;
  c.den_bound_factor = den_bound_factor;
  c.abs_err_exp10 = abs_err_exp10;
  c.zero_threshold = zero_threshold;
  return c;
}

Json RunConfig::to_json() const {
  Json j;
  j["precision_bits"] = precision_bits;
  j["target_exp10"] = target_exp10;
  j["den_bound_factor"] = den_bound_factor;
  j["abs_err_exp10"] = abs_err_exp10;
  j["zero_threshold"] = zero_threshold;
  j["max_m"] = max_m;
  j["prime_bound"] = prime_bound;
  j["r_values"] = r_values;
  j["samples"] = samples;
  j["moduli"] = moduli;
  if (twist) j["twist"] = *twist;
  j["count"] = count;
  j["research"] = research;
  j["format"] = format;
  j["table"] = table_path.empty() ? "builtin" : table_path;
  return j;
}

RunConfig RunConfig::from_json(const Json& j) {
  RunConfig c;
  auto get = [&](const char* key, auto& field) {
    if (j.contains(key) && !j[key].is_null()) {
      try {
        j.at(key).get_to(field);
      } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::kInvalidArgument, std::string("config field ") + key + ": " + e.what());
      }
    }
  };
  get("precision_bits", c.precision_bits);
  get("target_exp10", c.target_exp10);
  get("den_bound_factor", c.den_bound_factor);
  get("abs_err_exp10", c.abs_err_exp10);
  get("zero_threshold", c.zero_threshold);
  get("max_m", c.max_m);
  get("prime_bound", c.prime_bound);
  get("r_values", c.r_values);
  get("samples", c.samples);
  get("moduli", c.moduli);
  if (j.contains("twist") && !j["twist"].is_null()) c.twist = j["twist"].get<std::int64_t>();
  get("count", c.count);
  get("research", c.research);
  get("jobs", c.jobs);
  get("cache_dir", c.cache_dir);
  get("format", c.format);
  get("table", c.table_path);
  if (c.table_path == "builtin") c.table_path.clear();
  return c;
}

std::string ap_cache_path(const std::string& dir, const std::string& label) {
  std::string safe;
  for (char c : label) safe += std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ? c : '_';
  return (std::filesystem::path(dir) / (safe + ".ap")).string();
}

std::vector<std::pair<std::uint64_t, std::int64_t>> load_ap_cache(const std::string& path) {
  std::vector<std::pair<std::uint64_t, std::int64_t>> out;
  std::ifstream f(path);
  if (!f) return out;
  std::string raw;
  int line = 0;
  while (std::getline(f, raw)) {
    ++line;
    raw = trim(raw.substr(0, raw.find('#')));
    if (raw.empty()) continue;
    std::istringstream ss(raw);
    std::int64_t p, a;
    std::string extra;
    if (!(ss >> p >> a) || (ss >> extra) || p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p))) {
      fail(ErrorCode::kParseError, path + " line " + std::to_string(line) + ": expected 'p a_p'");
    }
    out.emplace_back(static_cast<std::uint64_t>(p), a);
  }
  return out;
}

void save_ap_cache(const std::string& path, const ApTable& table) {
  std::filesystem::path p(path);
  std::error_code ec;
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path(), ec);
  std::string tmp = path + ".tmp";
  {
    std::ofstream f(tmp, std::ios::trunc);
    if (!f) fail(ErrorCode::kIoError, "cannot write " + tmp);
    for (const auto& [q, a] : table.entries()) f << q << ' ' << a << '\n';
    if (!f) fail(ErrorCode::kIoError, "cannot write " + tmp);
  }
  std::filesystem::rename(tmp, path, ec);
  if (ec) fail(ErrorCode::kIoError, "cannot replace " + path + ": " + ec.message());
}

std::string real_str(const Real& x) { return x.to_sci(32); }

Json curve_json(const CurveRecord& rec) {
  Json j;
  j["label"] = rec.label;
  Json a = Json::array();
  for (const auto& c : rec.model.coefficients()) a.push_back(c.get_si());
  j["coefficients"] = a;
  j["conductor"] = rec.conductor;
  j["optimal"] = rec.optimal;
  j["manin_constant_assumed_odd"] = rec.manin_constant_assumed_odd;
  j["source"] = rec.source;
  return j;
}

Json make_report(const std::string& command, const RunConfig& cfg, const std::optional<CurveRecord>& curve,
                 Json results) {
  Json j;
  j["command"] = command;
  j["config"] = cfg.to_json();
  j["curve"] = curve ? curve_json(*curve) : Json(nullptr);
  j["results"] = results.is_array() ? std::move(results) : Json::array();
  return j;
}

namespace {

std::string csv_cell(const Json& v) {
  if (v.is_string()) {
    std::string s = v.get<std::string>(), out = "\"";
    for (char c : s) {
      if (c == '"') out += '"';
      out += c;
    }
    return out + "\"";
  }
  if (v.is_null()) return "";
  return v.dump();
}

std::vector<std::pair<std::string, bool>> split_csv_line(const std::string& text, std::size_t& pos) {
  // Returns (cell, was_quoted) pairs for one record; quoted cells may hold
  // newlines.
  std::vector<std::pair<std::string, bool>> cells;
  std::string cur;
  bool quoted = false, in_quotes = false;
  while (pos < text.size()) {
    char c = text[pos++];
    if (in_quotes) {
      if (c == '"') {
        if (pos < text.size() && text[pos] == '"') {
          cur += '"';
          ++pos;
        } else {
          in_quotes = false;
        }
      } else {
        cur += c;
      }
    } else if (c == '"') {
      in_quotes = quoted = true;
    } else if (c == ',') {
      cells.emplace_back(cur, quoted);
      cur.clear();
      quoted = false;
    } else if (c == '\n') {
      break;
    } else if (c != '\r') {
      cur += c;
    }
  }
  cells.emplace_back(cur, quoted);
  return cells;
}

}  // namespace

std::string report_to_csv(const Json& report) {
  std::vector<std::string> columns;
  const Json& results = report.at("results");
  for (const auto& r : results) {
    for (auto it = r.begin(); it != r.end(); ++it) {
      if (it->is_structured()) continue;
      if (std::find(columns.begin(), columns.end(), it.key()) == columns.end()) columns.push_back(it.key());
    }
  }
  std::string out;
  for (std::size_t i = 0; i < columns.size(); ++i) out += (i ? "," : "") + columns[i];
  out += '\n';
  for (const auto& r : results) {
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) out += ',';
      if (r.contains(columns[i]) && !r[columns[i]].is_structured()) out += csv_cell(r[columns[i]]);
    }
    out += '\n';
  }
  return out;
}

Json csv_to_results(const std::string& csv) {
  Json results = Json::array();
  std::size_t pos = 0;
  if (csv.empty()) return results;
  auto header = split_csv_line(csv, pos);
  while (pos < csv.size()) {
    auto cells = split_csv_line(csv, pos);
    if (cells.size() == 1 && cells[0].first.empty() && !cells[0].second) continue;
    if (cells.size() != header.size()) {
      fail(ErrorCode::kParseError, "csv row with " + std::to_string(cells.size()) + " cells, header has " +
                                       std::to_string(header.size()));
    }
    Json row = Json::object();
    for (std::size_t i = 0; i < cells.size(); ++i) {
      const auto& [text, quoted] = cells[i];
      const std::string& key = header[i].first;
      if (quoted) {
        row[key] = text;
      } else if (text.empty()) {
        row[key] = nullptr;
      } else {
        Json v = Json::parse(text, nullptr, false);
        row[key] = v.is_discarded() ? Json(text) : v;
      }
    }
    results.push_back(row);
  }
  return results;
}

std::string emit_report(const Json& report, const std::string& format) {
  if (format == "csv") return report_to_csv(report);
  if (format != "json") fail(ErrorCode::kInvalidArgument, "unknown format " + format);
  return report.dump(2) + "\n";
}

Json strip_timing(Json report) {
  std::function<void(Json&)> walk = [&](Json& j) {
    if (j.is_object()) {
      j.erase("seconds");
      for (auto& [k, v] : j.items()) {
        (void)k;
        walk(v);
      }
    } else if (j.is_array()) {
      for (auto& v : j) walk(v);
    }
  };
  walk(report);
  return report;
}

}  // namespace ltwist
