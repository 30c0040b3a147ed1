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

// Subcommand dispatch shared by the C API and the tests.

#ifndef LTWIST_COMMANDS_HPP_
#define LTWIST_COMMANDS_HPP_

#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "io.hpp"
#include "verify.hpp"

namespace ltwist {

struct CommandResult {
  Json report;
  bool all_pass = true;
};

// Names accepted by Session::run, e.g. "lvalue" or "verify lower-bound".
const std::vector<std::string>& command_names();

class Session {
 public:
  Session();

  // Replaces the curve table.
  void load_table(const std::string& path);
  const std::vector<CurveRecord>& table() const { return table_; }
  CurveRecord resolve(const std::string& spec) const { return resolve_curve(spec, table_); }

  // One context per (label, model, jobs); seeded from <cache>/<label>.ap when
  // `cache_dir` is non-empty.
  CurveContext& context(const CurveRecord& rec, int jobs, const std::string& cache_dir);
  void save_cache(CurveContext& ctx, const std::string& cache_dir);

  // Throws InvalidArgument for unknown commands or missing curves.
  CommandResult run(const std::string& command, const RunConfig& cfg, const std::optional<std::string>& curve);

 private:
  std::vector<CurveRecord> table_;
  std::mutex mu_;
  std::map<std::string, std::unique_ptr<CurveContext>> contexts_;
};

Json twist_report_json(const TwistReport& rep);
Json algebraic_json(const AlgebraicLValue& v);

}  // namespace ltwist

#endif  // LTWIST_COMMANDS_HPP_
