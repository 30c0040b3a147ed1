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


// Shared fixtures for the unit tests. Reference decimals were produced
// offline with PARI/GP and are frozen here.

#ifndef LTWIST_TESTS_FIXTURES_HPP_
#define LTWIST_TESTS_FIXTURES_HPP_

#include <map>
#include <memory>
#include <string>

#include "analytic.hpp"
#include "io.hpp"

namespace fixtures {

inline ltwist::CurveContext& ctx(const std::string& label) {
  static std::map<std::string, std::unique_ptr<ltwist::CurveContext>> cache;
  auto& slot = cache[label];
  if (!slot) slot = std::make_unique<ltwist::CurveContext>(ltwist::resolve_curve(label, ltwist::builtin_curves()));
  return *slot;
}

inline ltwist::Real dec(const std::string& s, int bits = 256) { return ltwist::Real(s, bits); }

inline double rel_err(const ltwist::Real& a, const ltwist::Real& b) {
  return (ltwist::abs(a - b) / ltwist::abs(b)).to_double();
}

inline ltwist::WeierstrassModel model(long a1, long a2, long a3, long a4, long a6) {
  return ltwist::compute_invariants({mpz_class(a1), mpz_class(a2), mpz_class(a3), mpz_class(a4), mpz_class(a6)});
}

}  // namespace fixtures

#endif  // LTWIST_TESTS_FIXTURES_HPP_
