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

#ifndef LTWIST_ERRORS_HPP_
#define LTWIST_ERRORS_HPP_

#include <stdexcept>
#include <string>

namespace ltwist {

// Keep in sync with ltw_status in ltwist.h (same numeric values).
enum class ErrorCode : int {
  kOk = 0,
  kSingularModel = 1,
  kNotSquarefree = 2,
  kNoRationalTwoTorsion = 3,
  kFullTwoTorsion = 4,
  kZeroDiscriminant = 5,
  kBadReduction = 6,
  kGoodReduction = 7,
  kWrongTorsionShape = 8,
  kTwistNotCoprime = 9,
  kNotTwistPrime = 10,
  kPrecisionExhausted = 11,
  kCoefficientTableTooShort = 12,
  kAmbiguousRootNumber = 13,
  kRouteDisagreement = 14,
  kNoGammaFound = 15,
  kNotLatticePoint = 16,
  kIntegralityViolation = 17,
  kNoRationalInWindow = 18,
  kOrd2Disagreement = 19,
  kTheoremViolation = 20,
  kParseError = 21,
  kValidationError = 22,
  kInvalidArgument = 23,
  kUnknownCurve = 24,
  kIoError = 25,
  kInternal = 99,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace ltwist

#endif  // LTWIST_ERRORS_HPP_
