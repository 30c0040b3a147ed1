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

#include "errors.hpp"

namespace ltwist {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kOk: return "Ok";
    case ErrorCode::kSingularModel: return "SingularModel";
    case ErrorCode::kNotSquarefree: return "NotSquarefree";
    case ErrorCode::kNoRationalTwoTorsion: return "NoRationalTwoTorsion";
    case ErrorCode::kFullTwoTorsion: return "FullTwoTorsion";
    case ErrorCode::kZeroDiscriminant: return "ZeroDiscriminant";
    case ErrorCode::kBadReduction: return "BadReduction";
    case ErrorCode::kGoodReduction: return "GoodReduction";
    case ErrorCode::kWrongTorsionShape: return "WrongTorsionShape";
    case ErrorCode::kTwistNotCoprime: return "TwistNotCoprime";
    case ErrorCode::kNotTwistPrime: return "NotTwistPrime";
    case ErrorCode::kPrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::kCoefficientTableTooShort: return "CoefficientTableTooShort";
    case ErrorCode::kAmbiguousRootNumber: return "AmbiguousRootNumber";
    case ErrorCode::kRouteDisagreement: return "RouteDisagreement";
    case ErrorCode::kNoGammaFound: return "NoGammaFound";
    case ErrorCode::kNotLatticePoint: return "NotLatticePoint";
    case ErrorCode::kIntegralityViolation: return "IntegralityViolation";
    case ErrorCode::kNoRationalInWindow: return "NoRationalInWindow";
    case ErrorCode::kOrd2Disagreement: return "Ord2Disagreement";
    case ErrorCode::kTheoremViolation: return "TheoremViolation";
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kUnknownCurve: return "UnknownCurve";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace ltwist
