// Copyright 2026 The decgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "decgame/error.hpp"

namespace decgame {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::kEmptyInput: return "EmptyInput";
    case Errc::kNegativeProbability: return "NegativeProbability";
    case Errc::kNonFiniteProbability: return "NonFiniteProbability";
    case Errc::kAllZero: return "AllZero";
    case Errc::kNonFiniteLogit: return "NonFiniteLogit";
    case Errc::kDimensionMismatch: return "DimensionMismatch";
    case Errc::kNotADistribution: return "NotADistribution";
    case Errc::kDomainError: return "DomainError";
    case Errc::kAssumptionViolated: return "AssumptionViolated";
    case Errc::kBadConfig: return "BadConfig";
    case Errc::kShapeMismatch: return "ShapeMismatch";
    case Errc::kTooLarge: return "TooLarge";
    case Errc::kZeroProbabilityChosen: return "ZeroProbabilityChosen";
    case Errc::kParseError: return "ParseError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      detail_(message) {}

void fail(Errc code, const std::string& message) { throw Error(code, message); }

}  // namespace decgame
