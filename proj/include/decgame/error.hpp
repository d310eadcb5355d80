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

#ifndef DECGAME_ERROR_HPP_
#define DECGAME_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace decgame {

enum class Errc {
  kEmptyInput,
  kNegativeProbability,
  kNonFiniteProbability,
  kAllZero,
  kNonFiniteLogit,
  kDimensionMismatch,
  kNotADistribution,
  kDomainError,
  kAssumptionViolated,
  kBadConfig,
  kShapeMismatch,
  kTooLarge,
  kZeroProbabilityChosen,
  kParseError,
};

std::string_view to_string(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }
  // The message without the code prefix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  Errc code_;
  std::string detail_;
};

[[noreturn]] void fail(Errc code, const std::string& message);

}  // namespace decgame

#endif  // DECGAME_ERROR_HPP_
