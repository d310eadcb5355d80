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

#ifndef DECGAME_OBJECTIVE_HPP_
#define DECGAME_OBJECTIVE_HPP_

#include <cstddef>
#include <string>
#include <string_view>

#include "decgame/prob_vector.hpp"

namespace decgame {

// Concave non-decreasing utility f on [0, 1]: either ln x or the power family
// (x^a - 1) / a with a = 1 - 1/tau.
class Objective {
 public:
  enum class Kind { kLog, kPower };

  static Objective log();
  // tau > 0 and tau != 1; throws BadConfig otherwise.
  static Objective power(double tau);
  // tau == 1 maps to log.
  static Objective with_tau(double tau);
  // "log" or "power:<tau>".
  static Objective parse(std::string_view text);

  Kind kind() const { return kind_; }
  double tau() const { return tau_; }
  bool is_log() const { return kind_ == Kind::kLog; }
  bool diverges_at_zero() const;

  // f(x) for x in [0, 1]; -inf at 0 when f diverges. Throws DomainError.
  double value(double x) const;
  // f'(x); +inf at 0.
  double derivative(double x) const;
  // ln(1 / f'(x)) = ln(x) / tau.
  double log_inverse_derivative(double x) const;
  // f(x) - f(x - eps); +inf when x <= eps and f diverges.
  double gap_minus(double x, double eps) const;
  // f(x + eps) - f(x).
  double gap_plus(double x, double eps) const;

  std::string name() const;

 private:
  Objective(Kind kind, double tau);
  void check_shape() const;

  Kind kind_;
  double tau_;
  double a_;  // 1 - 1/tau, unused for log
};

enum class AssumptionCase { kCaseI, kCaseII, kRelaxed };

std::string_view to_string(AssumptionCase c);

struct AssumptionReport {
  AssumptionCase which = AssumptionCase::kRelaxed;
  double epsilon = 0.0;
  // Number of entries strictly above epsilon.
  std::size_t i_hat = 0;
  // Left-hand side of the case_ii sum condition; NaN when not evaluated.
  double case_ii_sum = 0.0;
  bool warning = false;
  std::string reason;
};

// Throws DomainError for eps outside [0, 1].
AssumptionReport classify_assumption(const Objective& obj, const ProbVector& p,
                                     double eps);

// q . f(p) with 0 * (-inf) = 0.
double expected_utility(std::span<const double> q, std::span<const double> p,
                        const Objective& obj);

}  // namespace decgame

#endif  // DECGAME_OBJECTIVE_HPP_
