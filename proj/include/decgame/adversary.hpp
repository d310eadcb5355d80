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

#ifndef DECGAME_ADVERSARY_HPP_
#define DECGAME_ADVERSARY_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "decgame/objective.hpp"
#include "decgame/prob_vector.hpp"

namespace decgame {

// f(p_k), g-(p_k) and g+(p_k) for one (p, eps, objective) triple. Build once
// and reuse across many strategy queries on the same distribution.
struct GapTable {
  double epsilon = 0.0;
  std::vector<double> f;
  std::vector<double> minus;  // +inf where the entry can be zeroed and f diverges
  std::vector<double> plus;

  static GapTable build(const ProbVector& p, double eps, const Objective& obj);
};

struct AdversaryOutcome {
  double value = 0.0;
  // Worst-case distribution, aligned with p's sorted order. Present in every
  // case, including the zeroing witness when value is -inf.
  std::optional<std::vector<double>> witness;
  std::optional<std::size_t> zeroed_index;
  std::optional<std::size_t> donor_index;
  std::optional<std::size_t> recipient_index;
  AssumptionCase assumption = AssumptionCase::kRelaxed;

  bool relaxed() const { return assumption == AssumptionCase::kRelaxed; }
};

// Worst case of q . f(p') over the TV ball of radius eps around p. q is
// aligned with p's sorted order. Throws DimensionMismatch, NotADistribution,
// and AssumptionViolated when `assumption` does not hold for (p, eps, obj).
AdversaryOutcome inner_min(std::span<const double> q, const ProbVector& p,
                           double eps, const Objective& obj,
                           AssumptionCase assumption);
// Classifies first.
AdversaryOutcome inner_min(std::span<const double> q, const ProbVector& p,
                           double eps, const Objective& obj);
AdversaryOutcome inner_min(std::span<const double> q, const ProbVector& p,
                           const GapTable& gaps, const Objective& obj,
                           AssumptionCase assumption);

// Value only, no allocation; q must already be validated.
double inner_min_value(std::span<const double> q, const ProbVector& p,
                       const GapTable& gaps, const Objective& obj,
                       AssumptionCase assumption);

// Log objective: q . ln p - eps * max_i q_i / w_i with
// w_i = eps / ln(p_i / (p_i - eps)) over entries above eps.
// Throws AssumptionViolated unless p_min <= eps < p_max.
double regularized_value(std::span<const double> q, const ProbVector& p,
                         double eps);

// Throws DimensionMismatch or NotADistribution.
void check_strategy(std::span<const double> q, std::size_t dim);

}  // namespace decgame

#endif  // DECGAME_ADVERSARY_HPP_
