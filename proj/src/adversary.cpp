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

#include "decgame/adversary.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "decgame/error.hpp"

namespace decgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNone = static_cast<std::size_t>(-1);

// Result of the vertex search before any witness is materialized.
struct Vertex {
  double value = 0.0;
  std::size_t zeroed = kNone;
  std::size_t donor = kNone;
  std::size_t recipient = kNone;
  double shift = 0.0;
};

double base_value(std::span<const double> q, const GapTable& gaps) {
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] != 0.0) total += q[i] * gaps.f[i];
  }
  return total;
}

double loss(std::span<const double> q, const GapTable& gaps, std::size_t i) {
  return q[i] == 0.0 ? 0.0 : q[i] * gaps.minus[i];
}

// Smallest k >= from with q_k > 0, or kNone.
std::size_t first_mass(std::span<const double> q, std::size_t from) {
  for (std::size_t k = from; k < q.size(); ++k) {
    if (q[k] > 0.0) return k;
  }
  return kNone;
}

Vertex zeroing_vertex(std::span<const double> probs, std::size_t k) {
  Vertex v;
  v.value = -kInf;
  v.zeroed = k;
  v.donor = k;
  v.recipient = k == 0 ? 1 : 0;
  v.shift = probs[k];
  return v;
}

// Two smallest values of c_j, each tie going to the larger index.
struct TwoSmallest {
  double m1 = kInf, m2 = kInf;
  std::size_t j1 = kNone, j2 = kNone;

  void offer(double c, std::size_t j) {
    if (c <= m1) {
      m2 = m1;
      j2 = j1;
      m1 = c;
      j1 = j;
    } else if (c <= m2) {
      m2 = c;
      j2 = j;
    }
  }
  std::size_t best_excluding(std::size_t i) const { return i != j1 ? j1 : j2; }
  double value_excluding(std::size_t i) const { return i != j1 ? m1 : m2; }
};

Vertex search_case_i(std::span<const double> q, const ProbVector& p,
                     const GapTable& gaps) {
  const auto probs = p.probs();
  const std::size_t d = probs.size();
  std::size_t i_hat = 0;
  while (i_hat < d && probs[i_hat] > gaps.epsilon) ++i_hat;
  if (const std::size_t k = first_mass(q, i_hat); k != kNone) {
    return zeroing_vertex(probs, k);
  }
  Vertex v;
  double best = -kInf;
  for (std::size_t i = 0; i < i_hat; ++i) {
    const double term = loss(q, gaps, i);
    if (term > best) {
      best = term;
      v.donor = i;
    }
  }
  v.recipient = d - 1;
  v.shift = gaps.epsilon;
  v.value = base_value(q, gaps) - best;
  return v;
}

Vertex search_case_ii(std::span<const double> q, const GapTable& gaps) {
  const std::size_t d = q.size();
  TwoSmallest low;
  for (std::size_t j = 0; j < d; ++j) {
    low.offer(q[j] == 0.0 ? 0.0 : q[j] * gaps.plus[j], j);
  }
  Vertex v;
  double best = -kInf;
  for (std::size_t i = 0; i < d; ++i) {
    const double term = loss(q, gaps, i) - low.value_excluding(i);
    if (term > best) {
      best = term;
      v.donor = i;
    }
  }
  v.recipient = low.best_excluding(v.donor);
  v.shift = gaps.epsilon;
  v.value = base_value(q, gaps) - best;
  return v;
}

Vertex search_relaxed(std::span<const double> q, const ProbVector& p,
                      const GapTable& gaps, const Objective& obj) {
  const auto probs = p.probs();
  const std::size_t d = probs.size();
  const double eps = gaps.epsilon;
  Vertex v;
  if (eps == 0.0 || d == 1) {
    v.value = base_value(q, gaps);
    return v;
  }
  if (obj.diverges_at_zero()) {
    std::size_t i_hat = 0;
    while (i_hat < d && probs[i_hat] > eps) ++i_hat;
    if (const std::size_t k = first_mass(q, i_hat); k != kNone) {
      return zeroing_vertex(probs, k);
    }
  }

  std::size_t zeros = 0;
  std::size_t last_zero = kNone, prev_zero = kNone;
  for (std::size_t j = 0; j < d; ++j) {
    if (q[j] == 0.0) {
      ++zeros;
      prev_zero = last_zero;
      last_zero = j;
    }
  }

  double best = -kInf;
  auto consider = [&](double term, std::size_t i, std::size_t j, double shift) {
    if (term > best) {
      best = term;
      v.donor = i;
      v.recipient = j;
      v.shift = shift;
    }
  };

  if (zeros >= 2) {
    // A zero-weight recipient always exists, and gains are nonnegative.
    for (std::size_t i = 0; i < d; ++i) {
      consider(loss(q, gaps, i), i, i != last_zero ? last_zero : prev_zero,
               std::min(eps, probs[i]));
    }
  } else {
    TwoSmallest full;
    for (std::size_t j = 0; j < d; ++j) {
      full.offer(q[j] == 0.0 ? 0.0 : q[j] * gaps.plus[j], j);
    }
    TwoSmallest partial;
    double partial_shift = -1.0;
    for (std::size_t i = 0; i < d; ++i) {
      const double shift = std::min(eps, probs[i]);
      const TwoSmallest* low = &full;
      if (shift < eps) {
        if (shift != partial_shift) {
          // Sorted input keeps equal shifts adjacent.
          partial = TwoSmallest();
          for (std::size_t j = 0; j < d; ++j) {
            // j == i is offered too but never selected; clamp keeps it in
            // the domain.
            const double gain =
                q[j] == 0.0 ? 0.0
                            : q[j] * (obj.value(std::min(1.0, probs[j] + shift)) -
                                      gaps.f[j]);
            partial.offer(gain, j);
          }
          partial_shift = shift;
        }
        low = &partial;
      }
      consider(loss(q, gaps, i) - low->value_excluding(i), i,
               low->best_excluding(i), shift);
    }
  }
  v.value = base_value(q, gaps) - best;
  return v;
}

void check_assumption(const ProbVector& p, double eps, const Objective& obj,
                      AssumptionCase assumption) {
  const auto probs = p.probs();
  const std::size_t d = probs.size();
  if (assumption == AssumptionCase::kCaseI &&
      !(obj.diverges_at_zero() && probs[d - 1] <= eps && eps < probs[0])) {
    fail(Errc::kAssumptionViolated,
         "case_i needs p_min <= eps < p_max and f diverging at zero");
  }
  if (assumption == AssumptionCase::kCaseII &&
      !(d >= 2 && eps > 0.0 && eps < probs[d - 1])) {
    fail(Errc::kAssumptionViolated, "case_ii needs 0 < eps < p_min");
  }
}

Vertex search(std::span<const double> q, const ProbVector& p,
              const GapTable& gaps, const Objective& obj,
              AssumptionCase assumption) {
  switch (assumption) {
    case AssumptionCase::kCaseI: return search_case_i(q, p, gaps);
    case AssumptionCase::kCaseII: return search_case_ii(q, gaps);
    case AssumptionCase::kRelaxed: break;
  }
  return search_relaxed(q, p, gaps, obj);
}

}  // namespace

GapTable GapTable::build(const ProbVector& p, double eps, const Objective& obj) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    fail(Errc::kDomainError, "epsilon must lie in [0, 1]");
  }
  const auto probs = p.probs();
  GapTable t;
  t.epsilon = eps;
  t.f.resize(probs.size());
  t.minus.resize(probs.size());
  t.plus.resize(probs.size());
  const double f_zero = obj.value(0.0);
  const double f_one = obj.value(1.0);
  for (std::size_t k = 0; k < probs.size(); ++k) {
    const double x = probs[k];
    t.f[k] = obj.value(x);
    if (x > eps || obj.diverges_at_zero()) {
      t.minus[k] = obj.gap_minus(x, eps);
    } else {
      t.minus[k] = t.f[k] - f_zero;  // the move is capped at x
    }
    t.plus[k] = x + eps <= 1.0 ? obj.gap_plus(x, eps) : f_one - t.f[k];
  }
  return t;
}

void check_strategy(std::span<const double> q, std::size_t dim) {
  if (q.size() != dim) {
    fail(Errc::kDimensionMismatch, "strategy has length " +
                                       std::to_string(q.size()) +
                                       ", distribution has " +
                                       std::to_string(dim));
  }
  double sum = 0.0;
  for (double x : q) {
    if (!(x >= 0.0) || !std::isfinite(x)) {
      fail(Errc::kNotADistribution, "strategy has a negative or bad entry");
    }
    sum += x;
  }
  if (std::abs(sum - 1.0) > 1e-9) {
    fail(Errc::kNotADistribution, "strategy sums to " + std::to_string(sum));
  }
}

double inner_min_value(std::span<const double> q, const ProbVector& p,
                       const GapTable& gaps, const Objective& obj,
                       AssumptionCase assumption) {
  return search(q, p, gaps, obj, assumption).value;
}

AdversaryOutcome inner_min(std::span<const double> q, const ProbVector& p,
                           const GapTable& gaps, const Objective& obj,
                           AssumptionCase assumption) {
  check_strategy(q, p.dim());
  check_assumption(p, gaps.epsilon, obj, assumption);
  const Vertex v = search(q, p, gaps, obj, assumption);
  AdversaryOutcome out;
  out.value = v.value;
  out.assumption = assumption;
  std::vector<double> witness(p.probs().begin(), p.probs().end());
  if (v.zeroed != kNone) out.zeroed_index = v.zeroed;
  if (v.donor != kNone && v.recipient != kNone) {
    out.donor_index = v.donor;
    out.recipient_index = v.recipient;
    witness[v.donor] -= v.shift;
    witness[v.recipient] += v.shift;
    if (witness[v.donor] < 0.0) witness[v.donor] = 0.0;
  }
  out.witness = std::move(witness);
  return out;
}

AdversaryOutcome inner_min(std::span<const double> q, const ProbVector& p,
                           double eps, const Objective& obj,
                           AssumptionCase assumption) {
  return inner_min(q, p, GapTable::build(p, eps, obj), obj, assumption);
}

AdversaryOutcome inner_min(std::span<const double> q, const ProbVector& p,
                           double eps, const Objective& obj) {
  return inner_min(q, p, eps, obj, classify_assumption(obj, p, eps).which);
}

double regularized_value(std::span<const double> q, const ProbVector& p,
                         double eps) {
  check_strategy(q, p.dim());
  const auto probs = p.probs();
  const std::size_t d = probs.size();
  if (!(probs[d - 1] <= eps && eps < probs[0])) {
    fail(Errc::kAssumptionViolated,
         "regularized form needs p_min <= eps < p_max");
  }
  double dot = 0.0;
  double worst = 0.0;
  for (std::size_t k = 0; k < d; ++k) {
    if (q[k] == 0.0) continue;
    if (probs[k] <= eps) return -kInf;
    dot += q[k] * std::log(probs[k]);
    const double w = eps / std::log(probs[k] / (probs[k] - eps));
    worst = std::max(worst, q[k] / w);
  }
  return dot - eps * worst;
}

}  // namespace decgame
