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

#ifndef DECGAME_STRATEGIST_HPP_
#define DECGAME_STRATEGIST_HPP_

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "decgame/adversary.hpp"
#include "decgame/objective.hpp"
#include "decgame/prob_vector.hpp"

namespace decgame {

// exact: the game-optimal threshold (needs case_i or case_ii).
// first_order: linearized threshold, keeping the p_I > eps clause.
// relaxed: linearized threshold without the clause; what samplers use.
enum class SolveMode { kExact, kFirstOrder, kRelaxed };

std::string_view to_string(SolveMode mode);
SolveMode parse_solve_mode(std::string_view text);

// Incremental support-size scan over a descending sequence. Keeps the
// prefix sums A = sum w_i f(p_i) and B = sum w_i so that
// S_I = A - f(p_I) * B costs O(1) per entry.
class ThresholdScanner {
 public:
  // paper_literal flips the power-family ratio to (p_i / p_I)^a; only used
  // in relaxed mode.
  ThresholdScanner(const Objective& obj, double eps, SolveMode mode,
                   bool paper_literal = false);

  // Offers the next entry. Returns false once the entry is outside the
  // support; later offers are not allowed.
  bool offer(double p);

  std::size_t accepted() const { return accepted_; }
  bool closed() const { return closed_; }
  // S_I for every offered entry, including the first rejected one.
  const std::vector<double>& s_values() const { return s_values_; }

 private:
  Objective obj_;
  double eps_;
  SolveMode mode_;
  bool literal_;
  double bound_;
  double a_sum_ = 0.0;
  double b_sum_ = 0.0;
  std::size_t accepted_ = 0;
  bool closed_ = false;
  std::vector<double> s_values_;
};

struct ThresholdScan {
  std::size_t support_size = 0;
  std::vector<double> s_values;
};

// Exact mode throws AssumptionViolated on relaxed instances.
ThresholdScan threshold_scan(const ProbVector& p, double eps,
                             const Objective& obj, SolveMode mode,
                             bool paper_literal = false);
std::size_t threshold_index(const ProbVector& p, double eps,
                            const Objective& obj, SolveMode mode);

// Masses proportional to 1 / f'(p_i) on a descending prefix: the prefix
// itself for log, p_i^(1/tau) (computed relative to p_0) for power.
std::vector<double> first_order_masses(std::span<const double> prefix,
                                       const Objective& obj);

struct GameSolution {
  std::size_t support_size = 0;
  // exact mode: eps / g-(p_i); first-order modes: 1 / f'(p_i). Length
  // support_size.
  std::vector<double> weights;
  // Length dim, aligned with the sorted order, zero past support_size.
  std::vector<double> q;
  double value = 0.0;
  std::vector<double> s_values;
  SolveMode mode = SolveMode::kExact;
  AssumptionReport assumption;
  AdversaryOutcome adversary;
};

// Throws AssumptionViolated unless the instance is case_i or case_ii.
GameSolution optimal_q(const ProbVector& p, double eps, const Objective& obj);
GameSolution first_order_q(const ProbVector& p, double eps,
                           const Objective& obj,
                           SolveMode mode = SolveMode::kFirstOrder);
GameSolution solve(const ProbVector& p, double eps, const Objective& obj,
                   SolveMode mode);
double game_value(const ProbVector& p, double eps, const Objective& obj);

struct KktCertificate {
  double nu_star = 0.0;
  // Aligned with the sorted order; zero outside the respective index sets.
  std::vector<double> lambda_star;
  std::vector<double> gamma;
  double stationarity_residual = 0.0;
  bool feasible = false;
  std::vector<std::size_t> active;    // J: entries at the max level
  std::vector<std::size_t> inactive;  // N: zero entries
  std::string violation;              // first failed condition, if any
};

// Malformed strategies produce an infeasible certificate, not an error.
// Throws DimensionMismatch or NotADistribution.
KktCertificate kkt_certificate(std::span<const double> q, const ProbVector& p,
                               double eps, const Objective& obj);

}  // namespace decgame

#endif  // DECGAME_STRATEGIST_HPP_
