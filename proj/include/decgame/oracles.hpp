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

#ifndef DECGAME_ORACLES_HPP_
#define DECGAME_ORACLES_HPP_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "decgame/objective.hpp"
#include "decgame/prob_vector.hpp"

namespace decgame {

// Points of the simplex whose coordinates are multiples of step, enumerated
// as integer compositions of n = 1 / step.
class GridSpec {
 public:
  // step in (0, 0.25] with 1 / step an integer; dim in [1, 4].
  // Throws BadConfig or TooLarge.
  static GridSpec make(double step, std::size_t dim);

  double step() const { return 1.0 / static_cast<double>(n_); }
  std::size_t dim() const { return dim_; }
  std::size_t divisions() const { return n_; }
  std::size_t point_count() const;

  // Visits integer compositions in lexicographic order.
  void for_each_counts(
      const std::function<void(std::span<const std::size_t>)>& visit) const;
  void for_each(const std::function<void(std::span<const double>)>& visit) const;

 private:
  GridSpec(std::size_t n, std::size_t dim) : n_(n), dim_(dim) {}
  std::size_t n_;
  std::size_t dim_;
};

// Vertices of the TV ball used by the closed forms: all single transfers
// p - eps e_i + eps e_j, restricted per assumption case, plus zeroing moves
// in case_i. Sorted-order coordinates. Throws TooLarge past dim 64.
std::vector<std::vector<double>> vertex_enumerate(const ProbVector& p,
                                                  double eps,
                                                  AssumptionCase which);

struct BallMinResult {
  double grid_value = 0.0;  // +inf when no grid point lies in the ball
  std::vector<double> grid_argmin;
  std::size_t grid_points_in_ball = 0;
  double vertex_value = 0.0;
  std::vector<double> vertex_argmin;
  double slack = 0.0;
  bool disagreement = false;
};

// min of q . f(p') over the ball, by grid search and by vertex enumeration.
BallMinResult brute_min_over_ball(std::span<const double> q, const ProbVector& p,
                                  double eps, const Objective& obj,
                                  const GridSpec& grid);

struct MaxQResult {
  double value = 0.0;
  std::vector<double> argmax;
  double slack = 0.0;
  bool relaxed = false;
};

// Max over grid strategies of the closed-form inner minimum.
MaxQResult brute_max_q(const ProbVector& p, double eps, const Objective& obj,
                       const GridSpec& grid);

struct FiniteDiffEntry {
  double x = 0.0;
  double analytic = 0.0;
  double numeric = 0.0;
  double abs_error = 0.0;
  double rel_error = 0.0;
  double bound = 0.0;
  bool ok = false;
};

// Central differences with h = 1e-5 against Objective::derivative.
std::vector<FiniteDiffEntry> finite_diff_check(const Objective& obj,
                                               std::span<const double> points);

// FNV-1a over the instance contents, as 16 hex digits.
std::string instance_hash(const ProbVector& p, double eps, const Objective& obj);

struct OracleRecord {
  std::string hash;
  std::size_t dim = 0;
  double epsilon = 0.0;
  double closed_form = 0.0;
  double grid_value = 0.0;
  double vertex_value = 0.0;
  double slack = 0.0;
  bool ok = false;
};

std::string format_oracle_record(const OracleRecord& rec);
// Throws ParseError.
OracleRecord parse_oracle_record(const std::string& line);

struct VerifyOptions {
  std::size_t instances = 200;
  std::vector<std::size_t> dims = {2, 3, 4};
  std::uint64_t seed = 0;
  double step = 0.01;
};

struct VerifySummary {
  std::size_t instances = 0;
  std::size_t failures = 0;
  std::vector<OracleRecord> records;
};

// Random log-objective instances with p_min <= eps < p_max; checks the
// closed-form game value against brute_max_q and the closed-form inner
// minimum at the optimal strategy against brute_min_over_ball. Throws
// TooLarge for dims above 4.
VerifySummary run_verification(const VerifyOptions& options);

}  // namespace decgame

#endif  // DECGAME_ORACLES_HPP_
