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

#ifndef DECGAME_MULTISTEP_HPP_
#define DECGAME_MULTISTEP_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "decgame/objective.hpp"
#include "decgame/strategist.hpp"

namespace decgame {

// Conditional next-token distributions on the full d-ary tree of contexts of
// length < T. Node vectors are stored in vocabulary order; node k at depth t
// sits at offset(t) + base-d code of its context.
class ToyMeasure {
 public:
  // All nodes uniform. Throws BadConfig for d < 1 or T < 1, TooLarge past
  // 10^7 stored entries.
  ToyMeasure(std::size_t d, std::size_t horizon);

  std::size_t vocab_size() const { return d_; }
  std::size_t horizon() const { return horizon_; }
  std::size_t node_count() const { return node_count_; }

  std::size_t node_index(std::span<const std::size_t> context) const;
  std::vector<std::size_t> context_of(std::size_t node) const;
  std::size_t depth_of(std::size_t node) const;
  // Child of `node` after emitting `token`; only for depth < T - 1.
  std::size_t child(std::size_t node, std::size_t token) const;
  bool is_leaf_level(std::size_t node) const;

  std::span<const double> node(std::size_t index) const;
  void set_node(std::size_t index, std::span<const double> probs);

  // Throws NotADistribution naming the context.
  void validate() const;

  static ToyMeasure random(std::size_t d, std::size_t horizon,
                           std::uint64_t seed);
  // One record per line: {"context":[...],"probs":[...]}.
  void write(std::ostream& out) const;
  // Throws ParseError or ShapeMismatch.
  static ToyMeasure read(std::istream& in);

 private:
  std::size_t d_;
  std::size_t horizon_;
  std::size_t node_count_;
  std::vector<std::size_t> offsets_;  // first node index per depth
  std::vector<double> data_;
};

std::string context_string(std::span<const std::size_t> context);

// E_Q sum_t ln P(x_t | x_<t), with 0 * (-inf) = 0. Throws ShapeMismatch.
double eval_objective(const ToyMeasure& q, const ToyMeasure& p,
                      const Objective& obj);
double eval_objective(const ToyMeasure& q, const ToyMeasure& p);

struct GameTrace {
  double value = 0.0;
  std::vector<double> per_node_values;  // one-step value at each node
  std::vector<double> reach;            // Q-probability of reaching each node
  ToyMeasure strategy;
  ToyMeasure adversary;
  std::optional<std::vector<std::size_t>> offending_context;
};

// Per-node optimal_q (exact) or first-order game masses (other modes).
// Throws AssumptionViolated naming the first failing context.
ToyMeasure local_mechanism(const ToyMeasure& phat, double eps,
                           const Objective& obj, SolveMode mode);

struct BestResponse {
  ToyMeasure adversary;
  GameTrace trace;
};

BestResponse adversary_best_response(const ToyMeasure& q,
                                     const ToyMeasure& phat, double eps,
                                     const Objective& obj);

struct DpResult {
  double value = 0.0;
  double slack = 0.0;
  double grid_step = 0.0;
  ToyMeasure strategy;
};

double default_grid_step(std::size_t d);

// Backward induction over simplex-grid strategies; d <= 4, T <= 3.
// Throws TooLarge.
DpResult dp_oracle(const ToyMeasure& phat, double eps, const Objective& obj,
                   double grid_step);

struct HarnessRow {
  std::string strategy;
  double min_value = 0.0;
  double mean_value = 0.0;
};

// Randomized search over trees: samples instances, re-roots each depth to
// its worst subtree, and reports per-strategy minima. Findings only.
std::vector<HarnessRow> no_foresight_harness(std::size_t d, std::size_t horizon,
                                             double eps, const Objective& obj,
                                             std::size_t samples,
                                             std::uint64_t seed);

}  // namespace decgame

#endif  // DECGAME_MULTISTEP_HPP_
