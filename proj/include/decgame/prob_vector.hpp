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

#ifndef DECGAME_PROB_VECTOR_HPP_
#define DECGAME_PROB_VECTOR_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace decgame {

enum class DistKind { kProbs, kLogits };

// One next-token distribution as it arrives on the wire.
struct RawDist {
  std::vector<double> values;
  DistKind kind = DistKind::kProbs;
  std::optional<std::string> id;
};

// Summary of a raw probability array. The sum is accumulated in a fixed
// order so every consumer normalizes identically.
struct ProbStats {
  double sum = 0.0;
  double max = 0.0;
};

// Throws EmptyInput, NonFiniteProbability, NegativeProbability or AllZero.
ProbStats scan_probs(std::span<const double> values);

// Indices whose raw value is at least ratio * max, plus possibly a few
// smaller ones, gathered during the same pass. Gives up (overflow) once more
// than cap indices stay above the running cut.
struct HeadCandidates {
  double ratio = 0.0;
  std::size_t cap = 0;
  std::vector<std::size_t> ids;
  bool overflow = false;
};

ProbStats scan_probs(std::span<const double> values, HeadCandidates* head);

// Probabilities sorted in descending order, zeros dropped, with the map back
// to vocabulary ids. Immutable once built.
class ProbVector {
 public:
  std::span<const double> probs() const { return probs_; }
  std::span<const std::size_t> perm() const { return perm_; }

  std::size_t dim() const { return probs_.size(); }
  std::size_t source_dim() const { return source_dim_; }
  std::size_t dropped() const { return dropped_; }
  // True when the input sum was off by more than 1e-9 and got rescaled.
  bool renormalized() const { return renormalized_; }

  double operator[](std::size_t k) const { return probs_[k]; }
  std::size_t vocab_id(std::size_t k) const { return perm_[k]; }

  // Scatters a sorted-aligned array into vocabulary order (length
  // source_dim, zeros for dropped ids).
  std::vector<double> to_vocab_order(std::span<const double> aligned) const;

 private:
  friend ProbVector build_sorted(std::span<const double>, double, std::size_t);

  std::vector<double> probs_;
  std::vector<std::size_t> perm_;
  std::size_t source_dim_ = 0;
  std::size_t dropped_ = 0;
  bool renormalized_ = false;
};

ProbVector validate_dist(std::span<const double> probs);
ProbVector validate_dist(const RawDist& raw);
ProbVector from_logits(std::span<const double> logits);
ProbVector from_logits(const RawDist& raw);
// Dispatches on raw.kind.
ProbVector ingest(const RawDist& raw);

// Normalizes values[i] / sum and sorts; used by the ingestion paths.
ProbVector build_sorted(std::span<const double> values, double sum,
                        std::size_t source_dim);

// Half the L1 distance. Throws DimensionMismatch, NotADistribution.
double tv_distance(std::span<const double> p, std::span<const double> q);

// Normalized probability of vocabulary id `id` under `raw`.
double probability_of(const RawDist& raw, std::size_t id);

// Strict descending order with ascending index as the tie-break.
inline bool ranks_before(double a, std::size_t ia, double b, std::size_t ib) {
  return a > b || (a == b && ia < ib);
}

}  // namespace decgame

#endif  // DECGAME_PROB_VECTOR_HPP_
