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

#ifndef DECGAME_METRICS_HPP_
#define DECGAME_METRICS_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "decgame/prob_vector.hpp"
#include "decgame/samplers.hpp"

namespace decgame {

// True iff the sequence contains some phrase immediately followed by a copy
// of itself. Throws EmptyInput.
bool repetition_flag(std::span<const std::size_t> tokens);

struct StepRecord {
  RawDist dist;
  std::size_t chosen = 0;
  std::optional<std::size_t> support_size;
};

// exp of the mean negative log-probability of the chosen tokens.
// Throws EmptyInput, ZeroProbabilityChosen, DimensionMismatch.
double sequence_perplexity(std::span<const StepRecord> steps);

double entropy(std::span<const double> probs);
double entropy(const ProbVector& p);
double surprisal(const ProbVector& p, std::size_t k);

// Keep test for sorted position `candidate` (>= 1): its surprisal against the
// entropy of the renormalized head p_0..p_{candidate-1} plus
// C = ln(1 / M) + eps / M, M the head mass.
struct SurprisalTest {
  double surprisal = 0.0;
  double head_entropy = 0.0;
  double offset = 0.0;
  bool keep = false;
};
SurprisalTest surprisal_support_test(const ProbVector& p, std::size_t candidate,
                                     double eps);

struct TruncationProfile {
  std::vector<std::size_t> support_sizes;
  std::size_t min = 0;
  std::size_t max = 0;
  double mean = 0.0;
  // (quantile level, value) for 0.1, 0.25, 0.5, 0.75, 0.9.
  std::vector<std::pair<double, double>> quantiles;
  // (lower bound 2^k, count) for bins [2^k, 2^(k+1)).
  std::vector<std::pair<std::size_t, std::size_t>> histogram;

  // Tab-separated per-step series followed by the histogram.
  std::string table() const;
};

TruncationProfile profile_from_sizes(std::vector<std::size_t> sizes);
TruncationProfile truncation_profile(std::span<const RawDist> stream,
                                     const SamplerConfig& cfg);

struct AnalyzedStep {
  std::string seq;
  bool prompt = false;
  std::size_t token = 0;
  std::optional<RawDist> dist;
  std::optional<std::size_t> support_size;
};

struct SequenceMetrics {
  std::string seq;
  std::size_t length = 0;  // generated tokens only
  bool repetition = false;
  std::optional<double> perplexity;
};

struct MetricsReport {
  std::optional<double> perplexity;
  std::vector<SequenceMetrics> sequences;
  double repetition_frequency = 0.0;
  std::vector<double> entropy_series;
  std::vector<double> surprisal_series;
  std::vector<std::size_t> support_size_series;
  std::optional<TruncationProfile> profile;
};

// Groups steps by seq in order of first appearance; prompt steps are
// excluded from every metric.
MetricsReport analyze_corpus(std::span<const AnalyzedStep> steps);

}  // namespace decgame

#endif  // DECGAME_METRICS_HPP_
