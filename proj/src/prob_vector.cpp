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

#include "decgame/prob_vector.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "decgame/error.hpp"

namespace decgame {

namespace {

[[noreturn]] void report_bad_entry(std::span<const double> values) {
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      fail(Errc::kNonFiniteProbability,
           "entry " + std::to_string(i) + " is not finite");
    }
    if (values[i] < 0.0) {
      fail(Errc::kNegativeProbability,
           "entry " + std::to_string(i) + " is negative");
    }
  }
  fail(Errc::kNonFiniteProbability, "sum of entries overflows");
}

}  // namespace

ProbStats scan_probs(std::span<const double> values) {
  return scan_probs(values, nullptr);
}

ProbStats scan_probs(std::span<const double> values, HeadCandidates* head) {
  const std::size_t n = values.size();
  if (n == 0) fail(Errc::kEmptyInput, "distribution has no entries");
  const double* v = values.data();
  double s0 = 0.0, s1 = 0.0, s2 = 0.0, s3 = 0.0;
  double m0 = 0.0, m1 = 0.0;
  double lo = v[0];
  double cut = 0.0;
  auto collect = [&](std::size_t from, std::size_t to) {
    const double top = std::max(m0, m1);
    cut = head->ratio * top * (1.0 - 1e-12);
    for (std::size_t k = from; k < to; ++k) {
      if (v[k] >= cut && v[k] > 0.0) head->ids.push_back(k);
    }
    if (head->ids.size() <= head->cap) return;
    std::erase_if(head->ids, [&](std::size_t k) { return v[k] < cut; });
    if (head->ids.size() > head->cap / 2) {
      head->overflow = true;
      head->ids.clear();
      head = nullptr;
    }
  };
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    s0 += v[i];
    s1 += v[i + 1];
    s2 += v[i + 2];
    s3 += v[i + 3];
    const double a = std::max(v[i], v[i + 1]);
    const double b = std::max(v[i + 2], v[i + 3]);
    m0 = std::max(m0, a);
    m1 = std::max(m1, b);
    lo = std::min(lo, std::min(std::min(v[i], v[i + 1]),
                               std::min(v[i + 2], v[i + 3])));
    if (head && std::max(a, b) >= cut) collect(i, i + 4);
  }
  for (; i < n; ++i) {
    s0 += v[i];
    m0 = std::max(m0, v[i]);
    lo = std::min(lo, v[i]);
    if (head && v[i] >= cut) collect(i, i + 1);
  }
  ProbStats stats;
  stats.sum = (s0 + s1) + (s2 + s3);
  stats.max = std::max(m0, m1);
  if (!std::isfinite(stats.sum) || !(lo >= 0.0)) report_bad_entry(values);
  if (stats.sum == 0.0) fail(Errc::kAllZero, "all entries are zero");
  return stats;
}

ProbVector build_sorted(std::span<const double> values, double sum,
                        std::size_t source_dim) {
  std::vector<std::pair<double, std::size_t>> kept;
  kept.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i] > 0.0) kept.emplace_back(values[i] / sum, i);
  }
  std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) {
    return ranks_before(a.first, a.second, b.first, b.second);
  });
  ProbVector out;
  out.probs_.reserve(kept.size());
  out.perm_.reserve(kept.size());
  for (const auto& [p, i] : kept) {
    out.probs_.push_back(p);
    out.perm_.push_back(i);
  }
  out.source_dim_ = source_dim;
  out.dropped_ = values.size() - kept.size();
  out.renormalized_ = std::abs(sum - 1.0) > 1e-9;
  return out;
}

std::vector<double> ProbVector::to_vocab_order(
    std::span<const double> aligned) const {
  if (aligned.size() != dim()) {
    fail(Errc::kDimensionMismatch, "aligned array has length " +
                                       std::to_string(aligned.size()) +
                                       ", expected " + std::to_string(dim()));
  }
  std::vector<double> out(source_dim_, 0.0);
  for (std::size_t k = 0; k < aligned.size(); ++k) out[perm_[k]] = aligned[k];
  return out;
}

ProbVector validate_dist(std::span<const double> probs) {
  const ProbStats stats = scan_probs(probs);
  return build_sorted(probs, stats.sum, probs.size());
}

ProbVector validate_dist(const RawDist& raw) { return validate_dist(raw.values); }

namespace {

std::vector<double> shifted_exp(std::span<const double> logits) {
  if (logits.empty()) fail(Errc::kEmptyInput, "distribution has no entries");
  double top = -INFINITY;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    if (!std::isfinite(logits[i])) {
      fail(Errc::kNonFiniteLogit,
           "logit " + std::to_string(i) + " is not finite");
    }
    top = std::max(top, logits[i]);
  }
  std::vector<double> out(logits.size());
  for (std::size_t i = 0; i < logits.size(); ++i) {
    out[i] = std::exp(logits[i] - top);
  }
  return out;
}

}  // namespace

ProbVector from_logits(std::span<const double> logits) {
  const std::vector<double> weights = shifted_exp(logits);
  const ProbStats stats = scan_probs(weights);
  return build_sorted(weights, stats.sum, weights.size());
}

ProbVector from_logits(const RawDist& raw) { return from_logits(raw.values); }

ProbVector ingest(const RawDist& raw) {
  return raw.kind == DistKind::kLogits ? from_logits(raw) : validate_dist(raw);
}

double tv_distance(std::span<const double> p, std::span<const double> q) {
  if (p.size() != q.size()) {
    fail(Errc::kDimensionMismatch, "tv_distance between lengths " +
                                       std::to_string(p.size()) + " and " +
                                       std::to_string(q.size()));
  }
  double sp = 0.0, sq = 0.0, l1 = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 0.0 || q[i] < 0.0) {
      fail(Errc::kNotADistribution, "negative entry in tv_distance input");
    }
    sp += p[i];
    sq += q[i];
    l1 += std::abs(p[i] - q[i]);
  }
  if (std::abs(sp - 1.0) > 1e-9 || std::abs(sq - 1.0) > 1e-9) {
    fail(Errc::kNotADistribution, "tv_distance input does not sum to 1");
  }
  return std::min(1.0, 0.5 * l1);
}

double probability_of(const RawDist& raw, std::size_t id) {
  if (id >= raw.values.size()) {
    fail(Errc::kDimensionMismatch,
         "token " + std::to_string(id) + " outside a distribution of size " +
             std::to_string(raw.values.size()));
  }
  if (raw.kind == DistKind::kLogits) {
    const std::vector<double> weights = shifted_exp(raw.values);
    return weights[id] / scan_probs(weights).sum;
  }
  return raw.values[id] / scan_probs(raw.values).sum;
}

}  // namespace decgame
