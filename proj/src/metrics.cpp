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

#include "decgame/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

#include "decgame/error.hpp"
#include "decgame/format.hpp"

namespace decgame {

bool repetition_flag(std::span<const std::size_t> tokens) {
  if (tokens.empty()) fail(Errc::kEmptyInput, "empty token sequence");
  const std::size_t n = tokens.size();
  for (std::size_t len = 1; 2 * len <= n; ++len) {
    std::size_t run = 0;
    for (std::size_t j = 0; j + len < n; ++j) {
      run = tokens[j] == tokens[j + len] ? run + 1 : 0;
      if (run >= len) return true;
    }
  }
  return false;
}

double sequence_perplexity(std::span<const StepRecord> steps) {
  if (steps.empty()) fail(Errc::kEmptyInput, "no steps to score");
  double total = 0.0;
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const double p = probability_of(steps[i].dist, steps[i].chosen);
    if (!(p > 0.0)) {
      fail(Errc::kZeroProbabilityChosen,
           "step " + std::to_string(i) + " chose a zero-probability token");
    }
    total -= std::log(p);
  }
  return std::exp(total / static_cast<double>(steps.size()));
}

double entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double x : probs) {
    if (x > 0.0) h -= x * std::log(x);
  }
  return h;
}

double entropy(const ProbVector& p) { return entropy(p.probs()); }

double surprisal(const ProbVector& p, std::size_t k) {
  if (k >= p.dim()) fail(Errc::kDimensionMismatch, "index past the support");
  return -std::log(p[k]);
}

SurprisalTest surprisal_support_test(const ProbVector& p, std::size_t candidate,
                                     double eps) {
  if (candidate == 0 || candidate >= p.dim()) {
    fail(Errc::kDimensionMismatch, "candidate must lie in [1, dim)");
  }
  const auto head = p.probs().first(candidate);
  double mass = 0.0;
  for (double x : head) mass += x;
  std::vector<double> renormalized(head.begin(), head.end());
  for (double& x : renormalized) x /= mass;
  SurprisalTest t;
  t.surprisal = surprisal(p, candidate);
  t.head_entropy = entropy(renormalized);
  t.offset = -std::log(mass) + eps / mass;
  t.keep = t.surprisal <= t.head_entropy + t.offset;
  return t;
}

namespace {

double quantile(const std::vector<std::size_t>& sorted, double level) {
  const double pos = level * static_cast<double>(sorted.size() - 1);
  const std::size_t lo = static_cast<std::size_t>(std::floor(pos));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  const double frac = pos - static_cast<double>(lo);
  return static_cast<double>(sorted[lo]) * (1.0 - frac) +
         static_cast<double>(sorted[hi]) * frac;
}

}  // namespace

TruncationProfile profile_from_sizes(std::vector<std::size_t> sizes) {
  TruncationProfile prof;
  prof.support_sizes = std::move(sizes);
  if (prof.support_sizes.empty()) return prof;
  std::vector<std::size_t> sorted = prof.support_sizes;
  std::sort(sorted.begin(), sorted.end());
  prof.min = sorted.front();
  prof.max = sorted.back();
  double sum = 0.0;
  for (std::size_t s : sorted) sum += static_cast<double>(s);
  prof.mean = sum / static_cast<double>(sorted.size());
  for (double level : {0.1, 0.25, 0.5, 0.75, 0.9}) {
    prof.quantiles.emplace_back(level, quantile(sorted, level));
  }
  std::map<std::size_t, std::size_t> bins;
  for (std::size_t s : sorted) {
    std::size_t lo = 1;
    while (lo * 2 <= s) lo *= 2;
    ++bins[lo];
  }
  prof.histogram.assign(bins.begin(), bins.end());
  return prof;
}

std::string TruncationProfile::table() const {
  std::string out = "step\tsupport_size\n";
  for (std::size_t i = 0; i < support_sizes.size(); ++i) {
    out += std::to_string(i) + '\t' + std::to_string(support_sizes[i]) + '\n';
  }
  out += "\nbin_lo\tbin_hi\tcount\n";
  for (const auto& [lo, count] : histogram) {
    out += std::to_string(lo) + '\t' + std::to_string(2 * lo - 1) + '\t' +
           std::to_string(count) + '\n';
  }
  return out;
}

TruncationProfile truncation_profile(std::span<const RawDist> stream,
                                     const SamplerConfig& cfg) {
  std::vector<std::size_t> sizes;
  sizes.reserve(stream.size());
  for (const RawDist& raw : stream) {
    sizes.push_back(truncate(cfg, raw).support_size());
  }
  return profile_from_sizes(std::move(sizes));
}

MetricsReport analyze_corpus(std::span<const AnalyzedStep> steps) {
  MetricsReport report;
  std::vector<std::string> order;
  std::map<std::string, std::vector<const AnalyzedStep*>> groups;
  for (const AnalyzedStep& s : steps) {
    if (s.prompt) continue;
    auto [it, fresh] = groups.try_emplace(s.seq);
    if (fresh) order.push_back(s.seq);
    it->second.push_back(&s);
  }
  double nll = 0.0;
  std::size_t scored = 0;
  bool all_scored = true;
  std::size_t repeated = 0;
  std::vector<std::size_t> sizes;
  for (const std::string& seq : order) {
    const auto& members = groups[seq];
    SequenceMetrics m;
    m.seq = seq;
    m.length = members.size();
    std::vector<std::size_t> tokens;
    std::vector<StepRecord> records;
    for (const AnalyzedStep* s : members) {
      tokens.push_back(s->token);
      if (s->support_size) sizes.push_back(*s->support_size);
      if (!s->dist) continue;
      const double p = probability_of(*s->dist, s->token);
      if (!(p > 0.0)) {
        fail(Errc::kZeroProbabilityChosen,
             "sequence " + seq + " chose a zero-probability token");
      }
      report.surprisal_series.push_back(-std::log(p));
      report.entropy_series.push_back(entropy(ingest(*s->dist)));
      records.push_back({*s->dist, s->token, s->support_size});
    }
    m.repetition = repetition_flag(tokens);
    if (m.repetition) ++repeated;
    if (records.size() == members.size()) {
      m.perplexity = sequence_perplexity(records);
      for (const StepRecord& r : records) nll -= std::log(probability_of(r.dist, r.chosen));
      scored += records.size();
    } else {
      all_scored = false;
    }
    report.sequences.push_back(std::move(m));
  }
  if (all_scored && scored > 0) {
    report.perplexity = std::exp(nll / static_cast<double>(scored));
  }
  if (!order.empty()) {
    report.repetition_frequency =
        static_cast<double>(repeated) / static_cast<double>(order.size());
  }
  report.support_size_series = sizes;
  if (!sizes.empty()) report.profile = profile_from_sizes(sizes);
  return report;
}

}  // namespace decgame
