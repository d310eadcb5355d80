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

#include "decgame/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <utility>

#include "decgame/objective.hpp"
#include "decgame/strategist.hpp"

namespace decgame {

std::string_view to_string(Method method) {
  switch (method) {
    case Method::kGame: return "game";
    case Method::kGreedy: return "greedy";
    case Method::kPure: return "pure";
    case Method::kTopK: return "top_k";
    case Method::kNucleus: return "nucleus";
    case Method::kTemperature: return "temperature";
    case Method::kTypical: return "typical";
    case Method::kEta: return "eta";
  }
  return "game";
}

Method parse_method(std::string_view text) {
  if (text == "game") return Method::kGame;
  if (text == "greedy") return Method::kGreedy;
  if (text == "pure") return Method::kPure;
  if (text == "top_k" || text == "top-k") return Method::kTopK;
  if (text == "nucleus" || text == "top_p" || text == "top-p") {
    return Method::kNucleus;
  }
  if (text == "temperature") return Method::kTemperature;
  if (text == "typical") return Method::kTypical;
  if (text == "eta") return Method::kEta;
  fail(Errc::kBadConfig, "unknown sampling method '" + std::string(text) + "'");
}

void SamplerConfig::validate() const {
  auto need = [](bool ok, const char* what) {
    if (!ok) fail(Errc::kBadConfig, what);
  };
  switch (method) {
    case Method::kGame:
      need(epsilon > 0.0 && epsilon <= 1.0, "game needs 0 < eps <= 1");
      need(tau > 0.0 && std::isfinite(tau), "game needs tau > 0");
      break;
    case Method::kTemperature:
      need(tau > 0.0 && std::isfinite(tau), "temperature needs tau > 0");
      break;
    case Method::kTopK: need(top_k >= 1, "top_k needs k >= 1"); break;
    case Method::kNucleus:
    case Method::kTypical:
      need(top_p > 0.0 && top_p <= 1.0, "top_p must lie in (0, 1]");
      break;
    case Method::kEta: need(eta > 0.0 && eta < 1.0, "eta must lie in (0, 1)"); break;
    case Method::kGreedy:
    case Method::kPure: break;
  }
}

std::string SamplerConfig::tag() const {
  char buf[128];
  switch (method) {
    case Method::kGame:
      std::snprintf(buf, sizeof buf, "game(eps=%g,tau=%g%s)", epsilon, tau,
                    paper_literal_tau_branch && tau != 1.0 ? ",literal" : "");
      return buf;
    case Method::kTopK:
      std::snprintf(buf, sizeof buf, "top_k(k=%zu)", top_k);
      return buf;
    case Method::kNucleus:
      std::snprintf(buf, sizeof buf, "nucleus(p=%g)", top_p);
      return buf;
    case Method::kTemperature:
      std::snprintf(buf, sizeof buf, "temperature(tau=%g)", tau);
      return buf;
    case Method::kTypical:
      std::snprintf(buf, sizeof buf, "typical(p=%g)", top_p);
      return buf;
    case Method::kEta:
      std::snprintf(buf, sizeof buf, "eta(eta=%g)", eta);
      return buf;
    case Method::kGreedy:
    case Method::kPure: break;
  }
  return std::string(to_string(method));
}

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double RngState::uniform() const {
  std::uint64_t state = seed + stream_index;
  std::uint64_t sub = splitmix64(state);
  return static_cast<double>(splitmix64(sub) >> 11) * 0x1.0p-53;
}

namespace {

std::vector<double> normalized(std::span<const double> prefix) {
  return first_order_masses(prefix, Objective::log());
}

double entropy_of(std::span<const double> probs) {
  double h = 0.0;
  for (double x : probs) h -= x * std::log(x);
  return h;
}

TruncationResult assemble(const SamplerConfig& cfg, const ProbVector& p,
                          std::span<const std::size_t> positions,
                          std::vector<double> masses) {
  TruncationResult tr;
  tr.strategy_tag = cfg.tag();
  tr.support_vocab_ids.reserve(positions.size());
  for (std::size_t k : positions) tr.support_vocab_ids.push_back(p.vocab_id(k));
  tr.masses = std::move(masses);
  return tr;
}

TruncationResult keep_prefix(const SamplerConfig& cfg, const ProbVector& p,
                             std::size_t count, std::vector<double> masses) {
  std::vector<std::size_t> positions(count);
  for (std::size_t k = 0; k < count; ++k) positions[k] = k;
  return assemble(cfg, p, positions, std::move(masses));
}

std::size_t nucleus_count(std::span<const double> probs, double top_p) {
  if (top_p >= 1.0) return probs.size();
  double cum = 0.0;
  for (std::size_t k = 0; k < probs.size(); ++k) {
    cum += probs[k];
    if (cum >= top_p) return k + 1;
  }
  return probs.size();
}

}  // namespace

TruncationResult truncate(const SamplerConfig& cfg, const ProbVector& p) {
  cfg.validate();
  const auto probs = p.probs();
  const std::size_t d = probs.size();
  switch (cfg.method) {
    case Method::kGame: {
      const Objective obj = Objective::with_tau(cfg.tau);
      ThresholdScanner scanner(obj, cfg.epsilon, SolveMode::kRelaxed,
                               cfg.paper_literal_tau_branch);
      for (double x : probs) {
        if (!scanner.offer(x)) break;
      }
      const std::size_t count = scanner.accepted();
      return keep_prefix(cfg, p, count,
                         first_order_masses(probs.first(count), obj));
    }
    case Method::kGreedy:
      return keep_prefix(cfg, p, 1, {1.0});
    case Method::kPure:
      return keep_prefix(cfg, p, d, normalized(probs));
    case Method::kTopK: {
      const std::size_t count = std::min(cfg.top_k, d);
      return keep_prefix(cfg, p, count, normalized(probs.first(count)));
    }
    case Method::kNucleus: {
      const std::size_t count = nucleus_count(probs, cfg.top_p);
      return keep_prefix(cfg, p, count, normalized(probs.first(count)));
    }
    case Method::kTemperature:
      return keep_prefix(cfg, p, d,
                         first_order_masses(probs, Objective::with_tau(cfg.tau)));
    case Method::kTypical: {
      const double h = entropy_of(probs);
      std::vector<std::size_t> order(d);
      std::vector<double> score(d);
      for (std::size_t k = 0; k < d; ++k) {
        order[k] = k;
        score[k] = std::abs(-std::log(probs[k]) - h);
      }
      std::stable_sort(order.begin(), order.end(),
                       [&](std::size_t a, std::size_t b) {
                         return score[a] < score[b];
                       });
      std::size_t count = d;
      if (cfg.top_p < 1.0) {
        double cum = 0.0;
        for (std::size_t r = 0; r < d; ++r) {
          cum += probs[order[r]];
          if (cum >= cfg.top_p) {
            count = r + 1;
            break;
          }
        }
      }
      order.resize(count);
      std::sort(order.begin(), order.end());
      std::vector<double> kept(count);
      for (std::size_t r = 0; r < count; ++r) kept[r] = probs[order[r]];
      return assemble(cfg, p, order, normalized(kept));
    }
    case Method::kEta: {
      const double h = entropy_of(probs);
      const double cut = std::min(cfg.eta, std::sqrt(cfg.eta) * std::exp(-h));
      std::size_t count = 1;
      while (count < d && probs[count] >= cut) ++count;
      return keep_prefix(cfg, p, count, normalized(probs.first(count)));
    }
  }
  fail(Errc::kBadConfig, "unhandled sampling method");
}

namespace {

// Yields the normalized entries of a raw probability array in descending
// order (ties by index), sorting only geometric bands of values as needed.
class SortedHead {
 public:
  SortedHead(std::span<const double> values, const ProbStats& stats,
             const HeadCandidates& first)
      : values_(values), sum_(stats.sum), first_(&first) {
    upper_ = std::numeric_limits<double>::infinity();
    lower_ = stats.max / stats.sum;
  }

  bool next(double& p, std::size_t& id) {
    while (pos_ == band_.size()) {
      if (done_) return false;
      refill();
    }
    p = band_[pos_].first;
    id = band_[pos_].second;
    ++pos_;
    return true;
  }

  static constexpr double kRatio = 1.0 / 64.0;

 private:
  static constexpr int kMaxBands = 4;

  void refill() {
    band_.clear();
    pos_ = 0;
    ++bands_;
    lower_ *= kRatio;
    if (bands_ >= kMaxBands) lower_ = 0.0;
    // Cheap screen in raw units, then the exact test on the normalized value.
    const double raw_lower = lower_ * sum_ * (1.0 - 1e-12);
    const double raw_upper = upper_ * sum_ * (1.0 + 1e-12);
    auto consider = [&](std::size_t i) {
      const double x = values_[i];
      if (x >= raw_lower && x <= raw_upper && x > 0.0) {
        const double p = x / sum_;
        if (p >= lower_ && p < upper_) band_.emplace_back(p, i);
      }
    };
    // The first band was gathered while validating.
    if (bands_ == 1 && !first_->overflow) {
      for (std::size_t i : first_->ids) consider(i);
    } else {
      for (std::size_t i = 0; i < values_.size(); ++i) consider(i);
    }
    std::sort(band_.begin(), band_.end(), [](const auto& a, const auto& b) {
      return ranks_before(a.first, a.second, b.first, b.second);
    });
    upper_ = lower_;
    if (lower_ == 0.0) done_ = true;
  }

  std::span<const double> values_;
  double sum_;
  const HeadCandidates* first_;
  double upper_;
  double lower_;
  int bands_ = 0;
  bool done_ = false;
  std::vector<std::pair<double, std::size_t>> band_;
  std::size_t pos_ = 0;
};

}  // namespace

TruncationResult truncate(const SamplerConfig& cfg, const RawDist& raw) {
  const bool head_only =
      cfg.method == Method::kGame || cfg.method == Method::kGreedy ||
      cfg.method == Method::kTopK ||
      (cfg.method == Method::kNucleus && cfg.top_p < 1.0);
  if (raw.kind != DistKind::kProbs || !head_only) {
    return truncate(cfg, ingest(raw));
  }
  cfg.validate();
  HeadCandidates first;
  first.ratio = SortedHead::kRatio;
  first.cap = 4096;
  const ProbStats stats = scan_probs(raw.values, &first);
  SortedHead head(raw.values, stats, first);
  std::vector<double> kept;
  std::vector<std::size_t> ids;
  double p = 0.0;
  std::size_t id = 0;
  std::optional<Objective> game_obj;
  std::optional<ThresholdScanner> scanner;
  if (cfg.method == Method::kGame) {
    game_obj = Objective::with_tau(cfg.tau);
    scanner.emplace(*game_obj, cfg.epsilon, SolveMode::kRelaxed,
                    cfg.paper_literal_tau_branch);
  }
  double cum = 0.0;
  while (head.next(p, id)) {
    if (scanner && !scanner->offer(p)) break;
    kept.push_back(p);
    ids.push_back(id);
    if (cfg.method == Method::kGreedy) break;
    if (cfg.method == Method::kTopK && kept.size() == cfg.top_k) break;
    if (cfg.method == Method::kNucleus) {
      cum += p;
      if (cum >= cfg.top_p) break;
    }
  }
  TruncationResult tr;
  tr.strategy_tag = cfg.tag();
  tr.support_vocab_ids = std::move(ids);
  if (cfg.method == Method::kGreedy) {
    tr.masses = {1.0};
  } else if (game_obj) {
    tr.masses = first_order_masses(kept, *game_obj);
  } else {
    tr.masses = normalized(kept);
  }
  return tr;
}

std::size_t sample_token(const TruncationResult& tr, const RngState& rng) {
  const double u = rng.uniform();
  double cum = 0.0;
  for (std::size_t k = 0; k < tr.masses.size(); ++k) {
    cum += tr.masses[k];
    if (u < cum) return tr.support_vocab_ids[k];
  }
  return tr.support_vocab_ids.back();
}

void generate_stream(const std::function<std::optional<RawDist>()>& source,
                     const std::function<void(StepOutput&&)>& sink,
                     const SamplerConfig& cfg, const GenerateOptions& options) {
  cfg.validate();
  std::uint64_t index = 0;
  while (std::optional<RawDist> raw = source()) {
    StepOutput out;
    out.index = index;
    out.id = raw->id;
    try {
      TruncationResult tr = truncate(cfg, *raw);
      out.token = sample_token(tr, RngState{options.seed, index});
      out.support_size = tr.support_size();
      if (options.keep_truncation) out.truncation = std::move(tr);
    } catch (const Error& e) {
      const std::string where = "record " + std::to_string(index) +
                                (raw->id ? " (id " + *raw->id + ")" : "");
      if (options.strict) throw Error(e.code(), where + ": " + e.detail());
      out.error_code = e.code();
      out.error = e.what();
    }
    sink(std::move(out));
    ++index;
  }
}

std::vector<StepOutput> generate(std::span<const RawDist> stream,
                                 const SamplerConfig& cfg,
                                 const GenerateOptions& options) {
  std::size_t next = 0;
  std::vector<StepOutput> outputs;
  outputs.reserve(stream.size());
  generate_stream(
      [&]() -> std::optional<RawDist> {
        if (next == stream.size()) return std::nullopt;
        return stream[next++];
      },
      [&](StepOutput&& out) { outputs.push_back(std::move(out)); }, cfg,
      options);
  return outputs;
}

}  // namespace decgame
