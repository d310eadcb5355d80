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

#include "decgame/multistep.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <string>

#include "json.hpp"

#include "decgame/adversary.hpp"
#include "decgame/error.hpp"
#include "decgame/format.hpp"
#include "decgame/oracles.hpp"
#include "decgame/samplers.hpp"
#include "decgame/synthetic.hpp"

namespace decgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

void require_same_shape(const ToyMeasure& a, const ToyMeasure& b) {
  if (a.vocab_size() != b.vocab_size() || a.horizon() != b.horizon()) {
    fail(Errc::kShapeMismatch, "toy measures differ in vocabulary or horizon");
  }
}

// Reorders a vocabulary-order strategy into p's sorted order. Returns false
// when the strategy puts mass on a token p dropped as zero.
bool gather_sorted(std::span<const double> q_vocab, const ProbVector& p,
                   std::vector<double>& out) {
  out.resize(p.dim());
  for (std::size_t k = 0; k < p.dim(); ++k) out[k] = q_vocab[p.vocab_id(k)];
  if (p.dropped() == 0) return true;
  std::vector<char> kept(q_vocab.size(), 0);
  for (std::size_t id : p.perm()) kept[id] = 1;
  for (std::size_t id = 0; id < q_vocab.size(); ++id) {
    if (!kept[id] && q_vocab[id] > 0.0) return false;
  }
  return true;
}

}  // namespace

ToyMeasure::ToyMeasure(std::size_t d, std::size_t horizon)
    : d_(d), horizon_(horizon) {
  if (d < 1 || horizon < 1) {
    fail(Errc::kBadConfig, "toy measure needs d >= 1 and T >= 1");
  }
  constexpr double kMaxEntries = 1e7;
  double count = 0.0, level = 1.0;
  offsets_.push_back(0);
  for (std::size_t t = 0; t < horizon; ++t) {
    count += level;
    if (count * static_cast<double>(d) > kMaxEntries) {
      fail(Errc::kTooLarge, "toy measure would exceed 10^7 entries");
    }
    offsets_.push_back(static_cast<std::size_t>(count));
    level *= static_cast<double>(d);
  }
  node_count_ = offsets_.back();
  data_.assign(node_count_ * d_, 1.0 / static_cast<double>(d_));
}

std::size_t ToyMeasure::node_index(std::span<const std::size_t> context) const {
  if (context.size() >= horizon_) {
    fail(Errc::kShapeMismatch, "context longer than horizon - 1");
  }
  std::size_t code = 0;
  for (std::size_t x : context) {
    if (x >= d_) fail(Errc::kShapeMismatch, "context token out of range");
    code = code * d_ + x;
  }
  return offsets_[context.size()] + code;
}

std::size_t ToyMeasure::depth_of(std::size_t node) const {
  std::size_t t = 0;
  while (node >= offsets_[t + 1]) ++t;
  return t;
}

std::vector<std::size_t> ToyMeasure::context_of(std::size_t node) const {
  const std::size_t t = depth_of(node);
  std::size_t code = node - offsets_[t];
  std::vector<std::size_t> context(t);
  for (std::size_t s = t; s > 0; --s) {
    context[s - 1] = code % d_;
    code /= d_;
  }
  return context;
}

bool ToyMeasure::is_leaf_level(std::size_t node) const {
  return depth_of(node) + 1 == horizon_;
}

std::size_t ToyMeasure::child(std::size_t node, std::size_t token) const {
  const std::size_t t = depth_of(node);
  return offsets_[t + 1] + (node - offsets_[t]) * d_ + token;
}

std::span<const double> ToyMeasure::node(std::size_t index) const {
  return std::span<const double>(data_).subspan(index * d_, d_);
}

void ToyMeasure::set_node(std::size_t index, std::span<const double> probs) {
  if (probs.size() != d_ || index >= node_count_) {
    fail(Errc::kShapeMismatch, "node update has the wrong shape");
  }
  std::copy(probs.begin(), probs.end(), data_.begin() + index * d_);
}

void ToyMeasure::validate() const {
  for (std::size_t k = 0; k < node_count_; ++k) {
    double sum = 0.0;
    bool bad = false;
    for (double x : node(k)) {
      bad = bad || !(x >= 0.0) || !std::isfinite(x);
      sum += x;
    }
    if (bad || std::abs(sum - 1.0) > 1e-9) {
      fail(Errc::kNotADistribution,
           "node " + context_string(context_of(k)) + " is not a distribution");
    }
  }
}

ToyMeasure ToyMeasure::random(std::size_t d, std::size_t horizon,
                              std::uint64_t seed) {
  ToyMeasure m(d, horizon);
  UniformSource rng(seed);
  for (std::size_t k = 0; k < m.node_count(); ++k) {
    m.set_node(k, random_simplex(d, rng));
  }
  return m;
}

std::string context_string(std::span<const std::size_t> context) {
  std::string out = "[";
  for (std::size_t i = 0; i < context.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(context[i]);
  }
  return out + "]";
}

void ToyMeasure::write(std::ostream& out) const {
  for (std::size_t k = 0; k < node_count_; ++k) {
    out << "{\"context\":" << context_string(context_of(k))
        << ",\"probs\":" << json_array(node(k)) << "}\n";
  }
}

ToyMeasure ToyMeasure::read(std::istream& in) {
  std::map<std::vector<std::size_t>, std::vector<double>> nodes;
  std::string line;
  std::size_t line_no = 0;
  std::size_t d = 0, depth = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::vector<std::size_t> context;
    std::vector<double> probs;
    try {
      const nlohmann::json j = nlohmann::json::parse(line);
      context = j.at("context").get<std::vector<std::size_t>>();
      probs = j.at("probs").get<std::vector<double>>();
    } catch (const nlohmann::json::exception& e) {
      fail(Errc::kParseError,
           "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (d == 0) d = probs.size();
    if (probs.size() != d || d == 0) {
      fail(Errc::kShapeMismatch,
           "line " + std::to_string(line_no) + ": inconsistent vocabulary size");
    }
    depth = std::max(depth, context.size());
    if (!nodes.emplace(std::move(context), std::move(probs)).second) {
      fail(Errc::kShapeMismatch,
           "line " + std::to_string(line_no) + ": duplicate context");
    }
  }
  if (nodes.empty()) fail(Errc::kEmptyInput, "no toy measure records");
  ToyMeasure m(d, depth + 1);
  if (nodes.size() != m.node_count()) {
    fail(Errc::kShapeMismatch, "expected " + std::to_string(m.node_count()) +
                                   " contexts, got " +
                                   std::to_string(nodes.size()));
  }
  for (const auto& [context, probs] : nodes) {
    m.set_node(m.node_index(context), probs);
  }
  m.validate();
  return m;
}

double eval_objective(const ToyMeasure& q, const ToyMeasure& p,
                      const Objective& obj) {
  require_same_shape(q, p);
  const std::size_t d = q.vocab_size();
  std::vector<double> value(q.node_count(), 0.0);
  for (std::size_t k = q.node_count(); k-- > 0;) {
    const bool leaf = q.is_leaf_level(k);
    const auto qk = q.node(k);
    const auto pk = p.node(k);
    double v = 0.0;
    for (std::size_t x = 0; x < d; ++x) {
      if (qk[x] == 0.0) continue;
      const double future = leaf ? 0.0 : value[q.child(k, x)];
      v += qk[x] * (obj.value(pk[x]) + future);
    }
    value[k] = v;
  }
  return value[0];
}

double eval_objective(const ToyMeasure& q, const ToyMeasure& p) {
  return eval_objective(q, p, Objective::log());
}

ToyMeasure local_mechanism(const ToyMeasure& phat, double eps,
                           const Objective& obj, SolveMode mode) {
  ToyMeasure q(phat.vocab_size(), phat.horizon());
  for (std::size_t k = 0; k < phat.node_count(); ++k) {
    const ProbVector pv = validate_dist(phat.node(k));
    GameSolution sol;
    try {
      if (mode == SolveMode::kExact && !(eps < pv[0])) {
        fail(Errc::kAssumptionViolated, "eps is not below the node maximum");
      }
      sol = solve(pv, eps, obj, mode);
    } catch (const Error& e) {
      if (e.code() != Errc::kAssumptionViolated) throw;
      fail(Errc::kAssumptionViolated,
           "context " + context_string(phat.context_of(k)) + ": " + e.what());
    }
    q.set_node(k, pv.to_vocab_order(sol.q));
  }
  return q;
}

BestResponse adversary_best_response(const ToyMeasure& q,
                                     const ToyMeasure& phat, double eps,
                                     const Objective& obj) {
  require_same_shape(q, phat);
  const std::size_t n = q.node_count();
  BestResponse out{phat, GameTrace{0.0, {}, {}, q, phat, std::nullopt}};
  GameTrace& trace = out.trace;
  trace.per_node_values.assign(n, 0.0);
  trace.reach.assign(n, 0.0);
  trace.reach[0] = 1.0;
  std::vector<double> q_sorted;
  for (std::size_t k = 0; k < n; ++k) {
    const ProbVector pv = validate_dist(phat.node(k));
    if (!gather_sorted(q.node(k), pv, q_sorted)) {
      if (!obj.diverges_at_zero()) {
        fail(Errc::kNotADistribution,
             "strategy at " + context_string(q.context_of(k)) +
                 " uses a token with zero model probability");
      }
      trace.per_node_values[k] = -kInf;
    } else {
      const AdversaryOutcome o = inner_min(q_sorted, pv, eps, obj);
      trace.per_node_values[k] = o.value;
      out.adversary.set_node(k, pv.to_vocab_order(*o.witness));
    }
    if (!q.is_leaf_level(k)) {
      const auto qk = q.node(k);
      for (std::size_t x = 0; x < q.vocab_size(); ++x) {
        trace.reach[q.child(k, x)] = trace.reach[k] * qk[x];
      }
    }
  }
  double total = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    if (trace.reach[k] == 0.0) continue;
    if (std::isinf(trace.per_node_values[k]) &&
        !trace.offending_context.has_value()) {
      trace.offending_context = q.context_of(k);
    }
    total += trace.reach[k] * trace.per_node_values[k];
  }
  trace.value = total;
  trace.adversary = out.adversary;
  return out;
}

double default_grid_step(std::size_t d) { return d <= 2 ? 0.02 : 0.05; }

DpResult dp_oracle(const ToyMeasure& phat, double eps, const Objective& obj,
                   double grid_step) {
  const std::size_t d = phat.vocab_size();
  const std::size_t horizon = phat.horizon();
  if (d > 4 || horizon > 3) {
    fail(Errc::kTooLarge, "dp oracle supports d <= 4 and T <= 3");
  }
  const GridSpec grid = GridSpec::make(grid_step, d);
  DpResult out{0.0, 0.0, grid.step(), ToyMeasure(d, horizon)};
  const std::size_t n = phat.node_count();
  std::vector<double> value(n, 0.0);
  std::vector<double> level_loss(horizon, 0.0);
  std::vector<double> q_sorted;
  for (std::size_t k = n; k-- > 0;) {
    const ProbVector pv = validate_dist(phat.node(k));
    const AssumptionCase which = classify_assumption(obj, pv, eps).which;
    const GapTable gaps = GapTable::build(pv, eps, obj);
    const bool leaf = phat.is_leaf_level(k);
    double best = -kInf;
    std::vector<double> best_q;
    auto consider = [&](std::span<const double> q) {
      double v = -kInf;
      if (gather_sorted(q, pv, q_sorted)) {
        v = inner_min_value(q_sorted, pv, gaps, obj, which);
      } else if (!obj.diverges_at_zero()) {
        fail(Errc::kBadConfig, "dp oracle needs strictly positive nodes");
      }
      if (!leaf) {
        for (std::size_t x = 0; x < d; ++x) {
          if (q[x] != 0.0) v += q[x] * value[phat.child(k, x)];
        }
      }
      if (best_q.empty() || v > best) {
        best = v;
        best_q.assign(q.begin(), q.end());
      }
    };
    grid.for_each(consider);
    // The node solutions join the grid so the result dominates the local
    // mechanism.
    for (SolveMode mode : {SolveMode::kExact, SolveMode::kRelaxed}) {
      if (mode == SolveMode::kExact && which == AssumptionCase::kRelaxed) continue;
      try {
        consider(pv.to_vocab_order(solve(pv, eps, obj, mode).q));
      } catch (const Error& e) {
        if (e.code() != Errc::kAssumptionViolated) throw;
      }
    }
    value[k] = best;
    out.strategy.set_node(k, best_q);

    double lipschitz = 0.0;
    for (std::size_t i = 0; i < pv.dim(); ++i) {
      lipschitz = std::max(lipschitz, std::abs(gaps.f[i]));
    }
    double gap = 0.0;
    for (std::size_t i = 0; i < pv.dim(); ++i) {
      if (which == AssumptionCase::kCaseI && !(pv[i] > eps)) continue;
      gap = std::max({gap, gaps.minus[i], gaps.plus[i]});
    }
    double future = 0.0;
    if (!leaf) {
      for (std::size_t x = 0; x < d; ++x) {
        future = std::max(future, std::abs(value[phat.child(k, x)]));
      }
    }
    const double loss = (lipschitz + gap + future) * 2.0 *
                        static_cast<double>(d - 1) * grid.step();
    const std::size_t t = phat.depth_of(k);
    level_loss[t] = std::max(level_loss[t], loss);
  }
  out.value = value[0];
  for (double loss : level_loss) out.slack += loss;
  return out;
}

namespace {

// Exact solve where the node admits it, first-order game masses otherwise.
ToyMeasure hedged_local(const ToyMeasure& phat, double eps,
                        const Objective& obj) {
  ToyMeasure q(phat.vocab_size(), phat.horizon());
  for (std::size_t k = 0; k < phat.node_count(); ++k) {
    const ProbVector pv = validate_dist(phat.node(k));
    const bool exact =
        classify_assumption(obj, pv, eps).which != AssumptionCase::kRelaxed;
    const GameSolution sol =
        solve(pv, eps, obj, exact ? SolveMode::kExact : SolveMode::kRelaxed);
    q.set_node(k, pv.to_vocab_order(sol.q));
  }
  return q;
}

ToyMeasure per_node_sampler(const ToyMeasure& phat, const SamplerConfig& cfg) {
  ToyMeasure q(phat.vocab_size(), phat.horizon());
  for (std::size_t k = 0; k < phat.node_count(); ++k) {
    const ProbVector pv = validate_dist(phat.node(k));
    const TruncationResult tr = truncate(cfg, pv);
    std::vector<double> row(phat.vocab_size(), 0.0);
    for (std::size_t i = 0; i < tr.support_size(); ++i) {
      row[tr.support_vocab_ids[i]] = tr.masses[i];
    }
    q.set_node(k, row);
  }
  return q;
}

// Copies the subtree under `from` over the subtree under `to`.
void copy_subtree(ToyMeasure& m, std::size_t from, std::size_t to) {
  m.set_node(to, std::vector<double>(m.node(from).begin(), m.node(from).end()));
  if (m.is_leaf_level(from)) return;
  for (std::size_t x = 0; x < m.vocab_size(); ++x) {
    copy_subtree(m, m.child(from, x), m.child(to, x));
  }
}

// Replaces every subtree at each depth by the one on which the local
// mechanism fares worst.
ToyMeasure reroot_worst(const ToyMeasure& phat, double eps,
                        const Objective& obj) {
  ToyMeasure m = phat;
  for (std::size_t t = 1; t < m.horizon(); ++t) {
    const BestResponse br =
        adversary_best_response(hedged_local(m, eps, obj), m, eps, obj);
    // Subtree values: sum over descendants weighted by reach within subtree.
    std::vector<double> subtree(m.node_count(), 0.0);
    for (std::size_t k = m.node_count(); k-- > 0;) {
      double v = br.trace.per_node_values[k];
      if (!m.is_leaf_level(k)) {
        const auto qk = br.trace.strategy.node(k);
        for (std::size_t x = 0; x < m.vocab_size(); ++x) {
          if (qk[x] != 0.0) v += qk[x] * subtree[m.child(k, x)];
        }
      }
      subtree[k] = v;
    }
    std::size_t worst = kNoNode;
    std::vector<std::size_t> level;
    for (std::size_t k = 0; k < m.node_count(); ++k) {
      if (m.depth_of(k) != t) continue;
      level.push_back(k);
      if (worst == kNoNode || subtree[k] < subtree[worst]) worst = k;
    }
    for (std::size_t k : level) {
      if (k != worst) copy_subtree(m, worst, k);
    }
  }
  return m;
}

}  // namespace

std::vector<HarnessRow> no_foresight_harness(std::size_t d, std::size_t horizon,
                                             double eps, const Objective& obj,
                                             std::size_t samples,
                                             std::uint64_t seed) {
  SamplerConfig nucleus;
  nucleus.method = Method::kNucleus;
  nucleus.top_p = 0.9;
  SamplerConfig greedy;
  greedy.method = Method::kGreedy;
  std::vector<HarnessRow> rows = {{"local", kInf, 0.0},
                                  {"nucleus(p=0.9)", kInf, 0.0},
                                  {"greedy", kInf, 0.0}};
  std::size_t evaluated = 0;
  for (std::size_t s = 0; s < samples; ++s) {
    const ToyMeasure base = ToyMeasure::random(d, horizon, seed + s);
    for (const ToyMeasure& phat : {base, reroot_worst(base, eps, obj)}) {
      const ToyMeasure strategies[] = {hedged_local(phat, eps, obj),
                                       per_node_sampler(phat, nucleus),
                                       per_node_sampler(phat, greedy)};
      for (std::size_t r = 0; r < rows.size(); ++r) {
        const double v =
            adversary_best_response(strategies[r], phat, eps, obj).trace.value;
        rows[r].min_value = std::min(rows[r].min_value, v);
        rows[r].mean_value += v;
      }
      ++evaluated;
    }
  }
  for (HarnessRow& row : rows) {
    if (evaluated) row.mean_value /= static_cast<double>(evaluated);
  }
  return rows;
}

}  // namespace decgame
