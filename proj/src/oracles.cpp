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

#include "decgame/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <limits>
#include <string>

#include "json.hpp"

#include "decgame/adversary.hpp"
#include "decgame/error.hpp"
#include "decgame/format.hpp"
#include "decgame/strategist.hpp"
#include "decgame/synthetic.hpp"

namespace decgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void enumerate(std::size_t n, std::size_t dim, std::size_t at,
               std::size_t left, std::vector<std::size_t>& counts,
               const std::function<void(std::span<const std::size_t>)>& visit) {
  if (at + 1 == dim) {
    counts[at] = left;
    visit(counts);
    return;
  }
  for (std::size_t k = 0; k <= left; ++k) {
    counts[at] = k;
    enumerate(n, dim, at + 1, left - k, counts, visit);
  }
}

double utility(std::span<const double> q, std::span<const double> p,
               const Objective& obj) {
  return expected_utility(q, p, obj);
}

}  // namespace

GridSpec GridSpec::make(double step, std::size_t dim) {
  if (dim == 0) fail(Errc::kBadConfig, "grid dimension must be positive");
  if (dim > 4) {
    fail(Errc::kTooLarge,
         "grid oracles support dim <= 4, got " + std::to_string(dim));
  }
  if (!(step > 0.0 && step <= 0.25)) {
    fail(Errc::kBadConfig, "grid step must lie in (0, 0.25]");
  }
  const double inv = 1.0 / step;
  const double n = std::round(inv);
  if (std::abs(n - inv) > 1e-9 * inv) {
    fail(Errc::kBadConfig, "grid step must divide 1 evenly");
  }
  return GridSpec(static_cast<std::size_t>(n), dim);
}

std::size_t GridSpec::point_count() const {
  // C(n + dim - 1, dim - 1)
  std::size_t c = 1;
  for (std::size_t k = 1; k < dim_; ++k) c = c * (n_ + k) / k;
  return c;
}

void GridSpec::for_each_counts(
    const std::function<void(std::span<const std::size_t>)>& visit) const {
  std::vector<std::size_t> counts(dim_);
  enumerate(n_, dim_, 0, n_, counts, visit);
}

void GridSpec::for_each(
    const std::function<void(std::span<const double>)>& visit) const {
  std::vector<double> point(dim_);
  const double n = static_cast<double>(n_);
  for_each_counts([&](std::span<const std::size_t> counts) {
    for (std::size_t k = 0; k < dim_; ++k) point[k] = counts[k] / n;
    visit(point);
  });
}

std::vector<std::vector<double>> vertex_enumerate(const ProbVector& p,
                                                  double eps,
                                                  AssumptionCase which) {
  const auto probs = p.probs();
  const std::size_t d = probs.size();
  if (d > 64) {
    fail(Errc::kTooLarge, "vertex enumeration supports dim <= 64");
  }
  const std::vector<double> base(probs.begin(), probs.end());
  std::vector<std::vector<double>> out;
  if (eps == 0.0 || d == 1) {
    out.push_back(base);
    return out;
  }
  auto transfer = [&](std::size_t i, std::size_t j, double amount) {
    std::vector<double> v = base;
    v[i] -= amount;
    v[j] += amount;
    if (v[i] < 0.0) v[i] = 0.0;
    out.push_back(std::move(v));
  };
  for (std::size_t i = 0; i < d; ++i) {
    double amount = eps;
    if (which == AssumptionCase::kCaseI && !(probs[i] > eps)) continue;
    if (which == AssumptionCase::kRelaxed) amount = std::min(eps, probs[i]);
    for (std::size_t j = 0; j < d; ++j) {
      if (j != i) transfer(i, j, amount);
    }
  }
  if (which == AssumptionCase::kCaseI) {
    for (std::size_t j = 0; j < d; ++j) {
      if (probs[j] <= eps) transfer(j, j == 0 ? 1 : 0, probs[j]);
    }
  }
  return out;
}

BallMinResult brute_min_over_ball(std::span<const double> q, const ProbVector& p,
                                  double eps, const Objective& obj,
                                  const GridSpec& grid) {
  const auto probs = p.probs();
  const std::size_t d = probs.size();
  if (grid.dim() != d) {
    fail(Errc::kDimensionMismatch, "grid dimension differs from distribution");
  }
  check_strategy(q, d);
  const std::size_t n = grid.divisions();
  std::vector<double> f_table(n + 1);
  for (std::size_t k = 0; k <= n; ++k) {
    f_table[k] = obj.value(static_cast<double>(k) / static_cast<double>(n));
  }

  BallMinResult r;
  r.grid_value = kInf;
  const double l1_limit = 2.0 * eps + 1e-12;
  grid.for_each_counts([&](std::span<const std::size_t> counts) {
    double l1 = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      l1 += std::abs(static_cast<double>(counts[k]) / n - probs[k]);
    }
    if (l1 > l1_limit) return;
    ++r.grid_points_in_ball;
    double v = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      if (q[k] != 0.0) v += q[k] * f_table[counts[k]];
    }
    if (v < r.grid_value) {
      r.grid_value = v;
      r.grid_argmin.assign(d, 0.0);
      for (std::size_t k = 0; k < d; ++k) {
        r.grid_argmin[k] = static_cast<double>(counts[k]) / n;
      }
    }
  });

  const AssumptionCase which = classify_assumption(obj, p, eps).which;
  r.vertex_value = kInf;
  for (const auto& v : vertex_enumerate(p, eps, which)) {
    const double val = utility(q, v, obj);
    if (val < r.vertex_value) {
      r.vertex_value = val;
      r.vertex_argmin = v;
    }
  }

  // A grid point within 4 (d - 1) step of the best vertex lies in the ball
  // once eps >= (d - 1) step; bound the objective change along that path.
  const double step = grid.step();
  r.slack = kInf;
  if (d == 1) {
    r.slack = 0.0;
  } else if (std::isfinite(r.vertex_value) &&
             eps >= static_cast<double>(d - 1) * step) {
    double lipschitz = 0.0;
    for (std::size_t k = 0; k < d; ++k) {
      if (q[k] == 0.0) continue;
      const double lo = std::min(probs[k], r.vertex_argmin[k]) - step;
      lipschitz = std::max(lipschitz,
                           lo > 0.0 ? q[k] * obj.derivative(lo) : kInf);
    }
    r.slack = lipschitz * 4.0 * static_cast<double>(d - 1) * step;
  }
  if (r.grid_points_in_ball > 0) {
    r.disagreement = r.grid_value < r.vertex_value - 1e-9 ||
                     r.grid_value > r.vertex_value + r.slack;
  }
  return r;
}

MaxQResult brute_max_q(const ProbVector& p, double eps, const Objective& obj,
                       const GridSpec& grid) {
  const std::size_t d = p.dim();
  if (grid.dim() != d) {
    fail(Errc::kDimensionMismatch, "grid dimension differs from distribution");
  }
  const AssumptionReport rep = classify_assumption(obj, p, eps);
  const GapTable gaps = GapTable::build(p, eps, obj);
  MaxQResult r;
  r.relaxed = rep.which == AssumptionCase::kRelaxed;
  r.value = -kInf;
  bool first = true;
  grid.for_each([&](std::span<const double> q) {
    const double v = inner_min_value(q, p, gaps, obj, rep.which);
    if (first || v > r.value) {
      r.value = v;
      r.argmax.assign(q.begin(), q.end());
      first = false;
    }
  });

  // The inner minimum is Lipschitz in q (L1) with constant
  // max |f| + max(g-, g+) over entries that may carry mass.
  const std::size_t massable =
      rep.which == AssumptionCase::kCaseI ? rep.i_hat : d;
  double lipschitz = 0.0, gap = 0.0;
  for (std::size_t k = 0; k < massable; ++k) {
    lipschitz = std::max(lipschitz, std::abs(gaps.f[k]));
    gap = std::max({gap, gaps.minus[k], gaps.plus[k]});
  }
  r.slack = (lipschitz + gap) * 2.0 * static_cast<double>(d - 1) * grid.step();
  return r;
}

namespace {

double third_derivative_bound(const Objective& obj, double x) {
  if (obj.is_log()) return 2.0 / (x * x * x);
  const double s = 1.0 / obj.tau();
  return s * (s + 1.0) * std::pow(x, -s - 2.0);
}

}  // namespace

std::vector<FiniteDiffEntry> finite_diff_check(const Objective& obj,
                                               std::span<const double> points) {
  constexpr double h = 1e-5;
  std::vector<FiniteDiffEntry> out;
  out.reserve(points.size());
  for (double x : points) {
    FiniteDiffEntry e;
    e.x = x;
    e.analytic = obj.derivative(x);
    e.numeric = (obj.value(x + h) - obj.value(x - h)) / (2.0 * h);
    e.abs_error = std::abs(e.analytic - e.numeric);
    e.rel_error = e.abs_error / std::abs(e.analytic);
    const double truncation = h * h / 6.0 * third_derivative_bound(obj, x - h);
    const double rounding =
        4.0 * std::numeric_limits<double>::epsilon() *
        (1.0 + std::abs(obj.value(x))) / (2.0 * h);
    e.bound = truncation + rounding;
    e.ok = e.abs_error <= e.bound;
    out.push_back(e);
  }
  return out;
}

std::string instance_hash(const ProbVector& p, double eps, const Objective& obj) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  auto mix = [&hash](const void* data, std::size_t size) {
    const auto* bytes = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
      hash ^= bytes[i];
      hash *= 0x100000001b3ULL;
    }
  };
  auto mix_u64 = [&mix](std::uint64_t v) {
    unsigned char le[8];
    for (int i = 0; i < 8; ++i) le[i] = static_cast<unsigned char>(v >> (8 * i));
    mix(le, 8);
  };
  auto mix_double = [&mix_u64](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, sizeof bits);
    mix_u64(bits);
  };
  mix_u64(p.dim());
  for (double x : p.probs()) mix_double(x);
  mix_double(eps);
  const std::string name = obj.name();
  mix(name.data(), name.size());
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(hash));
  return buf;
}

std::string format_oracle_record(const OracleRecord& rec) {
  std::string out = "{\"hash\":" + json_string(rec.hash);
  out += ",\"d\":" + std::to_string(rec.dim);
  out += ",\"eps\":" + json_number(rec.epsilon);
  out += ",\"closed_form\":" + json_number(rec.closed_form);
  out += ",\"grid_value\":" + json_number(rec.grid_value);
  out += ",\"vertex_value\":" + json_number(rec.vertex_value);
  out += ",\"slack\":" + json_number(rec.slack);
  out += std::string(",\"ok\":") + (rec.ok ? "true" : "false") + "}";
  return out;
}

namespace {

double read_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return kInf;
    if (s == "-inf") return -kInf;
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  fail(Errc::kParseError, "expected a number");
}

}  // namespace

OracleRecord parse_oracle_record(const std::string& line) {
  try {
    const nlohmann::json j = nlohmann::json::parse(line);
    OracleRecord rec;
    rec.hash = j.at("hash").get<std::string>();
    rec.dim = j.at("d").get<std::size_t>();
    rec.epsilon = read_number(j.at("eps"));
    rec.closed_form = read_number(j.at("closed_form"));
    rec.grid_value = read_number(j.at("grid_value"));
    rec.vertex_value = read_number(j.at("vertex_value"));
    rec.slack = read_number(j.at("slack"));
    rec.ok = j.at("ok").get<bool>();
    return rec;
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::kParseError, std::string("oracle record: ") + e.what());
  }
}

VerifySummary run_verification(const VerifyOptions& options) {
  if (options.dims.empty()) fail(Errc::kBadConfig, "no dimensions given");
  for (std::size_t d : options.dims) {
    if (d < 2) fail(Errc::kBadConfig, "verification needs dim >= 2");
    GridSpec::make(options.step, d);
  }
  const Objective obj = Objective::log();
  UniformSource rng(options.seed);
  VerifySummary summary;
  for (std::size_t n = 0; n < options.instances; ++n) {
    const std::size_t d = options.dims[n % options.dims.size()];
    const ProbVector p = validate_dist(random_simplex(d, rng));
    const auto probs = p.probs();
    // eps uniform in [p_min, p_max)
    const double eps = probs[d - 1] + rng.next() * (probs[0] - probs[d - 1]);
    const GridSpec grid = GridSpec::make(options.step, d);

    const GameSolution sol = optimal_q(p, eps, obj);
    const MaxQResult outer = brute_max_q(p, eps, obj, grid);
    const BallMinResult inner = brute_min_over_ball(sol.q, p, eps, obj, grid);

    OracleRecord rec;
    rec.hash = instance_hash(p, eps, obj);
    rec.dim = d;
    rec.epsilon = eps;
    rec.closed_form = sol.value;
    rec.grid_value = outer.value;
    rec.vertex_value = inner.vertex_value;
    rec.slack = outer.slack;
    const double tol = 1e-10 * std::max(1.0, std::abs(sol.value));
    const bool outer_ok = sol.value >= outer.value - 1e-9 &&
                          sol.value <= outer.value + outer.slack;
    const bool vertex_ok = std::abs(inner.vertex_value - sol.value) <= tol;
    rec.ok = outer_ok && vertex_ok && !inner.disagreement;
    if (!rec.ok) ++summary.failures;
    ++summary.instances;
    summary.records.push_back(rec);
  }
  return summary;
}

}  // namespace decgame
