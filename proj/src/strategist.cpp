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

#include "decgame/strategist.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "decgame/error.hpp"

namespace decgame {

std::string_view to_string(SolveMode mode) {
  switch (mode) {
    case SolveMode::kExact: return "exact";
    case SolveMode::kFirstOrder: return "first-order";
    case SolveMode::kRelaxed: return "relaxed";
  }
  return "exact";
}

SolveMode parse_solve_mode(std::string_view text) {
  if (text == "exact") return SolveMode::kExact;
  if (text == "first-order" || text == "first_order") {
    return SolveMode::kFirstOrder;
  }
  if (text == "relaxed") return SolveMode::kRelaxed;
  fail(Errc::kBadConfig, "mode must be exact, first-order or relaxed, got '" +
                             std::string(text) + "'");
}

ThresholdScanner::ThresholdScanner(const Objective& obj, double eps,
                                   SolveMode mode, bool paper_literal)
    : obj_(obj),
      eps_(eps),
      mode_(mode),
      literal_(paper_literal && !obj.is_log() && mode == SolveMode::kRelaxed),
      bound_(mode == SolveMode::kExact ? 1.0 : eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    fail(Errc::kDomainError, "epsilon must lie in [0, 1]");
  }
}

bool ThresholdScanner::offer(double p) {
  if (closed_) return false;
  const double a = 1.0 - 1.0 / obj_.tau();
  if (accepted_ > 0) {
    if (eps_ == 0.0 && mode_ != SolveMode::kExact) {
      // A zero radius leaves nothing to hedge against.
      closed_ = true;
      return false;
    }
    double s = 0.0;
    double scale = 0.0;
    if (literal_) {
      const double scaled = std::exp(-a * std::log(p)) * b_sum_;
      s = (a_sum_ - scaled) / a;
      scale = (std::abs(a_sum_) + std::abs(scaled)) / std::abs(a);
    } else {
      const double f = obj_.value(p);
      s = a_sum_ - f * b_sum_;
      scale = std::abs(a_sum_) + std::abs(f * b_sum_);
    }
    s_values_.push_back(s);
    bool keep = s <= bound_ + 1e-12 * std::max(1.0, scale);
    if (mode_ != SolveMode::kRelaxed && !(p > eps_)) keep = false;
    if (!keep) {
      closed_ = true;
      return false;
    }
  } else {
    s_values_.push_back(0.0);
  }
  if (literal_) {
    a_sum_ += p;
    b_sum_ += std::exp((1.0 + a) * std::log(p));
  } else {
    double w = 0.0;
    if (mode_ == SolveMode::kExact) {
      w = 1.0 / obj_.gap_minus(p, eps_);
    } else {
      w = obj_.is_log() ? p : std::exp(std::log(p) / obj_.tau());
    }
    a_sum_ += w * obj_.value(p);
    b_sum_ += w;
  }
  ++accepted_;
  return true;
}

namespace {

AssumptionReport require_game_case(const ProbVector& p, double eps,
                                   const Objective& obj) {
  AssumptionReport rep = classify_assumption(obj, p, eps);
  if (rep.which == AssumptionCase::kRelaxed) {
    fail(Errc::kAssumptionViolated,
         "exact solve needs case_i or case_ii (" + rep.reason + ")");
  }
  return rep;
}

ThresholdScan run_scan(const ProbVector& p, double eps, const Objective& obj,
                       SolveMode mode, bool paper_literal) {
  ThresholdScanner scanner(obj, eps, mode, paper_literal);
  for (double x : p.probs()) {
    if (!scanner.offer(x)) break;
  }
  return {scanner.accepted(), scanner.s_values()};
}

}  // namespace

ThresholdScan threshold_scan(const ProbVector& p, double eps,
                             const Objective& obj, SolveMode mode,
                             bool paper_literal) {
  if (mode == SolveMode::kExact) require_game_case(p, eps, obj);
  return run_scan(p, eps, obj, mode, paper_literal);
}

std::size_t threshold_index(const ProbVector& p, double eps,
                            const Objective& obj, SolveMode mode) {
  return threshold_scan(p, eps, obj, mode).support_size;
}

std::vector<double> first_order_masses(std::span<const double> prefix,
                                       const Objective& obj) {
  std::vector<double> out(prefix.begin(), prefix.end());
  if (!obj.is_log()) {
    const double top = std::log(prefix[0]);
    for (double& x : out) x = std::exp((std::log(x) - top) / obj.tau());
  }
  double sum = 0.0;
  for (double x : out) sum += x;
  for (double& x : out) x /= sum;
  return out;
}

GameSolution optimal_q(const ProbVector& p, double eps, const Objective& obj) {
  GameSolution sol;
  sol.mode = SolveMode::kExact;
  sol.assumption = require_game_case(p, eps, obj);
  ThresholdScan scan = run_scan(p, eps, obj, SolveMode::kExact, false);
  const std::size_t d = p.dim();
  if (sol.assumption.which == AssumptionCase::kCaseII && scan.support_size == d) {
    fail(Errc::kAssumptionViolated, "case_ii threshold reached the last entry");
  }
  const GapTable gaps = GapTable::build(p, eps, obj);
  sol.support_size = scan.support_size;
  sol.s_values = std::move(scan.s_values);
  sol.weights.resize(sol.support_size);
  double total = 0.0;
  for (std::size_t i = 0; i < sol.support_size; ++i) {
    sol.weights[i] = eps / gaps.minus[i];
    total += sol.weights[i];
  }
  sol.q.assign(d, 0.0);
  for (std::size_t i = 0; i < sol.support_size; ++i) {
    sol.q[i] = sol.weights[i] / total;
  }
  sol.adversary = inner_min(sol.q, p, gaps, obj, sol.assumption.which);
  sol.value = sol.adversary.value;
  return sol;
}

GameSolution first_order_q(const ProbVector& p, double eps,
                           const Objective& obj, SolveMode mode) {
  if (mode == SolveMode::kExact) return optimal_q(p, eps, obj);
  GameSolution sol;
  sol.mode = mode;
  sol.assumption = classify_assumption(obj, p, eps);
  ThresholdScan scan = run_scan(p, eps, obj, mode, false);
  sol.support_size = scan.support_size;
  sol.s_values = std::move(scan.s_values);
  const auto prefix = p.probs().first(sol.support_size);
  sol.weights.resize(sol.support_size);
  for (std::size_t i = 0; i < sol.support_size; ++i) {
    sol.weights[i] =
        obj.is_log() ? prefix[i] : std::exp(std::log(prefix[i]) / obj.tau());
  }
  const std::vector<double> masses = first_order_masses(prefix, obj);
  sol.q.assign(p.dim(), 0.0);
  std::copy(masses.begin(), masses.end(), sol.q.begin());
  sol.adversary = inner_min(sol.q, p, eps, obj, sol.assumption.which);
  sol.value = sol.adversary.value;
  return sol;
}

GameSolution solve(const ProbVector& p, double eps, const Objective& obj,
                   SolveMode mode) {
  return mode == SolveMode::kExact ? optimal_q(p, eps, obj)
                                   : first_order_q(p, eps, obj, mode);
}

double game_value(const ProbVector& p, double eps, const Objective& obj) {
  return optimal_q(p, eps, obj).value;
}

KktCertificate kkt_certificate(std::span<const double> q, const ProbVector& p,
                               double eps, const Objective& obj) {
  const std::size_t d = p.dim();
  check_strategy(q, d);
  KktCertificate cert;
  cert.lambda_star.assign(d, 0.0);
  cert.gamma.assign(d, 0.0);
  auto reject = [&cert](std::string why) {
    cert.feasible = false;
    cert.violation = std::move(why);
    return cert;
  };

  const AssumptionReport rep = classify_assumption(obj, p, eps);
  if (rep.which == AssumptionCase::kRelaxed) {
    return reject("no certificate outside case_i/case_ii (" + rep.reason + ")");
  }
  const bool case_ii = rep.which == AssumptionCase::kCaseII;
  const GapTable gaps = GapTable::build(p, eps, obj);
  const std::size_t candidates = case_ii ? d : rep.i_hat;
  for (std::size_t k = candidates; k < d; ++k) {
    if (q[k] > 0.0) {
      return reject("mass on zeroable entry " + std::to_string(k) +
                    " (value is -inf)");
    }
  }

  double level = 0.0;
  for (std::size_t k = 0; k < candidates; ++k) {
    level = std::max(level, q[k] * gaps.minus[k]);
  }
  const double level_tol = 1e-10 * std::max(1.0, level);
  for (std::size_t k = 0; k < candidates; ++k) {
    if (std::abs(q[k] * gaps.minus[k] - level) <= level_tol) {
      cert.active.push_back(k);
    } else if (q[k] <= 1e-10) {
      cert.inactive.push_back(k);
    } else {
      return reject("entry " + std::to_string(k) +
                    " sits strictly between zero and the max level");
    }
  }
  if (case_ii && q[d - 1] > 1e-10) {
    return reject("last entry carries mass in case_ii");
  }

  double inv_sum = 0.0, f_sum = 0.0;
  for (std::size_t k : cert.active) {
    inv_sum += 1.0 / gaps.minus[k];
    f_sum += gaps.f[k] / gaps.minus[k];
  }
  const double nu = (f_sum - 1.0) / inv_sum;
  cert.nu_star = nu;

  double gamma_sum = 0.0;
  double residual = 0.0;
  for (std::size_t k : cert.active) {
    cert.gamma[k] = (gaps.f[k] - nu) / gaps.minus[k];
    gamma_sum += cert.gamma[k];
  }
  for (std::size_t k : cert.active) {
    residual = std::max(
        residual, std::abs(-gaps.f[k] + gaps.minus[k] * cert.gamma[k] + nu));
  }
  for (std::size_t k : cert.inactive) {
    const bool recipient = case_ii && k == d - 1;
    const double inflow = recipient ? gaps.plus[k] : 0.0;
    cert.lambda_star[k] = nu - gaps.f[k] - inflow;
    const double r = -gaps.f[k] - (recipient ? inflow * gamma_sum : 0.0) -
                     cert.lambda_star[k] + nu;
    residual = std::max(residual, std::abs(r));
    residual = std::max(residual, std::abs(q[k] * cert.lambda_star[k]));
  }
  cert.stationarity_residual = residual;
  double scale = std::max(1.0, std::abs(nu));
  for (std::size_t k : cert.active) scale = std::max(scale, std::abs(gaps.f[k]));
  for (std::size_t k : cert.inactive) scale = std::max(scale, std::abs(gaps.f[k]));

  for (std::size_t k : cert.inactive) {
    if (cert.lambda_star[k] < -1e-10 * scale) {
      return reject("lambda " + std::to_string(k) + " is negative");
    }
  }
  for (std::size_t k : cert.active) {
    if (cert.gamma[k] < -1e-10) {
      return reject("gamma " + std::to_string(k) + " is negative");
    }
  }
  if (std::abs(gamma_sum - 1.0) > 1e-10) return reject("gamma does not sum to 1");
  if (residual > 1e-8 * scale) return reject("stationarity residual too large");
  cert.feasible = true;
  return cert;
}

}  // namespace decgame
