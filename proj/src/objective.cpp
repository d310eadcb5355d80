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

#include "decgame/objective.hpp"

#include <cmath>
#include <cstdio>
#include <limits>
#include <string>

#include "decgame/error.hpp"

namespace decgame {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_unit(double x, const char* what) {
  if (!(x >= 0.0 && x <= 1.0 + 1e-12)) {
    fail(Errc::kDomainError,
         std::string(what) + " argument " + std::to_string(x) +
             " outside [0, 1]");
  }
}

}  // namespace

Objective::Objective(Kind kind, double tau)
    : kind_(kind), tau_(tau), a_(kind == Kind::kLog ? 0.0 : 1.0 - 1.0 / tau) {
  check_shape();
}

Objective Objective::log() { return Objective(Kind::kLog, 1.0); }

Objective Objective::power(double tau) {
  if (!(tau > 0.0) || !std::isfinite(tau) || tau == 1.0) {
    fail(Errc::kBadConfig, "power objective needs tau > 0, tau != 1");
  }
  return Objective(Kind::kPower, tau);
}

Objective Objective::with_tau(double tau) {
  return tau == 1.0 ? log() : power(tau);
}

Objective Objective::parse(std::string_view text) {
  if (text == "log") return log();
  constexpr std::string_view kPrefix = "power:";
  if (text.substr(0, kPrefix.size()) == kPrefix) {
    const std::string rest(text.substr(kPrefix.size()));
    std::size_t used = 0;
    double tau = 0.0;
    try {
      tau = std::stod(rest, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != rest.size()) {
      fail(Errc::kBadConfig, "cannot parse tau in '" + std::string(text) + "'");
    }
    return with_tau(tau);
  }
  fail(Errc::kBadConfig,
       "objective must be 'log' or 'power:<tau>', got '" + std::string(text) +
           "'");
}

bool Objective::diverges_at_zero() const {
  return kind_ == Kind::kLog || a_ < 0.0;
}

void Objective::check_shape() const {
  // 64 log-spaced points on [1e-6, 1].
  constexpr int kPoints = 64;
  double prev_x = 1e-6;
  double prev_f = value(prev_x);
  for (int k = 1; k < kPoints; ++k) {
    const double x =
        k == kPoints - 1 ? 1.0 : std::pow(10.0, -6.0 + 6.0 * k / (kPoints - 1));
    const double fx = value(x);
    const double mid = value(0.5 * (x + prev_x));
    const double tol = 1e-12 * (1.0 + std::abs(fx) + std::abs(prev_f));
    if (fx < prev_f - tol || mid < 0.5 * (fx + prev_f) - tol) {
      fail(Errc::kBadConfig, name() + " is not concave non-decreasing near " +
                                 std::to_string(x));
    }
    prev_x = x;
    prev_f = fx;
  }
}

double Objective::value(double x) const {
  check_unit(x, "objective");
  if (x > 1.0) x = 1.0;
  if (kind_ == Kind::kLog) return x == 0.0 ? -kInf : std::log(x);
  if (x == 0.0) return a_ > 0.0 ? -1.0 / a_ : -kInf;
  return std::expm1(a_ * std::log(x)) / a_;
}

double Objective::derivative(double x) const {
  check_unit(x, "derivative");
  if (x == 0.0) return kInf;
  if (kind_ == Kind::kLog) return 1.0 / x;
  return std::exp(-std::log(x) / tau_);
}

double Objective::log_inverse_derivative(double x) const {
  check_unit(x, "derivative");
  return std::log(x) / tau_;
}

double Objective::gap_minus(double x, double eps) const {
  if (!(x > 0.0 && x <= 1.0 + 1e-12) || !(eps >= 0.0)) {
    fail(Errc::kDomainError, "gap_minus needs 0 < x <= 1 and eps >= 0");
  }
  if (eps == 0.0) return 0.0;
  const double y = x - eps;
  if (y <= 0.0) {
    if (diverges_at_zero()) return kInf;
    if (y < 0.0) fail(Errc::kDomainError, "gap_minus steps below zero");
    return value(x) - value(0.0);
  }
  // ln(x / y); the plain difference is is better conditioned once y < x / 2
  const double log_ratio = eps > 0.5 * x ? std::log(x) - std::log(y)
                                         : -std::log1p(-eps / x);
  if (kind_ == Kind::kLog) return log_ratio;
  return std::exp(a_ * std::log(y)) * std::expm1(a_ * log_ratio) / a_;
}

double Objective::gap_plus(double x, double eps) const {
  if (!(x >= 0.0) || !(eps >= 0.0) || x + eps > 1.0 + 1e-12) {
    fail(Errc::kDomainError, "gap_plus needs x >= 0, eps >= 0, x + eps <= 1");
  }
  if (eps == 0.0) return 0.0;
  if (x == 0.0) {
    if (diverges_at_zero()) return kInf;
    return std::exp(a_ * std::log(eps)) / a_;
  }
  const double log_ratio = std::log1p(eps / x);  // ln((x + eps) / x)
  if (kind_ == Kind::kLog) return log_ratio;
  return std::exp(a_ * std::log(x)) * std::expm1(a_ * log_ratio) / a_;
}

std::string Objective::name() const {
  if (kind_ == Kind::kLog) return "log";
  char buf[64];
  std::snprintf(buf, sizeof buf, "power:%.17g", tau_);
  return buf;
}

std::string_view to_string(AssumptionCase c) {
  switch (c) {
    case AssumptionCase::kCaseI: return "case_i";
    case AssumptionCase::kCaseII: return "case_ii";
    case AssumptionCase::kRelaxed: return "relaxed";
  }
  return "relaxed";
}

AssumptionReport classify_assumption(const Objective& obj, const ProbVector& p,
                                     double eps) {
  if (!(eps >= 0.0 && eps <= 1.0)) {
    fail(Errc::kDomainError, "epsilon must lie in [0, 1]");
  }
  const auto probs = p.probs();
  const std::size_t d = probs.size();
  AssumptionReport report;
  report.epsilon = eps;
  report.case_ii_sum = std::numeric_limits<double>::quiet_NaN();
  while (report.i_hat < d && probs[report.i_hat] > eps) ++report.i_hat;

  if (eps > 0.0 && probs[d - 1] <= eps && eps < probs[0] &&
      obj.diverges_at_zero()) {
    report.which = AssumptionCase::kCaseI;
    return report;
  }
  if (eps > 0.0 && eps < probs[d - 1] && d >= 2) {
    const double top = obj.value(probs[d - 1] + eps);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < d; ++i) {
      sum += (obj.value(probs[i]) - top) / obj.gap_minus(probs[i], eps);
    }
    report.case_ii_sum = sum;
    // Rounding slack so that sums equal to 1 in exact arithmetic still qualify.
    if (sum >= 1.0 - 1e-12 * static_cast<double>(d)) {
      report.which = AssumptionCase::kCaseII;
      return report;
    }
    report.reason = "case_ii sum " + std::to_string(sum) + " is below 1";
  } else if (eps == 0.0) {
    report.reason = "epsilon is zero";
  } else if (eps >= probs[0]) {
    report.reason = "epsilon is not below the largest probability";
  } else if (!obj.diverges_at_zero()) {
    report.reason = obj.name() + " is finite at zero and epsilon >= p_min";
  } else {
    report.reason = "no assumption case applies";
  }
  report.which = AssumptionCase::kRelaxed;
  report.warning = true;
  return report;
}

double expected_utility(std::span<const double> q, std::span<const double> p,
                        const Objective& obj) {
  if (q.size() != p.size()) {
    fail(Errc::kDimensionMismatch, "strategy and distribution lengths differ");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    if (q[i] != 0.0) total += q[i] * obj.value(p[i]);
  }
  return total;
}

}  // namespace decgame
