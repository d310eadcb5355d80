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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"

#include "decgame/error.hpp"
#include "decgame/strategist.hpp"
#include "support/reference.hpp"

using decgame::AssumptionCase;
using decgame::Objective;
using decgame::ProbVector;
using decgame::SolveMode;

namespace {

const std::vector<double> kP4{0.5, 0.3, 0.15, 0.05};

ProbVector p4() { return decgame::validate_dist(kP4); }

}  // namespace

TEST_CASE("exact solve on the boundary instance") {
  const auto sol = decgame::optimal_q(p4(), 0.2, Objective::log());
  CHECK(sol.support_size == 2);
  REQUIRE(sol.weights.size() == 2);
  CHECK(sol.weights[0] == doctest::Approx(0.3915230377942435).epsilon(1e-13));
  CHECK(sol.weights[1] == doctest::Approx(0.18204784532536747).epsilon(1e-13));
  CHECK(sol.q[0] == doctest::Approx(0.6826061944859853).epsilon(1e-13));
  CHECK(sol.q[1] == doctest::Approx(0.3173938055140147).epsilon(1e-13));
  CHECK(sol.q[2] == 0.0);
  CHECK(sol.q[3] == 0.0);
  // S_2 sits exactly on the bound.
  CHECK(std::abs(sol.s_values[1] - 1.0) < 1e-14);
  CHECK(sol.value == doctest::Approx(std::log(0.3)).epsilon(1e-13));
}

TEST_CASE("exact solve at eps = 0.1") {
  const auto sol = decgame::optimal_q(p4(), 0.1, Objective::log());
  CHECK(sol.support_size == 1);
  CHECK(sol.q == std::vector<double>{1, 0, 0, 0});
  CHECK(sol.value == doctest::Approx(std::log(0.4)).epsilon(1e-14));
  CHECK(sol.s_values[1] > 1.0);
}

TEST_CASE("two-token game values") {
  const ProbVector p = decgame::validate_dist(std::vector<double>{0.7, 0.3});
  const auto a = decgame::optimal_q(p, 0.3, Objective::log());
  CHECK(a.support_size == 1);
  CHECK(a.weights[0] == doctest::Approx(0.536082087867433).epsilon(1e-13));
  CHECK(a.value == doctest::Approx(std::log(0.4)).epsilon(1e-14));
  CHECK(decgame::game_value(p, 0.2, Objective::log()) ==
        doctest::Approx(std::log(0.5)).epsilon(1e-14));
}

TEST_CASE("exact mode refuses relaxed instances") {
  const ProbVector u = decgame::validate_dist(std::vector<double>{0.25, 0.25, 0.25, 0.25});
  CHECK_THROWS_AS(decgame::optimal_q(u, 0.1, Objective::log()), decgame::Error);
  CHECK_THROWS_AS(decgame::threshold_index(u, 0.1, Objective::log(), SolveMode::kExact),
                  decgame::Error);
  CHECK(decgame::threshold_index(u, 0.1, Objective::log(), SolveMode::kRelaxed) == 4);
  CHECK(decgame::threshold_index(u, 0.7, Objective::log(), SolveMode::kRelaxed) == 4);
}

TEST_CASE("first-order thresholds") {
  const auto relaxed = decgame::first_order_q(p4(), 0.3, Objective::log(),
                                              SolveMode::kRelaxed);
  CHECK(relaxed.support_size == 2);
  CHECK(relaxed.q[0] == doctest::Approx(0.625).epsilon(1e-15));
  CHECK(relaxed.q[1] == doctest::Approx(0.375).epsilon(1e-15));
  CHECK(relaxed.s_values[1] == doctest::Approx(0.25541281188299536).epsilon(1e-13));
  CHECK(relaxed.s_values[2] == doctest::Approx(0.8099305563309517).epsilon(1e-13));

  // The p_I > eps clause excludes p_2 = 0.3 at eps = 0.3.
  const auto clause = decgame::first_order_q(p4(), 0.3, Objective::log());
  CHECK(clause.support_size == 1);

  CHECK(decgame::first_order_q(p4(), 0.1, Objective::log()).support_size == 1);

  const auto power = decgame::first_order_q(p4(), 0.3, Objective::power(2.0),
                                            SolveMode::kRelaxed);
  CHECK(power.support_size == 2);
  CHECK(power.q[0] == doctest::Approx(0.5635083268962915).epsilon(1e-13));
  CHECK(power.q[1] == doctest::Approx(0.43649167310370834).epsilon(1e-13));
  CHECK(std::abs(power.q[0] - relaxed.q[0]) > 1e-3);
}

TEST_CASE("zero radius is greedy in relaxed mode") {
  const ProbVector p = decgame::validate_dist(std::vector<double>{0.5, 0.5});
  const auto sol = decgame::solve(p, 0.0, Objective::log(), SolveMode::kRelaxed);
  CHECK(sol.q == std::vector<double>{1, 0});
  CHECK(sol.value == doctest::Approx(std::log(0.5)).epsilon(1e-15));
}

TEST_CASE("near-log power solution") {
  // tau slightly below 1 keeps f divergent at zero, so case_i applies.
  const auto near = decgame::optimal_q(p4(), 0.2, Objective::power(0.999));
  const auto log = decgame::optimal_q(p4(), 0.2, Objective::log());
  for (std::size_t k = 0; k < 4; ++k) CHECK(std::abs(near.q[k] - log.q[k]) < 1e-2);
  // tau slightly above 1 leaves f finite at zero: no case applies here.
  CHECK_THROWS_AS(decgame::optimal_q(p4(), 0.2, Objective::power(1.001)),
                  decgame::Error);
}

TEST_CASE("solution structure on random instances") {
  std::mt19937_64 g(21);
  int counts[2] = {0, 0};
  for (int trial = 0; trial < 2000; ++trial) {
    const std::size_t d = 2 + g() % 30;
    const ProbVector p = decgame::validate_dist(reference::sorted_simplex(d, g));
    const double eps = reference::uniform(g) * (trial % 2 == 0 ? p[0] : p[d - 1]);
    const double tau = std::vector<double>{1.0, 0.5, 1.5, 2.0}[g() % 4];
    const Objective obj = Objective::with_tau(tau);
    const auto rep = decgame::classify_assumption(obj, p, eps);
    if (rep.which == AssumptionCase::kRelaxed) continue;
    ++counts[static_cast<int>(rep.which)];
    const auto sol = decgame::optimal_q(p, eps, obj);
    double sum = 0.0;
    const double level = sol.q[0] * obj.gap_minus(p[0], eps);
    for (std::size_t k = 0; k < d; ++k) {
      sum += sol.q[k];
      CHECK((sol.q[k] > 0.0) == (k < sol.support_size));
      if (k + 1 < d) CHECK(sol.q[k] >= sol.q[k + 1]);
      if (k < sol.support_size) {
        CHECK(std::abs(sol.q[k] * obj.gap_minus(p[k], eps) - level) <= 1e-10);
      }
    }
    CHECK(std::abs(sum - 1.0) <= 1e-12);
    if (rep.which == AssumptionCase::kCaseII) CHECK(sol.support_size < d);
    const auto cert = decgame::kkt_certificate(sol.q, p, eps, obj);
    INFO(cert.violation, " d=", d, " eps=", eps, " tau=", tau, " I=", sol.support_size);
    CHECK(cert.feasible);
  }
  CHECK(counts[0] > 100);
  CHECK(counts[1] > 100);
}

TEST_CASE("threshold is monotone in eps") {
  const ProbVector p = decgame::validate_dist(
      std::vector<double>{0.3, 0.2, 0.15, 0.12, 0.1, 0.08, 0.05});
  // Once eps reaches p_2 the zeroing cap forces the support back to 1.
  std::size_t prev = 0;
  for (double eps = 0.05; eps < 0.199; eps += 0.005) {
    const std::size_t i = decgame::threshold_index(p, eps, Objective::log(),
                                                   SolveMode::kExact);
    CHECK(i >= prev);
    prev = i;
  }
  CHECK(prev == 2);
  CHECK(decgame::threshold_index(p, 0.2, Objective::log(), SolveMode::kExact) == 1);
  CHECK(decgame::threshold_index(p, 0.0, Objective::log(), SolveMode::kRelaxed) == 1);
}

TEST_CASE("kkt certificates on the worked instance") {
  const ProbVector p = p4();
  const auto sol = decgame::optimal_q(p, 0.2, Objective::log());
  const auto good = decgame::kkt_certificate(sol.q, p, 0.2, Objective::log());
  CHECK(good.feasible);
  CHECK(good.stationarity_residual <= 1e-10);
  CHECK(good.active.size() == 2);

  const auto uniform = decgame::kkt_certificate(
      std::vector<double>{0.25, 0.25, 0.25, 0.25}, p, 0.2, Objective::log());
  CHECK_FALSE(uniform.feasible);
  CHECK(uniform.violation.find("zeroable") != std::string::npos);

  const auto skewed = decgame::kkt_certificate(std::vector<double>{0.9, 0.1, 0, 0},
                                               p, 0.2, Objective::log());
  CHECK_FALSE(skewed.feasible);
}

TEST_CASE("kkt on a case_ii instance") {
  const ProbVector p = decgame::validate_dist(std::vector<double>{0.4, 0.35, 0.25});
  const auto sol = decgame::optimal_q(p, 0.06, Objective::log());
  CHECK(sol.assumption.which == AssumptionCase::kCaseII);
  CHECK(sol.support_size == 2);
  const auto cert = decgame::kkt_certificate(sol.q, p, 0.06, Objective::log());
  CHECK(cert.feasible);
  CHECK(cert.lambda_star[2] >= 0.0);
  CHECK_FALSE(decgame::kkt_certificate(std::vector<double>{0.4, 0.3, 0.3}, p, 0.06,
                                       Objective::log())
                  .feasible);
}
