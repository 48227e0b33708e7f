// Copyright 2026 The delayed-pow Authors
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
#include <stdexcept>

#include "delayed/game.hpp"
#include "doctest.h"
#include "game_oracle.hpp"

using namespace delayed::game;

namespace {

Profile from_mask(int n, std::uint32_t mask) {
  Profile p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = (mask >> i) & 1u;
  return p;
}

}  // namespace

TEST_SUITE("game") {
  TEST_CASE("payoffs of the three-player example") {
    const CoordinationGame g{3, 1, 2};
    CHECK(payoff(g, {0, 0, 0}) == std::vector<double>{1, 1, 1});
    CHECK(payoff(g, {1, 1, 0}) == std::vector<double>{2, 2, 0});
    CHECK(payoff(g, {1, 0, 0}) == std::vector<double>{0, 0, 0});
    CHECK(payoff(g, {1, 1, 1}) == std::vector<double>{0, 0, 0});
  }

  TEST_CASE("invalid games") {
    CHECK_THROWS_AS(validate({1, 1, 2}), std::invalid_argument);
    CHECK_THROWS_AS(validate({3, 0, 2}), std::invalid_argument);
    CHECK_THROWS_AS(validate({3, 1, -1}), std::invalid_argument);
    CHECK_THROWS_AS(is_k_resilient({3, 1, 2}, all_zero(3), 0), std::invalid_argument);
    CHECK_THROWS_AS(is_k_resilient({3, 1, 2}, all_zero(3), 4), std::invalid_argument);
  }

  TEST_CASE("nash examples") {
    const CoordinationGame g{3, 1, 2};
    CHECK(is_nash(g, all_zero(3)));
    CHECK(is_nash(g, {1, 1, 0}));
    CHECK_FALSE(is_nash(g, {1, 0, 0}));
  }

  TEST_CASE("resilience examples") {
    CHECK(is_k_resilient({3, 1, 2}, all_zero(3), 1));
    CHECK_FALSE(is_k_resilient({3, 1, 2}, all_zero(3), 2));
    CHECK(is_k_resilient({3, 2, 1}, all_zero(3), 2));
    CHECK(is_k_resilient({5, 2, 1}, all_zero(5), 5));
  }

  TEST_CASE("closed-form resilience condition") {
    CHECK(resilience_ruled_out(1, 2, 3));
    CHECK_FALSE(resilience_ruled_out(1, 2, 4));
    for (int k = 1; k <= 10; ++k) CHECK_FALSE(resilience_ruled_out(10, 1, k));
  }

  TEST_CASE("closed form and exhaustive search disagree for large coalitions") {
    // A pair deviating to 1 gains regardless of how large the coalition may
    // be, while 2 beta / k shrinks with k. Both verdicts stay visible.
    const CoordinationGame g{6, 1, 2};
    CHECK_FALSE(resilience_ruled_out(1, 2, 4));
    CHECK_FALSE(is_k_resilient(g, all_zero(6), 4));
    CHECK(oracle::k_resilient(6, 1, 2, 0, 4) == false);
  }

  TEST_CASE("repeated game weight") {
    CHECK(repeated_lhs(0.3, 0) == 1);
    CHECK(repeated_lhs(0.5, 2) == doctest::Approx(1.75));
    CHECK(repeated_lhs(1 - 1e-12, 4) == doctest::Approx(5).epsilon(1e-9));
  }

  TEST_CASE("minimum discount") {
    CHECK(min_discount(2, 1, 1, 1) == 0.0);
    CHECK(min_discount(1, 1, 2, 3) == 0.0);
    const auto d = min_discount(1, 3, 4, 2);
    REQUIRE(d);
    CHECK(*d == doctest::Approx(0.366025403784439).epsilon(1e-10));
    CHECK_FALSE(min_discount(1, 3, 2, 1).has_value());
    // Equality at the supremum is not reachable with delta < 1.
    CHECK_FALSE(min_discount(1, 2, 2, 1).has_value());
  }

  TEST_CASE("exhaustive agreement with the reference search") {
    int disagreements = 0, cases = 0;
    for (const auto& [a, b] : {std::pair{1.0, 2.0}, {2.0, 1.0}, {1.0, 1.0}})
      for (int n = 2; n <= 6; ++n) {
        const CoordinationGame g{n, a, b};
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
          const auto p = from_mask(n, mask);
          disagreements += is_nash(g, p) != oracle::nash(n, a, b, mask);
          ++cases;
          for (int k = 1; k <= n; ++k) {
            disagreements += is_k_resilient(g, p, k) != oracle::k_resilient(n, a, b, mask, k);
            ++cases;
          }
        }
      }
    CHECK(cases > 1000);
    CHECK(disagreements == 0);
  }

  TEST_CASE("1-resilience is Nash and resilience is monotone") {
    for (int n = 2; n <= 8; ++n)
      for (const auto& [a, b] : {std::pair{1.0, 2.0}, {2.0, 1.0}, {1.0, 1.0}}) {
        const CoordinationGame g{n, a, b};
        for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
          const auto p = from_mask(n, mask);
          CHECK(is_k_resilient(g, p, 1) == is_nash(g, p));
          if (n <= 6)
            for (int k = 2; k <= n; ++k)
              if (is_k_resilient(g, p, k)) CHECK(is_k_resilient(g, p, k - 1));
        }
      }
  }

  TEST_CASE("minimum discount matches a fine grid search") {
    int compared = 0;
    for (double a : {1.0, 2.0})
      for (double b : {0.5, 1.0, 1.5, 2.0, 3.0})
        for (int k : {1, 2, 4, 6, 8})
          for (int t : {1, 3}) {
            const auto closed = min_discount(a, b, k, t);
            const auto grid = oracle::grid_min_discount(a, b, k, t);
            REQUIRE(closed.has_value() == grid.has_value());
            if (closed) CHECK(std::abs(*closed - *grid) <= 1e-5);
            ++compared;
          }
    CHECK(compared == 100);
  }
}
