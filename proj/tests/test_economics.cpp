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
#include <random>

#include "delayed/economics.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace delayed;
namespace econ = delayed::economics;

namespace {

// 30-digit reference values.
constexpr double kPerRoundExample = 0.316903145995899;  // 0.81 (2 e^-0.2 0.3 - 0.1)
constexpr double kHonest10 = 4.748134171671;            // sum_{i=1}^{10} 0.9^(2+i)
constexpr double kVar10 = 0.944918572671;               // 0.9^10 + 0.9^11 + 0.9^12
constexpr double kVar10r2 = 1.42787308005351;           // ... + 0.9^13 + 0.9^14

// Term-by-term sums in long double, written straight from the definitions.
long double term(const ProtocolParams& p, double p_v, long double exponent) {
  return std::pow(static_cast<long double>(*p.discount), exponent) * p.alpha *
         std::exp(-static_cast<long double>(p.gamma0) * p.delta_t * p.k) * p_v *
         p.lambda;
}

long double brute_cumulative(const ProtocolParams& p, double p_v, Round l) {
  long double s = 0;
  for (Round i = 1; i <= l; ++i) s += term(p, p_v, p.k + i - 1);
  return s;
}

long double brute_var(const ProtocolParams& p, double p_v, Round l, Round r) {
  long double s = 0;
  for (Round i = l - p.k + 1; i <= l + r; ++i) s += term(p, p_v, p.k + i - 1);
  return s;
}

ProtocolParams example() {
  auto p = testing::base_params(3, 0.9);
  return p;
}

}  // namespace

TEST_SUITE("economics") {
  TEST_CASE("per-round utility examples") {
    auto p = testing::base_params(0, 0.5);
    CHECK(econ::per_round_utility(p, 0.5, 0, 0) == 0.5);
    p = testing::base_params(2, 0.9);
    p.gamma0 = 0.1;
    p.alpha = 2;
    CHECK(econ::per_round_utility(p, 0.3, 0.1, 0) ==
          doctest::Approx(kPerRoundExample).epsilon(1e-13));
    CHECK(econ::per_round_utility(p, 0.3, 2.0, 0) < 0);
  }

  TEST_CASE("honest cumulative") {
    const auto p = example();
    CHECK(econ::honest_cumulative(p, 1, 10) == doctest::Approx(kHonest10).epsilon(1e-12));
    CHECK(econ::honest_cumulative(p, 1, 1) ==
          doctest::Approx(econ::per_round_utility(p, 1, 0, 0)).epsilon(1e-15));
    CHECK_THROWS_AS(econ::honest_cumulative(p, 1, 0), std::invalid_argument);

    auto q = testing::base_params(3, 0.999);
    const double bound = std::pow(0.999, 3) / (1 - 0.999);
    double prev = 0;
    for (Round l = 1; l <= 20000; l += 97) {
      const double v = econ::honest_cumulative(q, 1, l);
      CHECK(v > prev);
      CHECK(v < bound);
      prev = v;
    }
  }

  TEST_CASE("value at risk") {
    const auto p = example();
    CHECK(econ::value_at_risk(p, 1, 10) == doctest::Approx(kVar10).epsilon(1e-12));
    CHECK(econ::value_at_risk_with_startup(p, 1, 10, 0) == econ::value_at_risk(p, 1, 10));
    CHECK(econ::value_at_risk_with_startup(p, 1, 10, 2) ==
          doctest::Approx(kVar10r2).epsilon(1e-12));
    CHECK_THROWS_AS(econ::value_at_risk(p, 1, 3), std::invalid_argument);
    CHECK_THROWS_AS(econ::value_at_risk_with_startup(p, 1, 10, -1), std::invalid_argument);

    auto k0 = testing::base_params(0, 0.9);
    CHECK(econ::value_at_risk(k0, 1, 10) == 0.0);
    CHECK(econ::attack_profitable(1e-9, econ::value_at_risk(k0, 1, 10)));

    auto a2 = p;
    a2.alpha = 2;
    CHECK(econ::value_at_risk(a2, 0.5, 10) == doctest::Approx(kVar10).epsilon(1e-12));
    CHECK(econ::value_at_risk(p, 0.25, 10) ==
          doctest::Approx(0.25 * kVar10).epsilon(1e-12));

    double prev = 0;
    for (Round r = 0; r < 50; ++r) {
      const double v = econ::value_at_risk_with_startup(p, 1, 10, r);
      CHECK(v >= prev);
      prev = v;
    }
  }

  TEST_CASE("break-even is a weak inequality") {
    CHECK(econ::attack_profitable(kVar10, kVar10));
    CHECK_FALSE(econ::attack_profitable(std::nextafter(kVar10, 0.0), kVar10));
  }

  TEST_CASE("order-of-magnitude envelope") {
    const auto p = example();
    CHECK(econ::attack_cost_magnitude(p, 0) == doctest::Approx(2.187).epsilon(1e-14));
    CHECK(econ::attack_cost_magnitude(p, 0) > econ::value_at_risk(p, 1, 10));
    auto heavy = p;
    heavy.gamma0 = 1e4;
    CHECK(econ::attack_cost_magnitude(heavy, 0) < 1e-300);

    // Non-monotone in k: the prefactor grows linearly, delta^k shrinks.
    auto q = testing::base_params(1, 0.9);
    std::vector<double> by_k;
    for (std::uint32_t k = 1; k <= 40; ++k) {
      q.k = k;
      by_k.push_back(econ::attack_cost_magnitude(q, 0));
    }
    const auto peak = std::max_element(by_k.begin(), by_k.end());
    CHECK(peak != by_k.begin());
    CHECK(peak != by_k.end() - 1);
  }

  TEST_CASE("expected startup rounds") {
    CHECK(econ::expected_startup_rounds(0, 0.3) == 0);
    CHECK(econ::expected_startup_rounds(5, 0.5) == 10);
    CHECK(econ::expected_startup_rounds(4.2, 1.0) == 5);
    CHECK_THROWS_AS(econ::expected_startup_rounds(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(econ::expected_startup_rounds(5, 1.5), std::invalid_argument);
  }

  TEST_CASE("geometric sum near one") {
    for (double x : {0.5, 0.9, 1 - 1e-5, 1 - 1e-7, 1 - 1e-12}) {
      long double s = 0, t = 1;
      for (int i = 0; i < 500; ++i, t *= x) s += t;
      CHECK(econ::geometric_sum(x, 500) ==
            doctest::Approx(static_cast<double>(s)).epsilon(1e-12));
    }
    CHECK(econ::geometric_sum(0.3, 0) == 0);
  }

  TEST_CASE("closed forms agree with term-by-term sums on a random grid") {
    std::mt19937_64 gen(424242);
    std::uniform_real_distribution<double> u(0, 1);
    int checked = 0;
    for (int i = 0; i < 1000; ++i) {
      ProtocolParams p;
      p.k = static_cast<std::uint32_t>(gen() % 200);
      p.discount = 0.5 + 0.4999 * u(gen);
      p.gamma0 = 0.05 * u(gen);
      p.alpha = 0.1 + 10 * u(gen);
      p.lambda = 0.1 + 4 * u(gen);
      p.delta_t = 0.1 + 2 * u(gen);
      const double p_v = 0.01 + 0.99 * u(gen);
      const Round l = p.k + 1 + static_cast<Round>(gen() % 300);
      const Round r = static_cast<Round>(gen() % 100);

      const double cum = econ::honest_cumulative(p, p_v, l);
      CHECK(testing::close_rel(cum, static_cast<double>(brute_cumulative(p, p_v, l)), 1e-10));
      const double var = econ::value_at_risk(p, p_v, l);
      CHECK(testing::close_rel(var, static_cast<double>(brute_var(p, p_v, l, 0)), 1e-10));
      const double var_r = econ::value_at_risk_with_startup(p, p_v, l, r);
      CHECK(testing::close_rel(var_r, static_cast<double>(brute_var(p, p_v, l, r)), 1e-10));
      CHECK(var_r >= var);
      CHECK(var >= 0);
      const long double direct =
          std::pow(static_cast<long double>(*p.discount), p.k) * p.delta_t *
          (p.alpha * std::exp(-static_cast<long double>(p.gamma0) * p.delta_t * p.k) *
               p_v * p.lambda -
           0.0L);
      CHECK(testing::close_rel(econ::per_round_utility(p, p_v, 0, 0),
                               static_cast<double>(direct), 1e-10));
      ++checked;
    }
    CHECK(checked == 1000);
  }
}
