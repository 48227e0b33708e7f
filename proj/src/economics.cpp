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

#include "delayed/economics.hpp"

#include <cmath>
#include <stdexcept>

namespace delayed::economics {

namespace {

// alpha * e^(-gamma0 dt k) * p_v * lambda: the per-win payout rate.
double payout_rate(const ProtocolParams& p, double p_v, double alpha) {
  const double decay = std::exp(-p.gamma0 * p.delta_t * static_cast<double>(p.k));
  return alpha * decay * p_v * p.lambda;
}

double delta_pow(double delta, double n) { return std::pow(delta, n); }

}  // namespace

double geometric_sum(double x, std::uint64_t n) {
  if (n == 0) return 0.0;
  if (x == 0.0) return 1.0;
  const double one_minus = 1.0 - x;
  if (one_minus < 1e-6) {
    double sum = 0.0, term = 1.0;
    for (std::uint64_t i = 0; i < n; ++i, term *= x) sum += term;
    return sum;
  }
  return -std::expm1(static_cast<double>(n) * std::log(x)) / one_minus;
}

double per_round_utility(const ProtocolParams& params, double p_v, double c_v,
                         Round t) {
  const double delta = params.discount_or_throw();
  return delta_pow(delta, params.k) * params.delta_t *
         (payout_rate(params, p_v, params.reward_at(t)) - c_v);
}

double honest_cumulative(const ProtocolParams& params, double p_v, Round l) {
  if (l < 1) throw std::invalid_argument("honest_cumulative needs l >= 1");
  const double delta = params.discount_or_throw();
  return delta_pow(delta, params.k) *
         geometric_sum(delta, static_cast<std::uint64_t>(l)) *
         payout_rate(params, p_v, params.alpha);
}

double value_at_risk_with_startup(const ProtocolParams& params, double p_v,
                                  Round l, Round r) {
  const auto k = static_cast<Round>(params.k);
  if (l <= k) throw std::invalid_argument("value at risk needs l > k");
  if (r < 0) throw std::invalid_argument("startup rounds must be >= 0");
  const double delta = params.discount_or_throw();
  // sum_{i=l-k+1}^{l+r} delta^(k+i-1) = delta^l * (1 - delta^(k+r)) / (1 - delta)
  return delta_pow(delta, static_cast<double>(l)) *
         geometric_sum(delta, static_cast<std::uint64_t>(k + r)) *
         payout_rate(params, p_v, params.alpha);
}

double value_at_risk(const ProtocolParams& params, double p_v, Round l) {
  return value_at_risk_with_startup(params, p_v, l, 0);
}

double attack_cost_magnitude(const ProtocolParams& params, Round r) {
  const double delta = params.discount_or_throw();
  return static_cast<double>(params.k + r) * delta_pow(delta, params.k) *
         payout_rate(params, 1.0, params.alpha);
}

double expected_startup_rounds(double d, double q) {
  if (!(q > 0.0) || q > 1.0)
    throw std::invalid_argument("startup success probability must lie in (0, 1]");
  if (d <= 0.0) return 0.0;
  return std::ceil(d) / q;
}

bool attack_profitable(double epsilon, double threshold) {
  return epsilon >= threshold;
}

}  // namespace delayed::economics
