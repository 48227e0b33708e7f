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

#pragma once

#include <cstdint>

#include "delayed/params.hpp"

namespace delayed::economics {

/// Expected utility per round of a miner with power share p_v:
/// delta^k * dt * (alpha(t) * e^(-gamma0 * dt * k) * p_v * lambda - c_v).
double per_round_utility(const ProtocolParams& params, double p_v, double c_v,
                         Round t);

/// Discounted payoff of l honest rounds:
/// sum_{i=1..l} delta^(k+i-1) * alpha * e^(-gamma0 dt k) * p_v * lambda.
double honest_cumulative(const ProtocolParams& params, double p_v, Round l);

/// Discounted value of the k payouts that are still locked when a miner who
/// has been honest for l rounds gets slashed. An attack with prize epsilon is
/// profitable iff epsilon >= this value. Requires l > k.
double value_at_risk(const ProtocolParams& params, double p_v, Round l);

/// As value_at_risk, extended by the r rounds a fresh key spends on startup
/// work before it can earn again.
double value_at_risk_with_startup(const ProtocolParams& params, double p_v,
                                  Round l, Round r);

/// (k + r) * alpha * delta^k * e^(-gamma0 dt k) * lambda. An order-of-magnitude
/// envelope for sweep tables, not the exact threshold.
double attack_cost_magnitude(const ProtocolParams& params, Round r);

/// ceil(d) / q under the Bernoulli-trials startup model. q must lie in (0, 1].
double expected_startup_rounds(double d, double q);

/// Weak inequality: equality is the break-even point.
bool attack_profitable(double epsilon, double threshold);

/// (1 - x^n) / (1 - x) for x in (0, 1), accurate as x -> 1.
double geometric_sum(double x, std::uint64_t n);

}  // namespace delayed::economics
