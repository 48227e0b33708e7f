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

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

namespace delayed::game {

/// n players choose 0 or 1. Unanimous 0 pays everyone alpha; exactly two
/// players on 1 pays those two beta each; anything else pays nothing.
struct CoordinationGame {
  int n = 2;
  double alpha = 1.0;
  double beta = 2.0;
};

using Profile = std::vector<std::uint8_t>;  // one action in {0, 1} per player

/// Throws std::invalid_argument for n <= 1 or non-positive payoffs.
void validate(const CoordinationGame& game);

std::vector<double> payoff(const CoordinationGame& game, const Profile& profile);

/// No player strictly gains by flipping their own action. n <= 20.
bool is_nash(const CoordinationGame& game, const Profile& profile);

/// No coalition of at most k players has a joint deviation under which one
/// of its members strictly gains. n <= 12, 1 <= k <= n.
bool is_k_resilient(const CoordinationGame& game, const Profile& profile, int k);

/// 2 * beta / k > alpha: the closed-form condition ruling out k-resilience.
bool resilience_ruled_out(double alpha, double beta, int k);

/// (1 - delta^(t+1)) / (1 - delta): discounted weight of t+1 cooperative
/// rounds relative to one.
double repeated_lhs(double delta, int t);

/// Smallest discount factor in [0, 1) at which cooperating beats a coalition
/// deviation followed by t punishment rounds, i.e.
/// repeated_lhs(delta, t) >= 2 beta / (alpha k). Empty when no delta < 1
/// works.
std::optional<double> min_discount(double alpha, double beta, int k, int t);

Profile all_zero(int n);

}  // namespace delayed::game
