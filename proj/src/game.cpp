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

#include "delayed/game.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace delayed::game {

void validate(const CoordinationGame& game) {
  if (game.n <= 1) throw std::invalid_argument("coordination game needs n > 1");
  if (!(game.alpha > 0.0) || !(game.beta > 0.0))
    throw std::invalid_argument("coordination game payoffs must be positive");
}

namespace {

void check_profile(const CoordinationGame& game, const Profile& profile) {
  validate(game);
  if (profile.size() != static_cast<std::size_t>(game.n))
    throw std::invalid_argument("profile length differs from player count");
  for (auto a : profile)
    if (a > 1) throw std::invalid_argument("actions must be 0 or 1");
}

// Payoff to one player without allocating the whole vector.
double payoff_of(const CoordinationGame& game, const Profile& profile,
                 std::size_t player) {
  const auto ones = std::count(profile.begin(), profile.end(), 1);
  if (ones == 0) return game.alpha;
  if (ones == 2 && profile[player] == 1) return game.beta;
  return 0.0;
}

}  // namespace

std::vector<double> payoff(const CoordinationGame& game, const Profile& profile) {
  check_profile(game, profile);
  std::vector<double> out(profile.size());
  for (std::size_t i = 0; i < profile.size(); ++i)
    out[i] = payoff_of(game, profile, i);
  return out;
}

bool is_nash(const CoordinationGame& game, const Profile& profile) {
  check_profile(game, profile);
  if (game.n > 20) throw std::invalid_argument("is_nash supports n <= 20");
  Profile deviated = profile;
  for (std::size_t i = 0; i < profile.size(); ++i) {
    const double base = payoff_of(game, profile, i);
    deviated[i] ^= 1;
    const bool gains = payoff_of(game, deviated, i) > base;
    deviated[i] ^= 1;
    if (gains) return false;
  }
  return true;
}

bool is_k_resilient(const CoordinationGame& game, const Profile& profile, int k) {
  check_profile(game, profile);
  if (game.n > 12) throw std::invalid_argument("is_k_resilient supports n <= 12");
  if (k < 1 || k > game.n)
    throw std::invalid_argument("coalition bound k must lie in [1, n]");

  const auto n = static_cast<std::size_t>(game.n);
  std::vector<double> base(n);
  for (std::size_t i = 0; i < n; ++i) base[i] = payoff_of(game, profile, i);

  // Coalitions by size, each as a sorted index set from a selection mask.
  for (int size = 1; size <= k; ++size) {
    std::vector<std::uint8_t> pick(n, 0);
    std::fill(pick.end() - size, pick.end(), 1);
    do {
      std::vector<std::size_t> members;
      for (std::size_t i = 0; i < n; ++i)
        if (pick[i]) members.push_back(i);

      Profile deviated = profile;
      const std::uint32_t joint = 1u << members.size();
      for (std::uint32_t choice = 0; choice < joint; ++choice) {
        for (std::size_t m = 0; m < members.size(); ++m)
          deviated[members[m]] = static_cast<std::uint8_t>((choice >> m) & 1u);
        for (auto i : members)
          if (payoff_of(game, deviated, i) > base[i]) return false;
      }
    } while (std::next_permutation(pick.begin(), pick.end()));
  }
  return true;
}

bool resilience_ruled_out(double alpha, double beta, int k) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  return 2.0 * beta / k > alpha;
}

double repeated_lhs(double delta, int t) {
  if (!(delta > 0.0 && delta < 1.0) && delta != 0.0)
    throw std::invalid_argument("delta must lie in [0, 1)");
  if (t < 0) throw std::invalid_argument("t must be >= 0");
  if (1.0 - delta < 1e-6) {
    double sum = 0.0, term = 1.0;
    for (int i = 0; i <= t; ++i, term *= delta) sum += term;
    return sum;
  }
  return (1.0 - std::pow(delta, t + 1)) / (1.0 - delta);
}

std::optional<double> min_discount(double alpha, double beta, int k, int t) {
  if (!(alpha > 0.0) || !(beta > 0.0) || k < 1 || t < 0)
    throw std::invalid_argument("min_discount needs alpha, beta > 0, k >= 1, t >= 0");
  const double target = 2.0 * beta / (alpha * k);
  if (target <= 1.0) return 0.0;
  // The left-hand side increases towards t + 1 but never reaches it.
  if (static_cast<double>(t + 1) <= target) return std::nullopt;

  double lo = 0.0, hi = 1.0;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    if (repeated_lhs(mid, t) >= target)
      hi = mid;
    else
      lo = mid;
  }
  return hi;
}

Profile all_zero(int n) { return Profile(static_cast<std::size_t>(std::max(n, 0)), 0); }

}  // namespace delayed::game
