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

#include <cmath>
#include <string>
#include <vector>

#include "delayed/sim.hpp"

namespace testing {

inline delayed::ProtocolParams base_params(std::uint32_t k = 3, double discount = 0.9) {
  delayed::ProtocolParams p;
  p.k = k;
  p.discount = discount;
  p.reporter_share = 0.5;
  return p;
}

inline delayed::AgentSpec agent(std::string name, double power,
                                delayed::StrategySpec strategy = delayed::HonestSpec{}) {
  delayed::AgentSpec a;
  a.name = std::move(name);
  a.power = power;
  a.strategy = strategy;
  return a;
}

inline delayed::SimConfig discrete(double horizon, std::uint64_t seed,
                                   delayed::ProtocolParams params,
                                   std::vector<delayed::AgentSpec> roster) {
  delayed::SimConfig c;
  c.mode = delayed::SimMode::Discrete;
  c.horizon = horizon;
  c.seed = seed;
  c.params = params;
  c.roster = std::move(roster);
  return c;
}

// A lone attacker holding all the hash power plus a zero-power watcher that
// files the fraud proof.
inline delayed::SimConfig lone_attacker(double epsilon, delayed::Round l = 10,
                                        double d = 0.0, double horizon = 200,
                                        std::uint64_t seed = 1) {
  auto p = base_params();
  p.d = d;
  return discrete(horizon, seed, p,
                  {agent("eve", 1.0, delayed::DoubleSpendSpec{l, epsilon}),
                   agent("watcher", 0.0)});
}

inline bool close_rel(double a, double b, double tol) {
  return std::abs(a - b) <= tol * std::max(std::abs(a), std::abs(b));
}

}  // namespace testing
