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

#include <string>
#include <string_view>
#include <variant>

#include "delayed/ledger.hpp"
#include "delayed/params.hpp"

namespace delayed {

struct MineHonest {
  bool operator==(const MineHonest&) const = default;
};
struct DoubleSpend {
  double epsilon = 0.0;  // exogenous prize, > 0
  bool operator==(const DoubleSpend&) const = default;
};
struct ChurnIdentity {
  bool operator==(const ChurnIdentity&) const = default;
};
struct Idle {
  bool operator==(const Idle&) const = default;
};

using Action = std::variant<MineHonest, DoubleSpend, ChurnIdentity, Idle>;

/// What an agent may look at when choosing its action: the public round
/// counter and the state of its own current identity.
struct Observation {
  Round round = 0;
  MinerStatus status = MinerStatus::Active;
};

Action honest_strategy(const Observation& obs);

/// Honest until `attack_round`, double-spends there, then moves its power to
/// a fresh key in the following round (the old key is about to be slashed)
/// and stays honest on the new key.
Action double_spender_strategy(Round attack_round, double epsilon,
                               const Observation& obs);

/// Abandons its key every `period` rounds.
Action churner_strategy(Round period, const Observation& obs);

struct HonestSpec {
  bool operator==(const HonestSpec&) const = default;
};
struct DoubleSpendSpec {
  Round attack_round = 1;
  double epsilon = 0.0;
  bool operator==(const DoubleSpendSpec&) const = default;
};
struct ChurnSpec {
  Round period = 1;
  bool operator==(const ChurnSpec&) const = default;
};

using StrategySpec = std::variant<HonestSpec, DoubleSpendSpec, ChurnSpec>;

Action decide(const StrategySpec& spec, const Observation& obs);

/// Accepts "honest", "double_spend(l=50, eps=2.5)" and "churn(period=10)".
/// Throws ConfigError("strategy", ...) on anything else.
StrategySpec parse_strategy(std::string_view text);
std::string to_string(const StrategySpec& spec);

}  // namespace delayed
