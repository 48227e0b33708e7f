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
#include <optional>
#include <stdexcept>
#include <string>

namespace delayed {

using Round = std::int64_t;

/// Raised for any invalid configuration value. `field()` names the first
/// offending field so front-ends can report it verbatim.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(what), field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// Raised when the simulator asks the ledger for something the protocol
/// forbids (accrual to a blacklisted identity, slashing on a bad proof).
class ProtocolError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Parameters of a (k, d, gamma)-delayed protocol together with the economic
/// environment the miners live in.
struct ProtocolParams {
  std::uint32_t k = 0;        // reward timelock, rounds
  double d = 0.0;             // startup proof-of-work units per fresh identity
  double gamma0 = 0.0;        // base per-round decay rate
  double decay_growth = 1.0;  // gamma_v = gamma0 * decay_growth^dropouts
  double alpha = 1.0;         // block reward + fees
  double alpha_decay = 0.0;   // alpha(t) = alpha * exp(-alpha_decay * t)
  double lambda = 1.0;        // global block arrival rate
  double delta_t = 1.0;       // round length
  std::optional<double> discount;  // delta, must lie in (0, 1)
  double reporter_share = 0.0;
  double mining_cost = 0.0;   // per unit time, uniform default

  /// Reward for a block found in `round`.
  double reward_at(Round round) const;
  double gamma_for(std::uint32_t dropouts) const;
  double discount_or_throw() const;
};

struct ValidatedParams {
  ProtocolParams params;
  /// (k, 0, 0): plain maturity-only protocol (k = 100 is Bitcoin's coinbase
  /// maturity, k = 0 is instant payout).
  bool legacy_mode = false;
};

/// Checks every field invariant and throws ConfigError naming the first
/// violated field. An unset discount and an out-of-range one are reported
/// with different messages.
ValidatedParams validate_params(const ProtocolParams& raw);

}  // namespace delayed
