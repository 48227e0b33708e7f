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
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "delayed/agents.hpp"
#include "delayed/events.hpp"
#include "delayed/ledger.hpp"
#include "delayed/params.hpp"
#include "delayed/rng.hpp"

namespace delayed {

enum class SimMode { Discrete, Poisson };

const char* to_string(SimMode mode);
SimMode parse_mode(std::string_view text);

struct AgentSpec {
  std::string name;
  double power = 0.0;
  StrategySpec strategy = HonestSpec{};
  std::optional<double> mining_cost;  // overrides params.mining_cost
};

struct SimConfig {
  SimMode mode = SimMode::Discrete;
  // Rounds in Discrete mode (must be integral), elapsed time in Poisson mode.
  double horizon = 0.0;
  std::uint64_t seed = 0;
  ProtocolParams params;
  std::vector<AgentSpec> roster;
};

/// Validates params, horizon, roster and powers. Throws ConfigError.
void validate_config(const SimConfig& config);
Round horizon_rounds(const SimConfig& config);

/// Categorical draw over a normalized power vector. Consumes exactly one
/// uniform from `rng`. Throws std::invalid_argument if the powers are not
/// normalized to within 1e-9.
std::size_t select_winner(std::span<const double> powers, Rng& rng);

struct Arrival {
  double time = 0.0;
  std::optional<std::size_t> winner;  // empty when nobody was mining
};

/// Block arrivals of a rate-lambda Poisson process, advanced one round at a
/// time.
class PoissonClock {
 public:
  PoissonClock(double lambda, Rng& rng);
  /// Arrivals in [previous end, round_end); each consumes one exponential
  /// and one uniform draw. Timestamps are strictly increasing.
  std::vector<Arrival> poisson_round(double round_end,
                                     std::span<const double> powers, Rng& rng);
  double next_arrival() const { return next_; }

 private:
  double lambda_;
  double next_;
};

/// Rounds needed to collect ceil(d) successes of Bernoulli(q) trials with
/// q = min(1, p_v * lambda * delta_t). Returns 0 when d == 0; throws
/// std::invalid_argument for p_v <= 0 with d > 0.
Round sample_startup_rounds(double d, double p_v, const ProtocolParams& params,
                            Rng& rng);
double startup_success_probability(double p_v, const ProtocolParams& params);

struct AgentOutcome {
  std::string name;
  StrategySpec strategy;
  double power = 0.0;  // normalized roster share
  double mining_cost = 0.0;
  std::vector<MinerId> identities;  // in use order; back() is current
  Round rounds_mined = 0;
  Round mined_in_settled_window = 0;  // rounds 1..H-k
  std::uint64_t wins = 0;
  double matured = 0.0;          // own block rewards paid out
  double reporter_credits = 0.0;
  double discounted_paid = 0.0;  // sum of amount * delta^(round - 1)
  double external_balance = 0.0; // double-spend prizes, outside the ledger
  std::uint64_t double_spends = 0;
};

struct RunResult {
  SimConfig config;
  Round rounds = 0;
  std::uint64_t arrivals = 0;
  Ledger ledger;
  std::vector<SimEvent> events;
  std::vector<AgentOutcome> agents;
};

/// Thrown when a run fails part-way; carries every event logged so far.
class SimulationAborted : public std::runtime_error {
 public:
  SimulationAborted(const std::string& what, std::vector<SimEvent> partial)
      : std::runtime_error(what), partial_(std::move(partial)) {}
  const std::vector<SimEvent>& partial_log() const { return partial_; }

 private:
  std::vector<SimEvent> partial_;
};

/// Runs the round loop. Each round: (1) startup completions, agent actions,
/// key churn and double spends; (2) winner selection; (3) accrual; (4) decay
/// tick; (5) fraud reports and slashing for last round's double spends;
/// (6) maturity; (7) participation tracking; (8) startup progress.
/// A pure function of the config, seed included.
RunResult run(const SimConfig& config);

/// The same scenario with roster entry `agent` playing honestly.
SimConfig honest_twin(const SimConfig& config, std::size_t agent);

/// delta^k * (matured - c * delta_t * rounds mined) / (H - k): the realized
/// counterpart of the per-round expected utility. Only rounds whose rewards
/// had time to settle are counted.
double realized_per_round_utility(const RunResult& result, std::size_t agent);

/// epsilon + discounted payouts under attack - discounted payouts of the
/// honest twin.
double attack_profit(const RunResult& attack, const RunResult& twin,
                     std::size_t agent);

/// Rebuilds every identity's paid balance from matured and slashed events.
std::map<MinerId, double> replay_balances(std::span<const SimEvent> events);

}  // namespace delayed
