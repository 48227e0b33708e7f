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

#include "delayed/sim.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numeric>

#include "delayed/fraud.hpp"
#include "delayed/reward.hpp"

namespace delayed {

const char* to_string(SimMode mode) {
  return mode == SimMode::Discrete ? "discrete" : "poisson";
}

SimMode parse_mode(std::string_view text) {
  if (text == "discrete") return SimMode::Discrete;
  if (text == "poisson") return SimMode::Poisson;
  throw ConfigError("mode", fmt::format("mode: '{}' is not discrete|poisson", text));
}

void validate_config(const SimConfig& config) {
  validate_params(config.params);
  if (!std::isfinite(config.horizon) || !(config.horizon > 0.0))
    throw ConfigError("horizon", "horizon: must be > 0");
  if (config.mode == SimMode::Discrete &&
      config.horizon != std::floor(config.horizon))
    throw ConfigError("horizon", "horizon: must be a whole number of rounds");
  if (config.roster.empty())
    throw ConfigError("roster", "roster: at least one miner is required");
  std::vector<double> powers;
  for (const auto& a : config.roster) {
    powers.push_back(a.power);
    if (a.mining_cost && !(*a.mining_cost >= 0.0))
      throw ConfigError("mining_cost", "mining_cost: must be >= 0");
  }
  normalize_powers(powers);
}

Round horizon_rounds(const SimConfig& config) {
  if (config.mode == SimMode::Discrete)
    return static_cast<Round>(config.horizon);
  return static_cast<Round>(std::ceil(config.horizon / config.params.delta_t));
}

std::size_t select_winner(std::span<const double> powers, Rng& rng) {
  if (powers.empty()) throw std::invalid_argument("empty power vector");
  const double total = std::accumulate(powers.begin(), powers.end(), 0.0);
  if (std::abs(total - 1.0) > 1e-9)
    throw std::invalid_argument("power vector is not normalized");
  const double u = rng.uniform();
  double cumulative = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < powers.size(); ++i) {
    if (powers[i] <= 0.0) continue;
    cumulative += powers[i];
    last_positive = i;
    if (u < cumulative) return i;
  }
  return last_positive;  // u landed in the rounding slack above the total
}

PoissonClock::PoissonClock(double lambda, Rng& rng)
    : lambda_(lambda), next_(rng.exponential(lambda)) {}

std::vector<Arrival> PoissonClock::poisson_round(double round_end,
                                                 std::span<const double> powers,
                                                 Rng& rng) {
  std::vector<Arrival> out;
  while (next_ < round_end) {
    Arrival a;
    a.time = next_;
    if (powers.empty())
      rng.uniform();
    else
      a.winner = select_winner(powers, rng);
    out.push_back(a);
    const double step = rng.exponential(lambda_);
    const double after = next_ + step;
    next_ = after > next_ ? after : std::nextafter(next_, INFINITY);
  }
  return out;
}

double startup_success_probability(double p_v, const ProtocolParams& params) {
  return std::min(1.0, p_v * params.lambda * params.delta_t);
}

Round sample_startup_rounds(double d, double p_v, const ProtocolParams& params,
                            Rng& rng) {
  if (d <= 0.0) return 0;
  if (!(p_v > 0.0))
    throw std::invalid_argument("startup work never completes with zero power");
  const double q = startup_success_probability(p_v, params);
  const auto needed = static_cast<Round>(std::ceil(d));
  Round rounds = 0;
  for (Round successes = 0; successes < needed; ++rounds)
    if (rng.bernoulli(q)) ++successes;
  return rounds;
}

namespace {

struct PendingReport {
  MinerId accused;
  std::size_t agent = 0;
  DoubleSpendData evidence;
  Round due = 0;
};

class Engine {
 public:
  explicit Engine(const SimConfig& config)
      : params_(config.params),
        delta_(*config.params.discount),
        arrival_rng_(Rng::stream(config.seed, Rng::kArrivalStream)) {
    result_.config = config;
    result_.rounds = horizon_rounds(config);

    std::vector<double> raw;
    for (const auto& a : config.roster) raw.push_back(a.power);
    const auto powers = normalize_powers(raw);

    for (std::size_t i = 0; i < config.roster.size(); ++i) {
      AgentOutcome out;
      out.name = config.roster[i].name;
      out.strategy = config.roster[i].strategy;
      out.power = powers[i];
      out.mining_cost =
          config.roster[i].mining_cost.value_or(config.params.mining_cost);
      result_.agents.push_back(std::move(out));
      agent_rngs_.push_back(Rng::stream(config.seed, Rng::miner_stream(i)));
      register_key(i, MinerStatus::Active, {});
    }
    if (config.mode == SimMode::Poisson)
      clock_.emplace(params_.lambda, arrival_rng_);
  }

  RunResult finish() && { return std::move(result_); }

  void run() {
    for (Round r = 1; r <= result_.rounds; ++r) {
      try {
        step(r);
      } catch (const std::exception& e) {
        flush();
        throw SimulationAborted(
            fmt::format("round {}: {}", r, e.what()), result_.events);
      }
      flush();
    }
  }

 private:
  MinerId register_key(std::size_t agent, MinerStatus status,
                       std::vector<MinerId> history) {
    const std::uint64_t serial = ledger().size();
    const KeyPair kp = derive_keypair(result_.config.seed, serial);
    const MinerId id = ledger().register_identity(
        kp.public_key, agent, result_.agents[agent].power, status,
        std::move(history));
    seeds_.push_back(kp.seed);
    result_.agents[agent].identities.push_back(id);
    return id;
  }

  Ledger& ledger() { return result_.ledger; }
  MinerRecord& current(std::size_t agent) {
    return ledger().at(result_.agents[agent].identities.back());
  }

  void emit(Round r, double t, MinerId miner, EventPayload payload) {
    batch_.push_back(SimEvent{r, t, miner, std::move(payload)});
  }

  void flush() {
    std::stable_sort(batch_.begin(), batch_.end(), event_order);
    result_.events.insert(result_.events.end(), batch_.begin(), batch_.end());
    batch_.clear();
  }

  double weight(Round r) const {
    return std::pow(delta_, static_cast<double>(r - 1));
  }

  void churn(std::size_t agent, Round r, double t0) {
    auto& old = current(agent);
    const MinerId previous = old.id;
    old.retired = true;
    old.power = 0.0;
    old.startup_remaining = 0;

    auto history = old.key_history;
    history.push_back(previous);
    const Round startup = sample_startup_rounds(
        params_.d, result_.agents[agent].power, params_, agent_rngs_[agent]);
    const MinerId fresh =
        register_key(agent,
                     startup == 0 ? MinerStatus::Active : MinerStatus::Restarting,
                     std::move(history));
    ledger().at(fresh).startup_remaining = startup;
    emit(r, t0, fresh,
         IdentityChurnedData{agent, previous, ledger().at(fresh).key, startup});
  }

  void double_spend(std::size_t agent, double epsilon, Round r, double t0) {
    auto& rec = current(agent);
    const Outpoint out{next_outpoint_++};
    const SecretSeed& seed = seeds_[rec.id.value];
    DoubleSpendData data;
    data.agent = agent;
    data.epsilon = epsilon;
    // Same coin to a merchant and back to the attacker.
    data.tx_a = sign_transaction(seed, rec.key, out, 1.0);
    data.tx_b = sign_transaction(seed, rec.key, out, 1.0 + epsilon);
    emit(r, t0, rec.id, data);
    auto& outcome = result_.agents[agent];
    outcome.external_balance += epsilon;
    ++outcome.double_spends;
    reports_due_.push_back(PendingReport{rec.id, agent, std::move(data), r + 1});
  }

  std::optional<MinerId> pick_reporter(std::size_t accused_agent) const {
    for (const auto& rec : result_.ledger.miners())
      if (rec.status == MinerStatus::Active && !rec.retired &&
          rec.agent != accused_agent)
        return rec.id;
    return std::nullopt;
  }

  void step(Round r) {
    const double dt = params_.delta_t;
    const double t0 = static_cast<double>(r - 1) * dt;
    double t1 = static_cast<double>(r) * dt;
    if (result_.config.mode == SimMode::Poisson)
      t1 = std::min(t1, result_.config.horizon);
    const auto n = result_.agents.size();

    // (1) startup completions, actions, churn, double spends.
    for (std::size_t i = 0; i < n; ++i) {
      auto& rec = current(i);
      if (rec.status == MinerStatus::Restarting && rec.startup_remaining == 0) {
        rec.status = MinerStatus::Active;
        emit(r, t0, rec.id, StartupSolvedData{i});
      }
    }
    std::vector<bool> wants_to_mine(n, false);
    for (std::size_t i = 0; i < n; ++i) {
      const Action action =
          decide(result_.agents[i].strategy, Observation{r, current(i).status});
      if (std::holds_alternative<ChurnIdentity>(action)) churn(i, r, t0);
      if (const auto* ds = std::get_if<DoubleSpend>(&action))
        if (current(i).status == MinerStatus::Active)
          double_spend(i, ds->epsilon, r, t0);
      wants_to_mine[i] = !std::holds_alternative<Idle>(action);
    }

    std::vector<std::size_t> miners;
    std::vector<double> powers;
    std::vector<MinerId> active_ids;
    for (std::size_t i = 0; i < n; ++i) {
      const auto& rec = current(i);
      if (!wants_to_mine[i] || rec.status != MinerStatus::Active) continue;
      miners.push_back(i);
      powers.push_back(result_.agents[i].power);
      active_ids.push_back(rec.id);
      ++result_.agents[i].rounds_mined;
      if (r <= result_.rounds - static_cast<Round>(params_.k))
        ++result_.agents[i].mined_in_settled_window;
    }
    const double total = std::accumulate(powers.begin(), powers.end(), 0.0);
    if (total > 0.0)
      powers = normalize_powers(powers);
    else
      powers.clear();

    // (2) winners.
    std::vector<std::size_t> winners;
    if (result_.config.mode == SimMode::Discrete) {
      ++result_.arrivals;
      if (powers.empty()) {
        arrival_rng_.uniform();
      } else {
        const auto w = miners[select_winner(powers, arrival_rng_)];
        winners.push_back(w);
        emit(r, t0 + 0.5 * dt, current(w).id, BlockWonData{w});
      }
    } else {
      for (const auto& a : clock_->poisson_round(t1, powers, arrival_rng_)) {
        ++result_.arrivals;
        if (!a.winner) continue;
        const auto w = miners[*a.winner];
        winners.push_back(w);
        emit(r, a.time, current(w).id, BlockWonData{w});
      }
    }

    // (3) accrual.
    for (const auto w : winners) {
      const auto entry = accrue_reward(ledger(), current(w).id, r, params_);
      ++result_.agents[w].wins;
      emit(r, t1, entry.owner,
           RewardAccruedData{entry.nominal, entry.unlock_round});
    }

    // (4) decay.
    tick_decay(ledger(), r, params_);

    // (5) fraud reports for double spends seen last round.
    std::vector<PendingReport> due;
    std::erase_if(reports_due_, [&](PendingReport& p) {
      if (p.due > r) return false;
      due.push_back(std::move(p));
      return true;
    });
    for (auto& report : due) {
      const auto reporter = pick_reporter(report.agent);
      if (!reporter) continue;
      FraudProof proof;
      proof.tx_a = report.evidence.tx_a;
      proof.tx_b = report.evidence.tx_b;
      proof.accused = report.evidence.tx_a.signer;
      proof.reporter = ledger().at(*reporter).key;
      proof.round_submitted = r;
      const bool verified = verify_fraud_proof(proof);
      emit(r, t1, report.accused, FraudReportedData{*reporter, proof, verified});
      if (!verified) continue;
      const auto outcome = slash(ledger(), proof, params_);
      if (!outcome.applied) continue;
      emit(r, t1, outcome.accused,
           SlashedData{*reporter, outcome.entries, outcome.slashed_total,
                       outcome.reporter_credit, outcome.burned});
      auto& credited = result_.agents[ledger().at(*reporter).agent];
      credited.reporter_credits += outcome.reporter_credit;
      credited.discounted_paid += outcome.reporter_credit * weight(r);
    }

    // (6) maturity.
    for (const auto& p : mature_rewards(ledger(), r)) {
      auto& owner = result_.agents[ledger().at(p.owner).agent];
      owner.matured += p.amount;
      owner.discounted_paid += p.amount * weight(r);
      emit(r, t1, p.owner,
           RewardMaturedData{p.nominal, p.created_round, p.decay_factor,
                             p.amount});
    }

    // (7) participation.
    for (const auto id : update_participation(ledger(), r, active_ids)) {
      const auto& rec = ledger().at(id);
      emit(r, t1, id,
           DropoutData{rec.dropouts, params_.gamma_for(rec.dropouts)});
    }

    // (8) startup progress.
    for (std::size_t i = 0; i < n; ++i) {
      auto& rec = current(i);
      if (rec.status == MinerStatus::Restarting && rec.startup_remaining > 0)
        --rec.startup_remaining;
    }
  }

  ProtocolParams params_;
  double delta_;
  RunResult result_;
  Rng arrival_rng_;
  std::vector<Rng> agent_rngs_;
  std::vector<SecretSeed> seeds_;
  std::optional<PoissonClock> clock_;
  std::vector<PendingReport> reports_due_;
  std::vector<SimEvent> batch_;
  std::uint64_t next_outpoint_ = 1;
};

}  // namespace

RunResult run(const SimConfig& config) {
  validate_config(config);
  Engine engine(config);
  engine.run();
  return std::move(engine).finish();
}

SimConfig honest_twin(const SimConfig& config, std::size_t agent) {
  SimConfig twin = config;
  twin.roster.at(agent).strategy = HonestSpec{};
  return twin;
}

double realized_per_round_utility(const RunResult& result, std::size_t agent) {
  const auto& p = result.config.params;
  const Round settled = result.rounds - static_cast<Round>(p.k);
  if (settled <= 0)
    throw std::invalid_argument("horizon shorter than the reward timelock");
  const auto& a = result.agents.at(agent);
  const double cost = a.mining_cost * p.delta_t *
                      static_cast<double>(a.mined_in_settled_window);
  return std::pow(*p.discount, static_cast<double>(p.k)) * (a.matured - cost) /
         static_cast<double>(settled);
}

double attack_profit(const RunResult& attack, const RunResult& twin,
                     std::size_t agent) {
  const auto& a = attack.agents.at(agent);
  return a.external_balance + a.discounted_paid -
         twin.agents.at(agent).discounted_paid;
}

std::map<MinerId, double> replay_balances(std::span<const SimEvent> events) {
  std::map<MinerId, double> balances;
  for (const auto& e : events) {
    if (const auto* m = std::get_if<RewardMaturedData>(&e.payload))
      balances[e.miner] += m->amount;
    else if (const auto* s = std::get_if<SlashedData>(&e.payload))
      balances[s->reporter] += s->reporter_credit;
  }
  return balances;
}

}  // namespace delayed
