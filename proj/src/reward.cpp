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

#include "delayed/reward.hpp"

#include <algorithm>

namespace delayed {

PendingReward accrue_reward(Ledger& ledger, MinerId miner, Round round,
                            const ProtocolParams& params) {
  auto& rec = ledger.at(miner);
  if (rec.status != MinerStatus::Active || rec.retired)
    throw ProtocolError("reward accrual requested for a non-active identity");

  PendingReward entry;
  entry.owner = miner;
  entry.nominal = params.reward_at(round);
  entry.created_round = round;
  entry.unlock_round = round + static_cast<Round>(params.k);
  if (!rec.pending.empty() && rec.pending.back().unlock_round > entry.unlock_round)
    throw ProtocolError("reward accrued out of round order");

  rec.pending.push_back(entry);
  ledger.totals().accrued_nominal += entry.nominal;
  return entry;
}

void tick_decay(Ledger& ledger, Round round, const ProtocolParams& params) {
  if (params.gamma0 == 0.0) return;
  for (auto& rec : ledger.miners()) {
    if (rec.pending.empty()) continue;
    const double step = params.gamma_for(rec.dropouts) * params.delta_t;
    for (auto& entry : rec.pending)
      if (entry.created_round < round && round <= entry.unlock_round)
        entry.accrued_decay += step;
  }
}

std::vector<Payout> mature_rewards(Ledger& ledger, Round round) {
  std::vector<Payout> out;
  auto& totals = ledger.totals();
  for (auto& rec : ledger.miners()) {
    while (!rec.pending.empty() && rec.pending.front().unlock_round <= round) {
      const PendingReward entry = rec.pending.front();
      rec.pending.pop_front();

      Payout p;
      p.owner = rec.id;
      p.round = round;
      p.nominal = entry.nominal;
      p.created_round = entry.created_round;
      p.decay_factor = entry.decay_factor();
      p.amount = entry.nominal * p.decay_factor;

      rec.paid_balance += p.amount;
      totals.matured_paid += p.amount;
      totals.decay_loss += entry.nominal - p.amount;
      out.push_back(p);
    }
  }
  return out;
}

SlashOutcome slash(Ledger& ledger, const FraudProof& proof,
                   const ProtocolParams& params) {
  if (!verify_fraud_proof(proof))
    throw ProtocolError("slash requested with an invalid fraud proof");
  const auto accused = ledger.find(proof.accused);
  const auto reporter = ledger.find(proof.reporter);
  if (!accused || !reporter)
    throw ProtocolError("fraud proof names an unregistered identity");

  SlashOutcome out;
  out.accused = *accused;
  out.reporter = *reporter;

  auto& rec = ledger.at(*accused);
  if (rec.status == MinerStatus::Blacklisted) return out;

  auto& totals = ledger.totals();
  for (const auto& entry : rec.pending) {
    const double value = entry.value();
    out.slashed_total += value;
    totals.decay_loss += entry.nominal - value;
    ++out.entries;
  }
  rec.pending.clear();
  rec.status = MinerStatus::Blacklisted;
  rec.power = 0.0;

  out.reporter_credit = params.reporter_share * out.slashed_total;
  out.burned = (1.0 - params.reporter_share) * out.slashed_total;
  out.applied = true;

  ledger.at(*reporter).paid_balance += out.reporter_credit;
  totals.slashed += out.slashed_total;
  totals.reporter_credits += out.reporter_credit;
  totals.burned += out.burned;
  return out;
}

std::vector<MinerId> update_participation(Ledger& ledger, Round /*round*/,
                                          std::span<const MinerId> active) {
  std::vector<MinerId> sorted(active.begin(), active.end());
  std::sort(sorted.begin(), sorted.end());

  std::vector<MinerId> dropped;
  for (auto& rec : ledger.miners()) {
    if (!rec.holds_locked_rewards()) continue;
    if (std::binary_search(sorted.begin(), sorted.end(), rec.id)) continue;
    ++rec.dropouts;
    dropped.push_back(rec.id);
  }
  return dropped;
}

}  // namespace delayed
