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
#include <optional>
#include <span>
#include <vector>

#include "delayed/fraud.hpp"
#include "delayed/ledger.hpp"
#include "delayed/params.hpp"

namespace delayed {

struct Payout {
  MinerId owner;
  Round round = 0;
  double nominal = 0.0;
  Round created_round = 0;
  double decay_factor = 1.0;
  double amount = 0.0;
};

struct SlashOutcome {
  bool applied = false;  // false for a repeat proof against a blacklisted key
  MinerId accused;
  std::optional<MinerId> reporter;
  std::size_t entries = 0;
  double slashed_total = 0.0;
  double reporter_credit = 0.0;
  double burned = 0.0;
};

/// Locks alpha(round) for k rounds. The owner must be an Active, non-retired
/// identity; anything else is a ProtocolError.
PendingReward accrue_reward(Ledger& ledger, MinerId miner, Round round,
                            const ProtocolParams& params);

/// Adds gamma_v(round) * delta_t to every entry that is locked during
/// `round`, i.e. created before it. An entry therefore sees exactly k ticks
/// before it unlocks.
void tick_decay(Ledger& ledger, Round round, const ProtocolParams& params);

/// Pays out every entry whose lock has expired, in miner id order.
std::vector<Payout> mature_rewards(Ledger& ledger, Round round);

/// Removes all pending rewards of the accused key, credits the reporter with
/// its share and blacklists the key. Throws ProtocolError if the proof does
/// not verify or names unknown identities.
SlashOutcome slash(Ledger& ledger, const FraudProof& proof,
                   const ProtocolParams& params);

/// Bumps the dropout counter of every identity that still has locked rewards
/// but did not mine this round. Returns the identities that dropped out.
std::vector<MinerId> update_participation(Ledger& ledger, Round round,
                                          std::span<const MinerId> active);

}  // namespace delayed
