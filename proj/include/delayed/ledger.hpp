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

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "delayed/fraud.hpp"
#include "delayed/params.hpp"

namespace delayed {

/// Registration serial of an identity. Serials are handed out in order, so
/// "id order" is registration order.
struct MinerId {
  std::uint64_t value = 0;
  auto operator<=>(const MinerId&) const = default;
};

enum class MinerStatus { Active, Blacklisted, Restarting };

const char* to_string(MinerStatus s);

struct PendingReward {
  MinerId owner;
  double nominal = 0.0;
  Round created_round = 0;
  Round unlock_round = 0;
  double accrued_decay = 0.0;  // sum of gamma_v(r) * delta_t over locked rounds

  double decay_factor() const;
  double value() const { return nominal * decay_factor(); }
};

struct MinerRecord {
  MinerId id;
  PublicKey key{};
  std::size_t agent = 0;  // roster slot of the logical agent owning this key
  double power = 0.0;
  MinerStatus status = MinerStatus::Active;
  Round startup_remaining = 0;  // rounds of startup work left while Restarting
  bool retired = false;         // abandoned by its agent after a key change
  std::uint32_t dropouts = 0;
  std::deque<PendingReward> pending;  // nondecreasing unlock_round
  double paid_balance = 0.0;
  std::vector<MinerId> key_history;   // earlier identities of the same agent

  bool holds_locked_rewards() const { return !pending.empty(); }
};

/// Running totals for the conservation check. Nominal value that entered the
/// ledger must equal what is still pending plus what left it through
/// maturity, decay, burning or reporter credit.
struct LedgerTotals {
  double accrued_nominal = 0.0;
  double matured_paid = 0.0;
  double decay_loss = 0.0;
  double slashed = 0.0;
  double burned = 0.0;
  double reporter_credits = 0.0;
};

/// Every identity ever registered, with its timelocked rewards. Identities
/// are never removed; blacklisting and retirement are status changes.
class Ledger {
 public:
  MinerId register_identity(const PublicKey& key, std::size_t agent,
                            double power, MinerStatus status,
                            std::vector<MinerId> key_history = {});

  MinerRecord& at(MinerId id);
  const MinerRecord& at(MinerId id) const;
  std::optional<MinerId> find(const PublicKey& key) const;

  std::span<MinerRecord> miners() { return miners_; }
  std::span<const MinerRecord> miners() const { return miners_; }
  std::size_t size() const { return miners_.size(); }

  LedgerTotals& totals() { return totals_; }
  const LedgerTotals& totals() const { return totals_; }

  double pending_nominal() const;
  double paid_total() const;
  /// accrued - (pending + matured + decay loss + slashed); zero up to rounding.
  double conservation_residual() const;

 private:
  std::vector<MinerRecord> miners_;
  std::map<PublicKey, MinerId> by_key_;
  LedgerTotals totals_;
};

/// Rescales to unit sum preserving ratios. Throws ConfigError on negative,
/// non-finite or all-zero input.
std::vector<double> normalize_powers(std::span<const double> powers);

/// Same as above over the Active records; other records keep their power.
void normalize_powers(std::span<MinerRecord> miners);

}  // namespace delayed
