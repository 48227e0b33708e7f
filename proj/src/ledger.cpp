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

#include "delayed/ledger.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace delayed {

const char* to_string(MinerStatus s) {
  switch (s) {
    case MinerStatus::Active: return "Active";
    case MinerStatus::Blacklisted: return "Blacklisted";
    case MinerStatus::Restarting: return "Restarting";
  }
  return "?";
}

double PendingReward::decay_factor() const {
  return accrued_decay == 0.0 ? 1.0 : std::exp(-accrued_decay);
}

MinerId Ledger::register_identity(const PublicKey& key, std::size_t agent,
                                  double power, MinerStatus status,
                                  std::vector<MinerId> key_history) {
  if (by_key_.contains(key))
    throw ProtocolError("identity key already registered");
  MinerRecord rec;
  rec.id = MinerId{miners_.size()};
  rec.key = key;
  rec.agent = agent;
  rec.power = power;
  rec.status = status;
  rec.key_history = std::move(key_history);
  by_key_.emplace(key, rec.id);
  miners_.push_back(std::move(rec));
  return miners_.back().id;
}

MinerRecord& Ledger::at(MinerId id) {
  if (id.value >= miners_.size()) throw std::out_of_range("unknown miner id");
  return miners_[id.value];
}

const MinerRecord& Ledger::at(MinerId id) const {
  if (id.value >= miners_.size()) throw std::out_of_range("unknown miner id");
  return miners_[id.value];
}

std::optional<MinerId> Ledger::find(const PublicKey& key) const {
  auto it = by_key_.find(key);
  if (it == by_key_.end()) return std::nullopt;
  return it->second;
}

double Ledger::pending_nominal() const {
  double sum = 0.0;
  for (const auto& m : miners_)
    for (const auto& p : m.pending) sum += p.nominal;
  return sum;
}

double Ledger::paid_total() const {
  return std::accumulate(
      miners_.begin(), miners_.end(), 0.0,
      [](double acc, const MinerRecord& m) { return acc + m.paid_balance; });
}

double Ledger::conservation_residual() const {
  return totals_.accrued_nominal -
         (pending_nominal() + totals_.matured_paid + totals_.decay_loss +
          totals_.slashed);
}

std::vector<double> normalize_powers(std::span<const double> powers) {
  double total = 0.0;
  for (double p : powers) {
    if (!std::isfinite(p) || p < 0.0)
      throw ConfigError("power", "power: must be finite and >= 0");
    total += p;
  }
  if (!(total > 0.0))
    throw ConfigError("power", "power: at least one miner needs power > 0");
  std::vector<double> out(powers.begin(), powers.end());
  for (double& p : out) p /= total;
  return out;
}

void normalize_powers(std::span<MinerRecord> miners) {
  std::vector<double> raw;
  for (const auto& m : miners)
    if (m.status == MinerStatus::Active) raw.push_back(m.power);
  const auto scaled = normalize_powers(raw);
  std::size_t i = 0;
  for (auto& m : miners)
    if (m.status == MinerStatus::Active) m.power = scaled[i++];
}

}  // namespace delayed
