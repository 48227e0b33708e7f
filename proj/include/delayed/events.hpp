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
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "delayed/fraud.hpp"
#include "delayed/ledger.hpp"

namespace delayed {

// Declaration order is the tie-break rank. Within a round, step-1 events
// (startup, churn, double spend) are stamped at the round's start time and
// bookkeeping events at its end time, so ordering by (time, rank, miner)
// reproduces the engine's processing order across round boundaries too.
enum class EventKind : std::uint8_t {
  BlockWon,
  RewardAccrued,
  FraudReported,
  Slashed,
  RewardMatured,
  Dropout,
  StartupSolved,
  IdentityChurned,
  DoubleSpendAttempted,
};

const char* to_string(EventKind kind);
std::optional<EventKind> parse_event_kind(std::string_view name);

struct BlockWonData {
  std::size_t agent = 0;
};
struct RewardAccruedData {
  double nominal = 0.0;
  Round unlock_round = 0;
};
struct FraudReportedData {
  MinerId reporter;
  FraudProof proof;
  bool verified = false;
};
struct SlashedData {
  MinerId reporter;
  std::size_t entries = 0;
  double slashed_total = 0.0;
  double reporter_credit = 0.0;
  double burned = 0.0;
};
struct RewardMaturedData {
  double nominal = 0.0;
  Round created_round = 0;
  double decay_factor = 1.0;
  double amount = 0.0;
};
struct DropoutData {
  std::uint32_t dropouts = 0;
  double gamma = 0.0;
};
struct StartupSolvedData {
  std::size_t agent = 0;
};
struct IdentityChurnedData {
  std::size_t agent = 0;
  MinerId previous;
  PublicKey key{};
  Round startup_rounds = 0;
};
struct DoubleSpendData {
  std::size_t agent = 0;
  double epsilon = 0.0;
  Transaction tx_a;
  Transaction tx_b;
};

// Alternative index == EventKind value.
using EventPayload =
    std::variant<BlockWonData, RewardAccruedData, FraudReportedData,
                 SlashedData, RewardMaturedData, DropoutData,
                 StartupSolvedData, IdentityChurnedData, DoubleSpendData>;

struct SimEvent {
  Round round = 0;
  double time = 0.0;
  MinerId miner;
  EventPayload payload;

  EventKind kind() const { return static_cast<EventKind>(payload.index()); }
};

/// Strict weak order on (time, kind rank, miner id).
bool event_order(const SimEvent& a, const SimEvent& b);

/// One JSON object per line, fields in a fixed order:
/// round, time, kind, miner, then the payload fields.
std::string to_line(const SimEvent& event);
SimEvent parse_line(std::string_view line);

void write_event_log(std::ostream& out, std::span<const SimEvent> events);
std::vector<SimEvent> read_event_log(std::istream& in);

/// Payout and slash events only, columns:
/// round,kind,owner,nominal,decay_factor,amount,reporter,reporter_credit,burned
void write_ledger_csv(std::ostream& out, std::span<const SimEvent> events);

}  // namespace delayed
