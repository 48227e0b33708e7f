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

#include "delayed/events.hpp"

#include <fmt/format.h>

#include <array>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <tuple>

namespace delayed {

namespace {

using nlohmann::ordered_json;

constexpr std::array<const char*, 9> kKindNames = {
    "BlockWon",     "RewardAccrued", "FraudReported",
    "Slashed",      "RewardMatured", "Dropout",
    "StartupSolved", "IdentityChurned", "DoubleSpendAttempted"};

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void add_payload(ordered_json& j, const EventPayload& payload) {
  std::visit(
      overloaded{
          [&](const BlockWonData& d) { j["agent"] = d.agent; },
          [&](const RewardAccruedData& d) {
            j["nominal"] = d.nominal;
            j["unlock_round"] = d.unlock_round;
          },
          [&](const FraudReportedData& d) {
            j["reporter_id"] = d.reporter.value;
            j["verified"] = d.verified;
            j["proof"] = to_json(d.proof);
          },
          [&](const SlashedData& d) {
            j["reporter"] = d.reporter.value;
            j["entries"] = d.entries;
            j["slashed_total"] = d.slashed_total;
            j["reporter_credit"] = d.reporter_credit;
            j["burned"] = d.burned;
          },
          [&](const RewardMaturedData& d) {
            j["nominal"] = d.nominal;
            j["created_round"] = d.created_round;
            j["decay_factor"] = d.decay_factor;
            j["amount"] = d.amount;
          },
          [&](const DropoutData& d) {
            j["dropouts"] = d.dropouts;
            j["gamma"] = d.gamma;
          },
          [&](const StartupSolvedData& d) { j["agent"] = d.agent; },
          [&](const IdentityChurnedData& d) {
            j["agent"] = d.agent;
            j["previous"] = d.previous.value;
            j["key"] = to_hex(d.key);
            j["startup_rounds"] = d.startup_rounds;
          },
          [&](const DoubleSpendData& d) {
            j["agent"] = d.agent;
            j["epsilon"] = d.epsilon;
            j["tx_a"] = to_json(d.tx_a);
            j["tx_b"] = to_json(d.tx_b);
          },
      },
      payload);
}

EventPayload read_payload(EventKind kind, const ordered_json& j) {
  switch (kind) {
    case EventKind::BlockWon:
      return BlockWonData{j.at("agent").get<std::size_t>()};
    case EventKind::RewardAccrued:
      return RewardAccruedData{j.at("nominal").get<double>(),
                               j.at("unlock_round").get<Round>()};
    case EventKind::FraudReported:
      return FraudReportedData{MinerId{j.at("reporter_id").get<std::uint64_t>()},
                               fraud_proof_from_json(j.at("proof")),
                               j.at("verified").get<bool>()};
    case EventKind::Slashed:
      return SlashedData{MinerId{j.at("reporter").get<std::uint64_t>()},
                         j.at("entries").get<std::size_t>(),
                         j.at("slashed_total").get<double>(),
                         j.at("reporter_credit").get<double>(),
                         j.at("burned").get<double>()};
    case EventKind::RewardMatured:
      return RewardMaturedData{j.at("nominal").get<double>(),
                               j.at("created_round").get<Round>(),
                               j.at("decay_factor").get<double>(),
                               j.at("amount").get<double>()};
    case EventKind::Dropout:
      return DropoutData{j.at("dropouts").get<std::uint32_t>(),
                         j.at("gamma").get<double>()};
    case EventKind::StartupSolved:
      return StartupSolvedData{j.at("agent").get<std::size_t>()};
    case EventKind::IdentityChurned:
      return IdentityChurnedData{j.at("agent").get<std::size_t>(),
                                 MinerId{j.at("previous").get<std::uint64_t>()},
                                 from_hex<32>(j.at("key").get<std::string>()),
                                 j.at("startup_rounds").get<Round>()};
    case EventKind::DoubleSpendAttempted:
      return DoubleSpendData{j.at("agent").get<std::size_t>(),
                             j.at("epsilon").get<double>(),
                             transaction_from_json(j.at("tx_a")),
                             transaction_from_json(j.at("tx_b"))};
  }
  throw std::invalid_argument("unknown event kind");
}

}  // namespace

const char* to_string(EventKind kind) {
  return kKindNames.at(static_cast<std::size_t>(kind));
}

std::optional<EventKind> parse_event_kind(std::string_view name) {
  for (std::size_t i = 0; i < kKindNames.size(); ++i)
    if (name == kKindNames[i]) return static_cast<EventKind>(i);
  return std::nullopt;
}

bool event_order(const SimEvent& a, const SimEvent& b) {
  return std::tuple(a.time, a.kind(), a.miner) <
         std::tuple(b.time, b.kind(), b.miner);
}

std::string to_line(const SimEvent& event) {
  ordered_json j;
  j["round"] = event.round;
  j["time"] = event.time;
  j["kind"] = to_string(event.kind());
  j["miner"] = event.miner.value;
  add_payload(j, event.payload);
  return j.dump();
}

SimEvent parse_line(std::string_view line) {
  const auto j = ordered_json::parse(line);
  const auto kind = parse_event_kind(j.at("kind").get<std::string>());
  if (!kind) throw std::invalid_argument("unknown event kind in log line");
  SimEvent e;
  e.round = j.at("round").get<Round>();
  e.time = j.at("time").get<double>();
  e.miner = MinerId{j.at("miner").get<std::uint64_t>()};
  e.payload = read_payload(*kind, j);
  return e;
}

void write_event_log(std::ostream& out, std::span<const SimEvent> events) {
  for (const auto& e : events) out << to_line(e) << '\n';
}

std::vector<SimEvent> read_event_log(std::istream& in) {
  std::vector<SimEvent> events;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) events.push_back(parse_line(line));
  return events;
}

void write_ledger_csv(std::ostream& out, std::span<const SimEvent> events) {
  out << "round,kind,owner,nominal,decay_factor,amount,reporter,"
         "reporter_credit,burned\n";
  for (const auto& e : events) {
    if (const auto* m = std::get_if<RewardMaturedData>(&e.payload)) {
      out << fmt::format("{},{},{},{},{},{},,,\n", e.round, to_string(e.kind()),
                         e.miner.value, m->nominal, m->decay_factor, m->amount);
    } else if (const auto* s = std::get_if<SlashedData>(&e.payload)) {
      out << fmt::format("{},{},{},,,{},{},{},{}\n", e.round,
                         to_string(e.kind()), e.miner.value, s->slashed_total,
                         s->reporter.value, s->reporter_credit, s->burned);
    }
  }
}

}  // namespace delayed
