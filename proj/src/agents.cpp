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

#include "delayed/agents.hpp"

#include <fmt/format.h>

#include <charconv>
#include <cmath>
#include <map>

namespace delayed {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
    s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
    s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad(std::string_view text, std::string_view why) {
  throw ConfigError("strategy", fmt::format("strategy: '{}' {}", text, why));
}

std::map<std::string, double, std::less<>> parse_args(std::string_view text,
                                                      std::string_view body) {
  std::map<std::string, double, std::less<>> args;
  while (!trim(body).empty()) {
    const auto comma = body.find(',');
    const auto item = trim(body.substr(0, comma));
    const auto eq = item.find('=');
    if (eq == std::string_view::npos) bad(text, "has an argument without '='");
    const auto key = trim(item.substr(0, eq));
    const auto raw = trim(item.substr(eq + 1));
    double value = 0.0;
    const auto [ptr, ec] =
        std::from_chars(raw.data(), raw.data() + raw.size(), value);
    if (ec != std::errc{} || ptr != raw.data() + raw.size() ||
        !std::isfinite(value))
      bad(text, "has a non-numeric argument");
    if (!args.emplace(std::string(key), value).second)
      bad(text, "repeats an argument");
    if (comma == std::string_view::npos) break;
    body.remove_prefix(comma + 1);
  }
  return args;
}

double take(std::map<std::string, double, std::less<>>& args,
            std::string_view text, std::string_view key) {
  auto it = args.find(key);
  if (it == args.end()) bad(text, fmt::format("is missing '{}'", key));
  const double v = it->second;
  args.erase(it);
  return v;
}

Round whole(double v, std::string_view text, std::string_view key) {
  if (v != std::floor(v) || v < 1.0)
    bad(text, fmt::format("needs integer {} >= 1", key));
  return static_cast<Round>(v);
}

}  // namespace

Action honest_strategy(const Observation&) { return MineHonest{}; }

Action double_spender_strategy(Round attack_round, double epsilon,
                               const Observation& obs) {
  if (obs.round == attack_round && obs.status == MinerStatus::Active)
    return DoubleSpend{epsilon};
  if (obs.round == attack_round + 1) return ChurnIdentity{};
  return MineHonest{};
}

Action churner_strategy(Round period, const Observation& obs) {
  if (period >= 1 && obs.round % period == 0) return ChurnIdentity{};
  return MineHonest{};
}

Action decide(const StrategySpec& spec, const Observation& obs) {
  if (const auto* ds = std::get_if<DoubleSpendSpec>(&spec))
    return double_spender_strategy(ds->attack_round, ds->epsilon, obs);
  if (const auto* c = std::get_if<ChurnSpec>(&spec))
    return churner_strategy(c->period, obs);
  return honest_strategy(obs);
}

StrategySpec parse_strategy(std::string_view text) {
  const auto s = trim(text);
  const auto open = s.find('(');
  const auto name = trim(s.substr(0, open));
  std::string_view body;
  if (open != std::string_view::npos) {
    if (s.back() != ')') bad(text, "has unbalanced parentheses");
    body = s.substr(open + 1, s.size() - open - 2);
  }
  auto args = parse_args(text, body);

  StrategySpec spec;
  if (name == "honest") {
    spec = HonestSpec{};
  } else if (name == "double_spend") {
    DoubleSpendSpec ds;
    ds.attack_round = whole(take(args, text, "l"), text, "l");
    ds.epsilon = take(args, text, "eps");
    if (!(ds.epsilon > 0.0)) bad(text, "needs eps > 0");
    spec = ds;
  } else if (name == "churn") {
    spec = ChurnSpec{whole(take(args, text, "period"), text, "period")};
  } else {
    bad(text, "is not a known strategy");
  }
  if (!args.empty())
    bad(text, fmt::format("has unknown argument '{}'", args.begin()->first));
  return spec;
}

std::string to_string(const StrategySpec& spec) {
  if (const auto* ds = std::get_if<DoubleSpendSpec>(&spec))
    return fmt::format("double_spend(l={}, eps={})", ds->attack_round,
                       ds->epsilon);
  if (const auto* c = std::get_if<ChurnSpec>(&spec))
    return fmt::format("churn(period={})", c->period);
  return "honest";
}

}  // namespace delayed
