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

#include "delayed/scenario.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <set>

namespace delayed {

namespace {

using nlohmann::json;

const json& field(const json& j, const char* name) {
  if (!j.is_object() || !j.contains(name))
    throw ConfigError(name, fmt::format("{}: missing", name));
  return j.at(name);
}

double number(const json& j, const char* name) {
  if (!j.is_number())
    throw ConfigError(name, fmt::format("{}: expected a number", name));
  return j.get<double>();
}

std::uint64_t whole(const json& j, const char* name) {
  const bool ok = j.is_number_unsigned() ||
                  (j.is_number_integer() && j.get<std::int64_t>() >= 0);
  if (!ok)
    throw ConfigError(name,
                      fmt::format("{}: expected a non-negative integer", name));
  return j.get<std::uint64_t>();
}

void reject_unknown(const json& j, const std::set<std::string>& known,
                    const char* where) {
  for (const auto& [key, _] : j.items())
    if (!known.contains(key))
      throw ConfigError(key, fmt::format("{}: unknown key '{}'", where, key));
}

std::string strategy_text(const json& entry) {
  const auto& s = field(entry, "strategy");
  if (!s.is_string())
    throw ConfigError("strategy", "strategy: expected a string");
  std::string text = s.get<std::string>();
  if (!entry.contains("strategy_args")) return text;
  const auto& args = entry.at("strategy_args");
  if (!args.is_object())
    throw ConfigError("strategy_args", "strategy_args: expected an object");
  if (text.find('(') != std::string::npos)
    throw ConfigError("strategy_args",
                      "strategy_args: arguments given twice");
  std::string inner;
  for (const auto& [key, value] : args.items()) {
    if (!value.is_number())
      throw ConfigError("strategy_args",
                        fmt::format("strategy_args: '{}' must be numeric", key));
    if (!inner.empty()) inner += ", ";
    inner += fmt::format("{}={}", key, value.get<double>());
  }
  return fmt::format("{}({})", text, inner);
}

}  // namespace

ProtocolParams parse_params(const json& j) {
  if (!j.is_object()) throw ConfigError("params", "params: expected an object");
  reject_unknown(j,
                 {"k", "d", "gamma0", "decay_growth", "alpha", "alpha_decay",
                  "lambda", "delta_t", "discount", "reporter_share",
                  "mining_cost"},
                 "params");
  ProtocolParams p;
  if (j.contains("k")) {
    const auto k = whole(j.at("k"), "k");
    if (k > 1'000'000'000ULL) throw ConfigError("k", "k: too large");
    p.k = static_cast<std::uint32_t>(k);
  }
  auto opt = [&](const char* name, double& dst) {
    if (j.contains(name)) dst = number(j.at(name), name);
  };
  opt("d", p.d);
  opt("gamma0", p.gamma0);
  opt("decay_growth", p.decay_growth);
  opt("alpha", p.alpha);
  opt("alpha_decay", p.alpha_decay);
  opt("lambda", p.lambda);
  opt("delta_t", p.delta_t);
  opt("reporter_share", p.reporter_share);
  opt("mining_cost", p.mining_cost);
  if (j.contains("discount")) p.discount = number(j.at("discount"), "discount");
  return p;
}

nlohmann::ordered_json params_to_json(const ProtocolParams& p) {
  nlohmann::ordered_json j;
  j["k"] = p.k;
  j["d"] = p.d;
  j["gamma0"] = p.gamma0;
  j["decay_growth"] = p.decay_growth;
  j["alpha"] = p.alpha;
  j["alpha_decay"] = p.alpha_decay;
  j["lambda"] = p.lambda;
  j["delta_t"] = p.delta_t;
  if (p.discount) j["discount"] = *p.discount;
  j["reporter_share"] = p.reporter_share;
  j["mining_cost"] = p.mining_cost;
  return j;
}

SimConfig parse_scenario(const json& doc) {
  if (!doc.is_object())
    throw ConfigError("scenario", "scenario: expected a JSON object");
  SimConfig cfg;
  if (doc.contains("mode")) {
    if (!doc.at("mode").is_string())
      throw ConfigError("mode", "mode: expected a string");
    cfg.mode = parse_mode(doc.at("mode").get<std::string>());
  }
  cfg.horizon = number(field(doc, "horizon"), "horizon");
  if (doc.contains("seed")) cfg.seed = whole(doc.at("seed"), "seed");
  cfg.params = parse_params(field(doc, "params"));

  const auto& roster = field(doc, "roster");
  if (!roster.is_array() || roster.empty())
    throw ConfigError("roster", "roster: expected a non-empty array");
  std::set<std::string> names;
  for (const auto& entry : roster) {
    if (!entry.is_object())
      throw ConfigError("roster", "roster: entries must be objects");
    reject_unknown(entry, {"id", "power", "strategy", "strategy_args", "mining_cost"},
                   "roster entry");
    AgentSpec a;
    const auto& id = field(entry, "id");
    if (!id.is_string()) throw ConfigError("id", "id: expected a string");
    a.name = id.get<std::string>();
    if (!names.insert(a.name).second)
      throw ConfigError("id", fmt::format("id: duplicate miner '{}'", a.name));
    a.power = number(field(entry, "power"), "power");
    a.strategy = entry.contains("strategy")
                     ? parse_strategy(strategy_text(entry))
                     : StrategySpec{HonestSpec{}};
    if (entry.contains("mining_cost"))
      a.mining_cost = number(entry.at("mining_cost"), "mining_cost");
    cfg.roster.push_back(std::move(a));
  }
  validate_config(cfg);
  return cfg;
}

json load_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in)
    throw ConfigError("scenario",
                      fmt::format("scenario: cannot open '{}'", path.string()));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("scenario",
                      fmt::format("scenario: {}: {}", path.string(), e.what()));
  }
}

SimConfig load_scenario(const std::filesystem::path& path) {
  return parse_scenario(load_json(path));
}

}  // namespace delayed
