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

#include <filesystem>
#include <string>

#include "delayed/sim.hpp"
#include "json.hpp"

namespace delayed {

/// Scenario document:
///
///   {
///     "mode": "discrete",          // or "poisson"
///     "horizon": 1000,
///     "seed": 7,
///     "params": { "k": 3, "d": 0, "gamma0": 0, "decay_growth": 1,
///                 "alpha": 1, "alpha_decay": 0, "lambda": 1,
///                 "delta_t": 1, "discount": 0.9, "reporter_share": 0.5,
///                 "mining_cost": 0 },
///     "roster": [
///       { "id": "alice", "power": 0.6, "strategy": "honest" },
///       { "id": "eve", "power": 0.4, "strategy": "double_spend",
///         "strategy_args": { "l": 10, "eps": 1.2 } }
///     ]
///   }
///
/// "strategy" may also carry its arguments inline, e.g.
/// "double_spend(l=10, eps=1.2)". Extra top-level sections ("sweep",
/// "analyze") are left for the front-ends. Unknown keys inside "params" or a
/// roster entry are rejected. All failures are ConfigError.
SimConfig parse_scenario(const nlohmann::json& doc);
SimConfig load_scenario(const std::filesystem::path& path);
nlohmann::json load_json(const std::filesystem::path& path);

ProtocolParams parse_params(const nlohmann::json& j);
nlohmann::ordered_json params_to_json(const ProtocolParams& p);

}  // namespace delayed
