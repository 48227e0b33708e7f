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

#include <cstdint>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "delayed/sim.hpp"
#include "json.hpp"

namespace delayed {

/// One row of summary.csv.
struct RunSummary {
  std::uint64_t seed = 0;
  std::uint32_t k = 0;
  double d = 0.0;
  double gamma0 = 0.0;
  double delta = 0.0;
  double epsilon = 0.0;          // total prize over all double spenders
  double attacker_profit = 0.0;  // summed over double spenders vs honest twins
  double honest_mean_utility = 0.0;
  double slashed_total = 0.0;
};

/// A scenario run together with one honest-twin run per double spender.
struct Evaluation {
  RunResult result;
  std::vector<std::pair<std::size_t, RunResult>> twins;
  RunSummary summary;
};

Evaluation evaluate(const SimConfig& config);

/// Break-even prize for roster entry `agent`: the discounted value it stands
/// to lose, counting the expected startup rounds of its next key (rounded to
/// the nearest round). NaN when the attack round is not past the timelock.
double predicted_break_even(const SimConfig& config, std::size_t agent);

inline constexpr const char* kSummaryHeader =
    "seed,k,d,gamma0,delta,epsilon,attacker_profit,honest_mean_utility,"
    "slashed_total";

std::string summary_row(const RunSummary& s);
std::string render_report(const Evaluation& eval);

/// Parameter grid for sweeps. Axis names: k, d, gamma0, delta, epsilon,
/// attack_round. Axes are expanded as a cartesian product in the given order.
struct SweepGrid {
  std::vector<std::pair<std::string, std::vector<double>>> axes;
  std::size_t points() const;
};

/// Reads {"k": [...], "epsilon": [...], ...}. Throws ConfigError on unknown
/// names, empty axes or an empty grid.
SweepGrid parse_sweep_grid(const nlohmann::json& grid);
/// Parses "name=v1,v2,..." or "name=start:stop:step".
std::pair<std::string, std::vector<double>> parse_grid_axis(const std::string& text);

/// Applies one grid point to a copy of `base`.
SimConfig apply_point(const SimConfig& base, const SweepGrid& grid,
                      const std::vector<double>& point);

struct SweepRow {
  std::size_t point = 0;
  std::vector<double> values;  // one per axis
  RunSummary summary;
  std::int64_t attack_round = 0;
  double predicted_break_even = 0.0;
};

/// Every grid point for seeds base_seed .. base_seed + seeds - 1. Runs are
/// spread over `threads` workers; rows come back in (point, seed) order.
std::vector<SweepRow> run_sweep(const SimConfig& base, const SweepGrid& grid,
                                std::uint64_t base_seed, std::size_t seeds,
                                unsigned threads);

inline constexpr const char* kSweepHeader =
    "seed,k,d,gamma0,delta,epsilon,attack_round,attacker_profit,"
    "honest_mean_utility,slashed_total,predicted_break_even";
inline constexpr const char* kSweepMeanHeader =
    "k,d,gamma0,delta,epsilon,attack_round,seeds,mean_attacker_profit,"
    "mean_honest_utility,predicted_break_even,predicted_profitable";

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);
void write_sweep_mean_csv(std::ostream& out, const std::vector<SweepRow>& rows);

}  // namespace delayed
