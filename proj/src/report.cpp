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

#include "delayed/report.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <mutex>
#include <ostream>
#include <thread>

#include "delayed/economics.hpp"

namespace delayed {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool is_honest(const StrategySpec& s) {
  return std::holds_alternative<HonestSpec>(s);
}

}  // namespace

double predicted_break_even(const SimConfig& config, std::size_t agent) {
  const auto* ds = std::get_if<DoubleSpendSpec>(&config.roster.at(agent).strategy);
  if (!ds) return kNaN;
  std::vector<double> raw;
  for (const auto& a : config.roster) raw.push_back(a.power);
  const double p = normalize_powers(raw)[agent];
  if (ds->attack_round <= static_cast<Round>(config.params.k) || p <= 0.0)
    return kNaN;
  Round r = 0;
  if (config.params.d > 0.0) {
    const double q = startup_success_probability(p, config.params);
    r = std::llround(economics::expected_startup_rounds(config.params.d, q));
  }
  return economics::value_at_risk_with_startup(config.params, p,
                                               ds->attack_round, r);
}

Evaluation evaluate(const SimConfig& config) {
  Evaluation eval;
  eval.result = run(config);
  const auto& p = config.params;

  RunSummary& s = eval.summary;
  s.seed = config.seed;
  s.k = p.k;
  s.d = p.d;
  s.gamma0 = p.gamma0;
  s.delta = p.discount.value_or(kNaN);
  s.slashed_total = eval.result.ledger.totals().slashed;

  for (std::size_t i = 0; i < config.roster.size(); ++i) {
    const auto* ds = std::get_if<DoubleSpendSpec>(&config.roster[i].strategy);
    if (!ds) continue;
    auto twin = run(honest_twin(config, i));
    s.epsilon += ds->epsilon;
    s.attacker_profit += attack_profit(eval.result, twin, i);
    eval.twins.emplace_back(i, std::move(twin));
  }

  double total = 0.0;
  int honest = 0;
  const bool settled = eval.result.rounds > static_cast<Round>(p.k);
  for (std::size_t i = 0; i < config.roster.size(); ++i) {
    if (!is_honest(config.roster[i].strategy)) continue;
    ++honest;
    if (settled) total += realized_per_round_utility(eval.result, i);
  }
  s.honest_mean_utility = (honest > 0 && settled) ? total / honest : kNaN;
  return eval;
}

std::string summary_row(const RunSummary& s) {
  return fmt::format("{},{},{},{},{},{},{},{},{}", s.seed, s.k, s.d, s.gamma0,
                     s.delta, s.epsilon, s.attacker_profit,
                     s.honest_mean_utility, s.slashed_total);
}

std::string render_report(const Evaluation& eval) {
  const auto& cfg = eval.result.config;
  const auto& p = cfg.params;
  const auto validated = validate_params(p);
  std::string out;
  auto line = [&](std::string s) {
    out += s;
    out += '\n';
  };

  line(fmt::format("mode {}, {} rounds, seed {}", to_string(cfg.mode),
                   eval.result.rounds, cfg.seed));
  line(fmt::format(
      "params: k={} d={} gamma0={} decay_growth={} alpha={} alpha_decay={} "
      "lambda={} delta_t={} discount={} reporter_share={} mining_cost={}{}",
      p.k, p.d, p.gamma0, p.decay_growth, p.alpha, p.alpha_decay, p.lambda,
      p.delta_t, *p.discount, p.reporter_share, p.mining_cost,
      validated.legacy_mode ? " (legacy mode)" : ""));
  line("");
  line(fmt::format("{:<12} {:<28} {:>7} {:>8} {:>8} {:>12} {:>14} {:>14} {:>10}",
                   "miner", "strategy", "power", "keys", "wins", "paid",
                   "realized/rnd", "expected/rnd", "rel_err"));
  const bool settled = eval.result.rounds > static_cast<Round>(p.k);
  for (std::size_t i = 0; i < eval.result.agents.size(); ++i) {
    const auto& a = eval.result.agents[i];
    const double realized =
        settled ? realized_per_round_utility(eval.result, i) : kNaN;
    const double expected =
        economics::per_round_utility(p, a.power, a.mining_cost, 1);
    const double rel =
        expected != 0.0 ? std::abs(realized - expected) / std::abs(expected) : kNaN;
    line(fmt::format(
        "{:<12} {:<28} {:>7.4f} {:>8} {:>8} {:>12.6g} {:>14.6g} {:>14.6g} {:>10.3g}",
        a.name, to_string(a.strategy), a.power, a.identities.size(), a.wins,
        a.matured + a.reporter_credits, realized, expected, rel));
  }

  if (!eval.twins.empty()) {
    line("");
    line("attacks (profit = prize + discounted payouts - honest twin)");
    for (const auto& [agent, twin] : eval.twins) {
      const auto& a = eval.result.agents[agent];
      const double profit = attack_profit(eval.result, twin, agent);
      const double threshold = predicted_break_even(cfg, agent);
      const auto verdict = [](bool yes) { return yes ? "profitable" : "unprofitable"; };
      line(fmt::format(
          "  {}: epsilon={} profit={:.6g} break_even={:.6g} predicted={} observed={}",
          a.name, a.external_balance, profit, threshold,
          std::isnan(threshold)
              ? "n/a"
              : verdict(economics::attack_profitable(a.external_balance, threshold)),
          verdict(profit >= 0.0)));
    }
  }

  const auto& t = eval.result.ledger.totals();
  line("");
  line(fmt::format(
      "ledger: accrued={:.10g} paid={:.10g} pending={:.10g} decay_loss={:.10g} "
      "slashed={:.10g} burned={:.10g} reporter_credits={:.10g} residual={:.3g}",
      t.accrued_nominal, eval.result.ledger.paid_total(),
      eval.result.ledger.pending_nominal(), t.decay_loss, t.slashed, t.burned,
      t.reporter_credits, eval.result.ledger.conservation_residual()));
  return out;
}

std::size_t SweepGrid::points() const {
  if (axes.empty()) return 0;
  std::size_t n = 1;
  for (const auto& [_, values] : axes) n *= values.size();
  return n;
}

namespace {

const std::vector<std::string> kAxes = {"k",     "d",       "gamma0",
                                        "delta", "epsilon", "attack_round"};

void check_axis(const std::string& name, const std::vector<double>& values) {
  if (std::find(kAxes.begin(), kAxes.end(), name) == kAxes.end())
    throw ConfigError(name, fmt::format("sweep: unknown parameter '{}'", name));
  if (values.empty())
    throw ConfigError(name, fmt::format("sweep: '{}' has no values", name));
}

}  // namespace

SweepGrid parse_sweep_grid(const nlohmann::json& grid) {
  if (!grid.is_object()) throw ConfigError("sweep", "sweep: expected an object");
  SweepGrid out;
  for (const auto& [name, values] : grid.items()) {
    std::vector<double> v;
    if (!values.is_array())
      throw ConfigError(name, fmt::format("sweep: '{}' must be an array", name));
    for (const auto& x : values) {
      if (!x.is_number())
        throw ConfigError(name, fmt::format("sweep: '{}' must be numeric", name));
      v.push_back(x.get<double>());
    }
    check_axis(name, v);
    out.axes.emplace_back(name, std::move(v));
  }
  if (out.points() == 0) throw ConfigError("sweep", "sweep: empty grid");
  return out;
}

std::pair<std::string, std::vector<double>> parse_grid_axis(const std::string& text) {
  const auto eq = text.find('=');
  if (eq == std::string::npos)
    throw ConfigError("sweep", fmt::format("sweep: '{}' is not name=values", text));
  const std::string name = text.substr(0, eq);
  const std::string body = text.substr(eq + 1);
  std::vector<double> values;
  auto num = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != s.size() || s.empty())
      throw ConfigError(name, fmt::format("sweep: bad number '{}'", s));
    return v;
  };
  if (std::count(body.begin(), body.end(), ':') == 2) {
    const auto c1 = body.find(':');
    const auto c2 = body.find(':', c1 + 1);
    const double start = num(body.substr(0, c1));
    const double stop = num(body.substr(c1 + 1, c2 - c1 - 1));
    const double step = num(body.substr(c2 + 1));
    if (!(step > 0.0) || stop < start)
      throw ConfigError(name, "sweep: range needs step > 0 and stop >= start");
    const auto n = static_cast<long>(std::floor((stop - start) / step + 1e-9));
    for (long i = 0; i <= n; ++i) values.push_back(start + static_cast<double>(i) * step);
  } else {
    std::size_t pos = 0;
    while (pos <= body.size() && !body.empty()) {
      const auto comma = body.find(',', pos);
      values.push_back(num(body.substr(pos, comma - pos)));
      if (comma == std::string::npos) break;
      pos = comma + 1;
    }
  }
  check_axis(name, values);
  return {name, values};
}

SimConfig apply_point(const SimConfig& base, const SweepGrid& grid,
                      const std::vector<double>& point) {
  SimConfig cfg = base;
  auto integral = [](const std::string& name, double v, double min) {
    if (v != std::floor(v) || v < min)
      throw ConfigError(name, fmt::format("sweep: {} needs integers >= {}", name, min));
    return v;
  };
  auto for_attackers = [&](const std::string& name, auto&& apply) {
    bool any = false;
    for (auto& a : cfg.roster)
      if (auto* ds = std::get_if<DoubleSpendSpec>(&a.strategy)) {
        apply(*ds);
        any = true;
      }
    if (!any)
      throw ConfigError(name, fmt::format("sweep: '{}' needs a double_spend miner", name));
  };
  for (std::size_t i = 0; i < grid.axes.size(); ++i) {
    const auto& name = grid.axes[i].first;
    const double v = point[i];
    if (name == "k") {
      cfg.params.k = static_cast<std::uint32_t>(integral(name, v, 0));
    } else if (name == "d") {
      cfg.params.d = v;
    } else if (name == "gamma0") {
      cfg.params.gamma0 = v;
    } else if (name == "delta") {
      cfg.params.discount = v;
    } else if (name == "epsilon") {
      if (!(v > 0.0)) throw ConfigError(name, "sweep: epsilon must be > 0");
      for_attackers(name, [&](DoubleSpendSpec& ds) { ds.epsilon = v; });
    } else if (name == "attack_round") {
      const auto l = static_cast<Round>(integral(name, v, 1));
      for_attackers(name, [&](DoubleSpendSpec& ds) { ds.attack_round = l; });
    }
  }
  validate_config(cfg);
  return cfg;
}

std::vector<SweepRow> run_sweep(const SimConfig& base, const SweepGrid& grid,
                                std::uint64_t base_seed, std::size_t seeds,
                                unsigned threads) {
  if (grid.points() == 0) throw ConfigError("sweep", "sweep: empty grid");
  if (seeds == 0) throw ConfigError("seeds", "seeds: must be >= 1");

  // Expand and validate every point up front so config errors surface before
  // any work starts.
  std::vector<std::vector<double>> points;
  std::vector<SimConfig> configs;
  for (std::size_t idx = 0; idx < grid.points(); ++idx) {
    std::vector<double> point(grid.axes.size());
    std::size_t rest = idx;
    for (std::size_t a = grid.axes.size(); a-- > 0;) {
      const auto& values = grid.axes[a].second;
      point[a] = values[rest % values.size()];
      rest /= values.size();
    }
    configs.push_back(apply_point(base, grid, point));
    points.push_back(std::move(point));
  }

  const std::size_t jobs = configs.size() * seeds;
  std::vector<SweepRow> rows(jobs);
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;

  auto worker = [&] {
    for (;;) {
      const std::size_t job = next.fetch_add(1);
      if (job >= jobs) return;
      const std::size_t pt = job / seeds;
      SimConfig cfg = configs[pt];
      cfg.seed = base_seed + job % seeds;
      try {
        const auto eval = evaluate(cfg);
        SweepRow& row = rows[job];
        row.point = pt;
        row.values = points[pt];
        row.summary = eval.summary;
        row.predicted_break_even = kNaN;
        for (std::size_t i = 0; i < cfg.roster.size(); ++i)
          if (const auto* ds = std::get_if<DoubleSpendSpec>(&cfg.roster[i].strategy)) {
            row.attack_round = ds->attack_round;
            row.predicted_break_even = predicted_break_even(cfg, i);
            break;
          }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };

  const unsigned n = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(jobs)));
  std::vector<std::thread> pool;
  for (unsigned i = 0; i < n; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return rows;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepHeader << '\n';
  for (const auto& r : rows) {
    const auto& s = r.summary;
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", s.seed, s.k, s.d,
                       s.gamma0, s.delta, s.epsilon, r.attack_round,
                       s.attacker_profit, s.honest_mean_utility,
                       s.slashed_total, r.predicted_break_even);
  }
}

void write_sweep_mean_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << kSweepMeanHeader << '\n';
  std::size_t i = 0;
  while (i < rows.size()) {
    std::size_t j = i;
    double profit = 0.0, utility = 0.0;
    while (j < rows.size() && rows[j].point == rows[i].point) {
      profit += rows[j].summary.attacker_profit;
      utility += rows[j].summary.honest_mean_utility;
      ++j;
    }
    const auto n = static_cast<double>(j - i);
    const auto& s = rows[i].summary;
    const double be = rows[i].predicted_break_even;
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", s.k, s.d, s.gamma0,
                       s.delta, s.epsilon, rows[i].attack_round, j - i,
                       profit / n, utility / n, be,
                       std::isnan(be) ? "n/a"
                       : economics::attack_profitable(s.epsilon, be) ? "yes"
                                                                    : "no");
    i = j;
  }
}

}  // namespace delayed
