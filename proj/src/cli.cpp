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

#include "delayed/cli.hpp"

#include <fmt/format.h>

#include <CLI11.hpp>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <thread>

#include "delayed/economics.hpp"
#include "delayed/game.hpp"
#include "delayed/report.hpp"
#include "delayed/scenario.hpp"

namespace delayed {

namespace {

namespace fs = std::filesystem;

struct CommonOptions {
  std::string scenario;
  std::optional<std::uint64_t> seed;
  std::string out = ".";
  std::optional<std::string> mode;
  std::optional<double> horizon;
};

void add_common(CLI::App* app, CommonOptions& o) {
  app->add_option("--scenario", o.scenario, "Scenario JSON file")->required();
  app->add_option("--seed", o.seed, "Override the scenario seed");
  app->add_option("--out", o.out, "Output directory");
  app->add_option("--mode", o.mode, "discrete or poisson");
  app->add_option("--horizon", o.horizon, "Rounds (discrete) or time (poisson)");
}

SimConfig load_with_overrides(const CommonOptions& o, const nlohmann::json& doc) {
  SimConfig cfg = parse_scenario(doc);
  if (o.seed) cfg.seed = *o.seed;
  if (o.mode) cfg.mode = parse_mode(*o.mode);
  if (o.horizon) cfg.horizon = *o.horizon;
  validate_config(cfg);
  return cfg;
}

std::ofstream open_output(const fs::path& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error(fmt::format("cannot write {}", path.string()));
  return f;
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec)
    throw std::runtime_error(fmt::format("cannot create {}: {}", dir.string(), ec.message()));
}

int cmd_run(const CommonOptions& o, std::ostream& out) {
  const SimConfig cfg = load_with_overrides(o, load_json(o.scenario));
  const fs::path dir = o.out;
  make_dir(dir);
  Evaluation eval;
  try {
    eval = evaluate(cfg);
  } catch (const SimulationAborted& e) {
    auto log = open_output(dir / "events.log");
    write_event_log(log, e.partial_log());
    throw;
  }
  {
    auto log = open_output(dir / "events.log");
    write_event_log(log, eval.result.events);
  }
  {
    auto csv = open_output(dir / "summary.csv");
    csv << kSummaryHeader << '\n' << summary_row(eval.summary) << '\n';
  }
  const std::string report = render_report(eval);
  {
    auto txt = open_output(dir / "report.txt");
    txt << report;
  }
  out << report;
  return 0;
}

int cmd_sweep(const CommonOptions& o, const std::string& sweep_file,
              const std::vector<std::string>& grid_args, std::size_t seeds,
              unsigned threads, std::ostream& out) {
  const auto doc = load_json(o.scenario);
  SimConfig base = load_with_overrides(o, doc);

  SweepGrid grid;
  if (!sweep_file.empty()) {
    grid = parse_sweep_grid(load_json(sweep_file));
  } else if (grid_args.empty() && doc.contains("sweep")) {
    grid = parse_sweep_grid(doc.at("sweep"));
  }
  for (const auto& arg : grid_args) grid.axes.push_back(parse_grid_axis(arg));
  if (grid.points() == 0) throw ConfigError("sweep", "sweep: empty grid");

  const fs::path dir = o.out;
  make_dir(dir);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const auto rows = run_sweep(base, grid, base.seed, seeds, threads);
  {
    auto csv = open_output(dir / "sweep.csv");
    write_sweep_csv(csv, rows);
  }
  {
    auto csv = open_output(dir / "sweep_mean.csv");
    write_sweep_mean_csv(csv, rows);
  }
  write_sweep_mean_csv(out, rows);
  return 0;
}

struct AnalyzeOptions {
  std::string scenario;
  std::vector<double> k{3}, l{10}, d{0}, gamma0{0}, delta{0.9}, alpha{1},
      lambda{1}, p{1};
  double delta_t = 1.0;
};

void read_axis(const nlohmann::json& section, const char* key,
               std::vector<double>& values, CLI::App* app) {
  // Command-line values win over the config file.
  if (app->count(std::string("--") + key) > 0 || !section.contains(key)) return;
  const auto& v = section.at(key);
  values.clear();
  auto push = [&](const nlohmann::json& x) {
    if (!x.is_number()) throw ConfigError(key, fmt::format("analyze: '{}' must be numeric", key));
    values.push_back(x.get<double>());
  };
  if (v.is_array()) {
    for (const auto& x : v) push(x);
  } else {
    push(v);
  }
  if (values.empty()) throw ConfigError(key, fmt::format("analyze: '{}' is empty", key));
}

Round whole_round(const char* field, double v) {
  if (v != std::floor(v) || v < 0 || v > 1e15)
    throw ConfigError(field, fmt::format("{}: expected a whole number, got {}", field, v));
  return static_cast<Round>(v);
}

int cmd_analyze(AnalyzeOptions& o, CLI::App* app, std::ostream& out) {
  if (!o.scenario.empty()) {
    const auto doc = load_json(o.scenario);
    const auto section = doc.contains("analyze") ? doc.at("analyze") : nlohmann::json::object();
    read_axis(section, "k", o.k, app);
    read_axis(section, "l", o.l, app);
    read_axis(section, "d", o.d, app);
    read_axis(section, "gamma0", o.gamma0, app);
    read_axis(section, "delta", o.delta, app);
    read_axis(section, "alpha", o.alpha, app);
    read_axis(section, "lambda", o.lambda, app);
    read_axis(section, "p", o.p, app);
  }

  out << fmt::format("{:>5} {:>6} {:>8} {:>8} {:>6} {:>7} {:>7} {:>7} {:>12} {:>14} {:>14} {:>14} {:>14}\n",
                     "k", "l", "d", "gamma0", "delta", "alpha", "lambda", "p",
                     "E[startup]", "value_at_risk", "VaR+startup",
                     "O(k+r)", "break_even_eps");
  for (double k : o.k)
    for (double l : o.l)
      for (double d : o.d)
        for (double g : o.gamma0)
          for (double delta : o.delta)
            for (double alpha : o.alpha)
              for (double lambda : o.lambda)
                for (double p : o.p) {
                  ProtocolParams params;
                  params.k = static_cast<std::uint32_t>(whole_round("k", k));
                  params.d = d;
                  params.gamma0 = g;
                  params.discount = delta;
                  params.alpha = alpha;
                  params.lambda = lambda;
                  params.delta_t = o.delta_t;
                  validate_params(params);
                  if (!(p > 0.0 && p <= 1.0))
                    throw ConfigError("p", "p: power share must lie in (0, 1]");
                  const Round rounds = whole_round("l", l);
                  if (rounds <= static_cast<Round>(params.k))
                    throw ConfigError("l", "l: attack round must exceed k");
                  const double q = startup_success_probability(p, params);
                  const double er = d > 0.0 ? economics::expected_startup_rounds(d, q) : 0.0;
                  const Round r = std::llround(er);
                  const double var = economics::value_at_risk(params, p, rounds);
                  const double var_r =
                      economics::value_at_risk_with_startup(params, p, rounds, r);
                  out << fmt::format(
                      "{:>5} {:>6} {:>8} {:>8} {:>6} {:>7} {:>7} {:>7} {:>12.6g} {:>14.5f} {:>14.5f} {:>14.5f} {:>14.5f}\n",
                      params.k, rounds, d, g, delta, alpha, lambda, p, er, var,
                      var_r, economics::attack_cost_magnitude(params, r), var_r);
                }
  return 0;
}

struct GameOptions {
  int n = 3;
  double alpha = 1.0;
  double beta = 2.0;
  int k = 2;
  int t = 1;
};

std::string profile_string(const game::Profile& p) {
  std::string s;
  for (auto a : p) s += a ? '1' : '0';
  return s;
}

int cmd_game(const GameOptions& o, std::ostream& out) {
  const game::CoordinationGame g{o.n, o.alpha, o.beta};
  game::validate(g);
  if (g.n > 12) throw ConfigError("n", "n: at most 12 players");
  if (o.k < 1 || o.k > g.n) throw ConfigError("k", "k: must lie in [1, n]");
  if (o.t < 0) throw ConfigError("t", "t: must be >= 0");

  out << fmt::format("coordination game n={} alpha={} beta={}\n\n", g.n, g.alpha, g.beta);
  out << fmt::format("{:<{}}  payoffs\n", "profile", std::max(7, g.n));
  for (std::uint32_t mask = 0; mask < (1u << g.n); ++mask) {
    game::Profile p(static_cast<std::size_t>(g.n));
    for (int i = 0; i < g.n; ++i) p[static_cast<std::size_t>(i)] = (mask >> (g.n - 1 - i)) & 1u;
    const auto pay = game::payoff(g, p);
    std::string cells;
    for (double v : pay) cells += fmt::format(" {:>6g}", v);
    out << fmt::format("{:<{}}{}\n", profile_string(p), std::max(7, g.n), cells);
  }

  const auto zero = game::all_zero(g.n);
  const bool resilient = game::is_k_resilient(g, zero, o.k);
  const bool ruled_out = game::resilience_ruled_out(g.alpha, g.beta, o.k);
  out << '\n';
  out << fmt::format("all-zero is Nash: {}\n", game::is_nash(g, zero) ? "yes" : "no");
  out << fmt::format("all-zero is {}-resilient (exhaustive): {}\n", o.k, resilient ? "yes" : "no");
  out << fmt::format("2*beta/k > alpha (resilience ruled out): {}\n", ruled_out ? "yes" : "no");

  out << "\nk  exhaustive  closed-form  agree\n";
  int disagreements = 0;
  for (int k = 1; k <= g.n; ++k) {
    const bool r = game::is_k_resilient(g, zero, k);
    const bool c = !game::resilience_ruled_out(g.alpha, g.beta, k);
    if (r != c) ++disagreements;
    out << fmt::format("{:<2} {:<11} {:<12} {}\n", k, r ? "resilient" : "not",
                       c ? "resilient" : "not", r == c ? "yes" : "NO");
  }
  if (disagreements > 0)
    out << fmt::format("{} of {} coalition sizes disagree\n", disagreements, g.n);

  const auto delta = game::min_discount(g.alpha, g.beta, o.k, o.t);
  if (delta)
    out << fmt::format("\nmin discount (k={}, t={}): {:.9f}\n", o.k, o.t, *delta);
  else
    out << fmt::format("\nmin discount (k={}, t={}): Infeasible\n", o.k, o.t);
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulator and analyzer for delayed proof-of-work reward schemes",
               "delayed-sim"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto* run_cmd = app.add_subcommand("run", "Run one scenario");
  add_common(run_cmd, run_opts);

  CommonOptions sweep_opts;
  std::string sweep_file;
  std::vector<std::string> grid_args;
  std::size_t seeds = 32;
  unsigned threads = 0;
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep a parameter grid over many seeds");
  add_common(sweep_cmd, sweep_opts);
  sweep_cmd->add_option("--sweep", sweep_file, "JSON grid file");
  sweep_cmd->add_option("--grid", grid_args, "name=v1,v2 or name=start:stop:step")
      ->take_all();
  sweep_cmd->add_option("--seeds", seeds, "Seeds per grid point");
  sweep_cmd->add_option("--threads", threads, "Worker threads (0 = all cores)");

  AnalyzeOptions analyze_opts;
  auto* analyze_cmd = app.add_subcommand("analyze", "Closed-form attack economics");
  analyze_cmd->add_option("--scenario", analyze_opts.scenario,
                          "JSON file with an \"analyze\" grid");
  analyze_cmd->add_option("--k", analyze_opts.k)->delimiter(',');
  analyze_cmd->add_option("--l", analyze_opts.l, "Attack round")->delimiter(',');
  analyze_cmd->add_option("--d", analyze_opts.d)->delimiter(',');
  analyze_cmd->add_option("--gamma0", analyze_opts.gamma0)->delimiter(',');
  analyze_cmd->add_option("--delta", analyze_opts.delta, "Discount factor")->delimiter(',');
  analyze_cmd->add_option("--alpha", analyze_opts.alpha)->delimiter(',');
  analyze_cmd->add_option("--lambda", analyze_opts.lambda)->delimiter(',');
  analyze_cmd->add_option("--p", analyze_opts.p, "Attacker power share")->delimiter(',');
  analyze_cmd->add_option("--delta-t", analyze_opts.delta_t, "Round length");

  GameOptions game_opts;
  auto* game_cmd = app.add_subcommand("game", "Coordination game analysis");
  game_cmd->add_option("--n", game_opts.n, "Players");
  game_cmd->add_option("--alpha", game_opts.alpha);
  game_cmd->add_option("--beta", game_opts.beta);
  game_cmd->add_option("--k", game_opts.k, "Coalition size");
  game_cmd->add_option("--t", game_opts.t, "Punishment rounds");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (*run_cmd) return cmd_run(run_opts, out);
    if (*sweep_cmd) return cmd_sweep(sweep_opts, sweep_file, grid_args, seeds, threads, out);
    try {
      if (*analyze_cmd) return cmd_analyze(analyze_opts, analyze_cmd, out);
      if (*game_cmd) return cmd_game(game_opts, out);
    } catch (const std::invalid_argument& e) {
      err << "error: " << e.what() << '\n';
      return 2;
    }
  } catch (const ConfigError& e) {
    err << "config error (" << e.field() << "): " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

}  // namespace delayed
