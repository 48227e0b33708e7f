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

#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "delayed/agents.hpp"
#include "delayed/cli.hpp"
#include "delayed/report.hpp"
#include "delayed/scenario.hpp"
#include "doctest.h"
#include "support.hpp"

using namespace delayed;
namespace fs = std::filesystem;

namespace {

const char* kScenario = R"({
  "mode": "discrete",
  "horizon": 120,
  "seed": 7,
  "params": {"k": 3, "d": 0, "gamma0": 0.01, "discount": 0.9,
             "reporter_share": 0.5},
  "roster": [
    {"id": "alice", "power": 0.6, "strategy": "honest"},
    {"id": "eve", "power": 0.4, "strategy": "double_spend",
     "strategy_args": {"l": 20, "eps": 1.5}}
  ]
})";

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name)
      : path(fs::temp_directory_path() / ("delayed-test-" + name)) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  fs::path write(const std::string& file, const std::string& text) const {
    std::ofstream(path / file) << text;
    return path / file;
  }
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct CliResult {
  int code;
  std::string out, err;
};

CliResult cli(std::vector<std::string> args) {
  args.insert(args.begin(), "delayed-sim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

}  // namespace

TEST_SUITE("agents") {
  TEST_CASE("honest always mines") {
    for (Round r = 1; r < 50; ++r)
      CHECK(std::holds_alternative<MineHonest>(honest_strategy({r, MinerStatus::Active})));
  }

  TEST_CASE("double spender timeline") {
    CHECK(std::holds_alternative<MineHonest>(double_spender_strategy(10, 2, {9, MinerStatus::Active})));
    CHECK(double_spender_strategy(10, 2, {10, MinerStatus::Active}) == Action{DoubleSpend{2}});
    CHECK(std::holds_alternative<ChurnIdentity>(double_spender_strategy(10, 2, {11, MinerStatus::Active})));
    CHECK(std::holds_alternative<MineHonest>(double_spender_strategy(10, 2, {12, MinerStatus::Active})));
  }

  TEST_CASE("churner fires every period") {
    int churns = 0;
    for (Round r = 1; r <= 100; ++r)
      churns += std::holds_alternative<ChurnIdentity>(churner_strategy(10, {r, MinerStatus::Active}));
    CHECK(churns == 10);
  }

  TEST_CASE("strategy strings") {
    CHECK(parse_strategy("honest") == StrategySpec{HonestSpec{}});
    CHECK(parse_strategy("double_spend(l=50, eps=2.5)") == StrategySpec{DoubleSpendSpec{50, 2.5}});
    CHECK(parse_strategy("churn(period=10)") == StrategySpec{ChurnSpec{10}});
    for (const auto& s : {parse_strategy("honest"), parse_strategy("double_spend(l=5, eps=1)"),
                          parse_strategy("churn(period=3)")})
      CHECK(parse_strategy(to_string(s)) == s);
    for (const char* bad : {"selfish", "double_spend(l=0, eps=1)", "double_spend(l=5, eps=0)",
                            "churn(period=0)", "churn(period=2", "double_spend(eps=1)"})
      CHECK_THROWS_AS(parse_strategy(bad), ConfigError);
  }
}

TEST_SUITE("events") {
  TEST_CASE("log lines round trip") {
    auto p = testing::base_params(4);
    p.d = 2;
    p.gamma0 = 0.02;
    p.decay_growth = 1.5;
    const auto r = run(testing::discrete(
        200, 3, p,
        {testing::agent("a", 0.5), testing::agent("b", 0.3, ChurnSpec{30}),
         testing::agent("c", 0.2, DoubleSpendSpec{40, 2})}));
    std::set<EventKind> kinds;
    for (const auto& e : r.events) {
      kinds.insert(e.kind());
      const auto line = to_line(e);
      CHECK(to_line(parse_line(line)) == line);
    }
    CHECK(kinds.size() == 9);

    std::ostringstream out;
    write_event_log(out, r.events);
    std::istringstream in(out.str());
    CHECK(read_event_log(in).size() == r.events.size());
  }

  TEST_CASE("field order is fixed") {
    SimEvent e{4, 3.5, MinerId{2}, BlockWonData{1}};
    CHECK(to_line(e) == R"({"round":4,"time":3.5,"kind":"BlockWon","miner":2,"agent":1})");
    CHECK_THROWS(parse_line(R"({"round":4,"time":3.5,"kind":"Nope","miner":2})"));
  }

  TEST_CASE("every double spend in a log yields a verifying proof") {
    auto p = testing::base_params(3);
    const auto r = run(testing::discrete(
        300, 9, p,
        {testing::agent("a", 0.4), testing::agent("x", 0.2, DoubleSpendSpec{30, 1}),
         testing::agent("y", 0.2, DoubleSpendSpec{60, 1}),
         testing::agent("z", 0.2, DoubleSpendSpec{90, 1})}));
    std::ostringstream out;
    write_event_log(out, r.events);
    std::istringstream in(out.str());
    int spends = 0, slashes = 0;
    for (const auto& e : read_event_log(in)) {
      if (const auto* d = std::get_if<DoubleSpendData>(&e.payload)) {
        FraudProof proof{d->tx_a, d->tx_b, d->tx_a.signer, r.ledger.at(MinerId{0}).key, e.round + 1};
        CHECK(verify_fraud_proof(proof));
        ++spends;
      }
      slashes += e.kind() == EventKind::Slashed;
    }
    CHECK(spends == 3);
    CHECK(slashes == 3);
  }

  TEST_CASE("ledger csv") {
    const auto r = run(testing::lone_attacker(1.2, 10, 0, 20));
    std::ostringstream out;
    write_ledger_csv(out, r.events);
    const auto text = out.str();
    CHECK(text.rfind("round,kind,owner,nominal,decay_factor,amount,reporter,reporter_credit,burned\n", 0) == 0);
    CHECK(text.find("11,Slashed,0,,,3,1,1.5,1.5\n") != std::string::npos);
    CHECK(text.find("4,RewardMatured,0,1,1,1,,,\n") != std::string::npos);
  }
}

TEST_SUITE("scenario") {
  TEST_CASE("parse a full scenario") {
    const auto cfg = parse_scenario(nlohmann::json::parse(kScenario));
    CHECK(cfg.mode == SimMode::Discrete);
    CHECK(cfg.horizon == 120);
    CHECK(cfg.seed == 7);
    CHECK(cfg.params.k == 3);
    CHECK(cfg.params.discount == 0.9);
    REQUIRE(cfg.roster.size() == 2);
    CHECK(cfg.roster[1].strategy == StrategySpec{DoubleSpendSpec{20, 1.5}});
  }

  TEST_CASE("errors name the field") {
    auto doc = nlohmann::json::parse(kScenario);
    auto field_of = [](const nlohmann::json& j) {
      try {
        parse_scenario(j);
      } catch (const ConfigError& e) {
        return e.field();
      }
      return std::string("none");
    };
    auto no_roster = doc;
    no_roster.erase("roster");
    CHECK(field_of(no_roster) == "roster");
    auto typo = doc;
    typo["params"]["gama0"] = 0.1;
    CHECK(field_of(typo) == "gama0");
    auto dup = doc;
    dup["roster"][1]["id"] = "alice";
    CHECK(field_of(dup) == "id");
    auto no_discount = doc;
    no_discount["params"].erase("discount");
    CHECK(field_of(no_discount) == "discount");
    auto bad_mode = doc;
    bad_mode["mode"] = "continuous";
    CHECK(field_of(bad_mode) == "mode");
    auto neg = doc;
    neg["roster"][0]["power"] = -1;
    CHECK(field_of(neg) == "power");
  }

  TEST_CASE("params serialize back") {
    const auto cfg = parse_scenario(nlohmann::json::parse(kScenario));
    const auto j = nlohmann::json::parse(params_to_json(cfg.params).dump());
    const auto back = parse_params(j);
    CHECK(back.k == cfg.params.k);
    CHECK(back.gamma0 == cfg.params.gamma0);
    CHECK(back.discount == cfg.params.discount);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("run writes three files and is reproducible") {
    TempDir dir("run");
    const auto scenario = dir.write("s.json", kScenario);
    const auto a = cli({"run", "--scenario", scenario.string(), "--out", (dir.path / "a").string()});
    const auto b = cli({"run", "--scenario", scenario.string(), "--out", (dir.path / "b").string()});
    REQUIRE(a.code == 0);
    REQUIRE(b.code == 0);
    std::set<std::string> files;
    for (const auto& f : fs::directory_iterator(dir.path / "a")) files.insert(f.path().filename());
    CHECK(files == std::set<std::string>{"events.log", "report.txt", "summary.csv"});
    for (const char* f : {"events.log", "report.txt", "summary.csv"})
      CHECK(slurp(dir.path / "a" / f) == slurp(dir.path / "b" / f));
    const auto summary = slurp(dir.path / "a" / "summary.csv");
    CHECK(summary.rfind(
              "seed,k,d,gamma0,delta,epsilon,attacker_profit,honest_mean_utility,slashed_total\n", 0) == 0);
    CHECK(a.out.find("eve: epsilon=1.5") != std::string::npos);

    const auto c = cli({"run", "--scenario", scenario.string(), "--seed", "8", "--out",
                        (dir.path / "c").string()});
    CHECK(c.code == 0);
    CHECK(slurp(dir.path / "c" / "events.log") != slurp(dir.path / "a" / "events.log"));
  }

  TEST_CASE("config errors exit with 2") {
    TempDir dir("errors");
    auto doc = nlohmann::json::parse(kScenario);
    doc.erase("roster");
    const auto missing = dir.write("m.json", doc.dump());
    auto r = cli({"run", "--scenario", missing.string(), "--out", dir.path.string()});
    CHECK(r.code == 2);
    CHECK(r.err.find("roster") != std::string::npos);

    CHECK(cli({"run", "--scenario", (dir.path / "nope.json").string()}).code == 2);
    CHECK(cli({"run"}).code == 2);
    CHECK(cli({"frobnicate"}).code == 2);
    const auto good = dir.write("s.json", kScenario);
    CHECK(cli({"run", "--scenario", good.string(), "--mode", "quantum"}).code == 2);
    CHECK(cli({"run", "--scenario", good.string(), "--horizon", "-5"}).code == 2);
  }

  TEST_CASE("runtime failures exit with 1 and keep the partial log") {
    TempDir dir("abort");
    auto doc = nlohmann::json::parse(kScenario);
    doc["params"]["d"] = 2;
    doc["roster"].push_back({{"id", "ghost"}, {"power", 0}, {"strategy", "churn(period=5)"}});
    const auto s = dir.write("s.json", doc.dump());
    const auto r = cli({"run", "--scenario", s.string(), "--out", dir.path.string()});
    CHECK(r.code == 1);
    CHECK(fs::exists(dir.path / "events.log"));
  }

  TEST_CASE("sweep rows and golden headers") {
    TempDir dir("sweep");
    const auto s = dir.write("s.json", kScenario);
    const auto r = cli({"sweep", "--scenario", s.string(), "--grid", "epsilon=0.5,2",
                        "--grid", "k=2:3:1", "--seeds", "3", "--out", dir.path.string()});
    REQUIRE(r.code == 0);
    std::istringstream rows(slurp(dir.path / "sweep.csv"));
    std::string header, line;
    std::getline(rows, header);
    CHECK(header ==
          "seed,k,d,gamma0,delta,epsilon,attack_round,attacker_profit,honest_mean_utility,"
          "slashed_total,predicted_break_even");
    int n = 0;
    while (std::getline(rows, line)) ++n;
    CHECK(n == 12);
    std::istringstream means(slurp(dir.path / "sweep_mean.csv"));
    std::getline(means, header);
    CHECK(header ==
          "k,d,gamma0,delta,epsilon,attack_round,seeds,mean_attacker_profit,"
          "mean_honest_utility,predicted_break_even,predicted_profitable");

    const auto again = cli({"sweep", "--scenario", s.string(), "--grid", "epsilon=0.5,2",
                            "--grid", "k=2:3:1", "--seeds", "3", "--threads", "1", "--out",
                            (dir.path / "single").string()});
    CHECK(again.code == 0);
    CHECK(slurp(dir.path / "sweep.csv") == slurp(dir.path / "single" / "sweep.csv"));
  }

  TEST_CASE("sweep errors") {
    TempDir dir("sweep-errors");
    const auto s = dir.write("s.json", kScenario);
    CHECK(cli({"sweep", "--scenario", s.string(), "--out", dir.path.string()}).code == 2);
    CHECK(cli({"sweep", "--scenario", s.string(), "--grid", "bogus=1"}).code == 2);
    CHECK(cli({"sweep", "--scenario", s.string(), "--grid", "epsilon="}).code == 2);
    const auto empty = dir.write("g.json", R"({"k": []})");
    CHECK(cli({"sweep", "--scenario", s.string(), "--sweep", empty.string()}).code == 2);
  }

  TEST_CASE("analyze") {
    const auto r = cli({"analyze"});
    CHECK(r.code == 0);
    CHECK(r.out.find("0.94492") != std::string::npos);
    const auto grid = cli({"analyze", "--d", "0,5", "--p", "0.5"});
    CHECK(grid.code == 0);
    CHECK(cli({"analyze", "--l", "2"}).code == 2);
    CHECK(cli({"analyze", "--delta", "1.5"}).code == 2);
  }

  TEST_CASE("game") {
    const auto r = cli({"game", "--n", "3", "--alpha", "1", "--beta", "2"});
    CHECK(r.code == 0);
    CHECK(r.out.find("110          2      2      0") != std::string::npos);
    CHECK(r.out.find("000          1      1      1") != std::string::npos);
    const auto inf = cli({"game", "--alpha", "1", "--beta", "3", "--k", "2", "--t", "1"});
    CHECK(inf.out.find("Infeasible") != std::string::npos);
    CHECK(cli({"game", "--n", "1"}).code == 2);
    CHECK(cli({"game", "--beta", "-1"}).code == 2);
  }
}
