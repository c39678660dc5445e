// Copyright 2026 The wgame Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <sys/wait.h>
#include <unistd.h>

#include "wgame/cli.hpp"
#include "wgame/wgame.hpp"

namespace wgame {
namespace {

namespace fs = std::filesystem;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result Invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  int code = cli::Run(args, out, err);
  return {code, out.str(), err.str()};
}

class Cli : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() / ("wgame_cli_" + std::to_string(::getpid()) + "_" +
                                        ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
    for (const auto& e : corpus::Catalog()) Write(e.name + ".json", io::SerializeModel(e.build()));
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Write(const std::string& name, const std::string& text) {
    auto p = (dir_ / name).string();
    std::ofstream(p) << text;
    return p;
  }
  std::string Path(const std::string& name) const { return (dir_ / name).string(); }
  std::string Model(const std::string& name) const { return Path(name + ".json"); }

  fs::path dir_;
};

TEST_F(Cli, ExamplesListAndExport) {
  auto r = Invoke({"--format", "json", "examples", "list"});
  ASSERT_EQ(r.code, 0);
  auto j = io::ParseJson(r.out);
  EXPECT_EQ(j["details"]["examples"].size(), 8u);
  auto e = Invoke({"examples", "export", "witsenhausen-noncausal"});
  ASSERT_EQ(e.code, 0);
  EXPECT_EQ(io::SerializeModel(io::ParseModelText(e.out)), e.out);
  EXPECT_EQ(Invoke({"examples", "export", "nope"}).code, cli::kExitInput);
  auto s = Invoke({"examples", "--steps", "5", "export", "sequential", "--output", Path("seq.json")});
  ASSERT_EQ(s.code, 0);
  EXPECT_EQ(io::ParseModelText(io::ReadFile(Path("seq.json"))).num_agents(), 5u);
}

TEST_F(Cli, ValidateAndInputErrors) {
  auto ok = Invoke({"--format", "json", "validate", Model("alice-bob-nature")});
  ASSERT_EQ(ok.code, 0) << ok.err;
  auto j = io::ParseJson(ok.out);
  EXPECT_EQ(j["command"], "validate");
  EXPECT_EQ(j["model_digest"], io::ModelDigest(corpus::AliceBobNature()));
  EXPECT_EQ(j["details"]["configurations"], 8);

  auto bad = io::ModelJson(corpus::WitsenhausenNoncausal());
  bad["information"]["a"]["atoms"][0].erase(0);
  auto file = Write("bad.json", bad.dump());
  auto r = Invoke({"validate", file});
  EXPECT_EQ(r.code, cli::kExitInput);
  EXPECT_NE(r.err.find("atoms do not cover H"), std::string::npos) << r.err;
  EXPECT_NE(r.err.find(file), std::string::npos) << r.err;
  auto missing = Invoke({"validate", Path("absent.json")});
  EXPECT_EQ(missing.code, cli::kExitInput);
  EXPECT_NE(missing.err.find("cannot read file"), std::string::npos);
  EXPECT_EQ(Invoke({"validate", Write("junk.json", "[1, 2")}).code, cli::kExitInput);
  EXPECT_EQ(Invoke({"frobnicate"}).code, cli::kExitInput);
  EXPECT_EQ(Invoke({}).code, cli::kExitInput);
  EXPECT_EQ(Invoke({"--help"}).code, 0);
  EXPECT_EQ(Invoke({"--format", "xml", "validate", Model("stackelberg")}).code, cli::kExitInput);
}

TEST_F(Cli, SolveAndPlayability) {
  auto prof = Write("prof.json", R"({"kind": "pure", "profile": {"a": ["1", "0"], "b": ["1", "0"], "c": ["1", "0"]}})");
  auto r = Invoke({"--format", "json", "solve", Model("witsenhausen-noncausal"), "--profile", prof});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = io::ParseJson(r.out);
  EXPECT_EQ(j["details"]["solutions"][0]["configuration"], (io::Json{{"a", "1"}, {"b", "1"}, {"c", "1"}}));
  EXPECT_EQ(Invoke({"playability", Model("witsenhausen-noncausal")}).code, 0);

  auto copy = Write("copy.json", R"({
    "agents": [{"id": "x", "actions": ["0", "1"]}, {"id": "y", "actions": ["0", "1"]}],
    "players": {"p": ["x"], "q": ["y"]},
    "information": {"x": {"observes": ["y"]}, "y": {"observes": ["x"]}}})");
  auto p = Invoke({"--format", "json", "playability", copy, "--witness"});
  EXPECT_EQ(p.code, cli::kExitFails);
  auto pj = io::ParseJson(p.out);
  EXPECT_EQ(pj["details"]["playable"], false);
  EXPECT_EQ(pj["details"]["witness"]["solutions"].size(), 2u);
  auto same = Write("same.json", R"({"kind": "pure", "profile": {"x": ["0", "1"], "y": ["0", "1"]}})");
  EXPECT_EQ(Invoke({"solve", copy, "--profile", same}).code, cli::kExitFails);
}

TEST_F(Cli, RecallAndCausality) {
  EXPECT_EQ(Invoke({"recall", Model("alice-bob-simultaneous"), "--player", "team"}).code, cli::kExitFails);
  EXPECT_EQ(Invoke({"recall", Model("alice-bob-ordered"), "--player", "team"}).code, cli::kExitHolds);
  EXPECT_EQ(Invoke({"causality", Model("alice-bob-simultaneous"), "--player", "team"}).code, cli::kExitHolds);
  EXPECT_EQ(Invoke({"causality", Model("witsenhausen-noncausal"), "--player", "team"}).code, cli::kExitFails);
  auto u = Invoke({"--format", "json", "recall", Model("witsenhausen-noncausal"), "--player", "team", "--budget", "1"});
  EXPECT_EQ(u.code, cli::kExitUnknown);
  EXPECT_TRUE(io::ParseJson(u.out)["details"]["perfect_recall"].is_null());
  EXPECT_EQ(Invoke({"recall", Model("alice-bob-ordered"), "--player", "nobody"}).code, cli::kExitInput);

  auto ord = Write("ord.json", R"({"kind": "ordering", "player": "team", "constant": ["Alice", "Bob"]})");
  auto r = Invoke({"--format", "json", "recall", Model("alice-bob-ordered"), "--player", "team", "--ordering", ord});
  EXPECT_EQ(r.code, cli::kExitFails);
  auto j = io::ParseJson(r.out);
  EXPECT_EQ(j["details"]["perfect_recall"], false);
  EXPECT_TRUE(j["details"]["violation"]["offending"].is_array());
  EXPECT_EQ(Invoke({"recall", Model("alice-bob-ordered"), "--player", "team", "--ordering", ord, "--search"}).code,
            cli::kExitInput);
}

TEST_F(Cli, PushforwardKuhnNecessity) {
  const auto model = Model("alice-bob-ordered");
  auto nu = Write("nu.json", R"({"kind": "nature", "distribution": {"omega": "1"}})");
  auto mixed = Write("mixed.json", R"({"kind": "mixed", "player": "team", "support": [
      {"weight": "1/2", "profile": {"Alice": "T", "Bob": "L"}},
      {"weight": "1/2", "profile": {"Alice": "B", "Bob": "R"}}]})");
  auto p = Invoke({"--format", "json", "pushforward", model, "--nu", nu, "--strategy", mixed});
  ASSERT_EQ(p.code, 0) << p.err;
  EXPECT_EQ(io::ParseJson(p.out)["details"]["pushforward"].size(), 2u);

  auto k = Invoke({"--format", "json", "kuhn", model, "--player", "team", "--nu", nu, "--strategy", mixed, "--verify",
                "--output", Path("beta.json")});
  ASSERT_EQ(k.code, 0) << k.err;
  auto kj = io::ParseJson(k.out);
  EXPECT_EQ(kj["details"]["verified"], true);
  auto m = corpus::AliceBobOrdered();
  auto beta = io::ParseStrategyText(m, io::ReadFile(Path("beta.json")));
  ASSERT_TRUE(std::holds_alternative<BehavioralStrategy>(beta));
  auto again = Invoke({"--format", "json", "pushforward", model, "--nu", nu, "--strategy", Path("beta.json")});
  EXPECT_EQ(io::ParseJson(again.out)["details"], io::ParseJson(p.out)["details"]);

  auto sim = Model("alice-bob-simultaneous");
  EXPECT_EQ(Invoke({"kuhn", sim, "--player", "team", "--nu", nu, "--strategy", mixed}).code, cli::kExitFails);
  auto n = Invoke({"--format", "json", "necessity", sim, "--player", "team"});
  EXPECT_EQ(n.code, cli::kExitHolds) << n.err;
  EXPECT_EQ(io::ParseJson(n.out)["details"]["certificate_check"], "ok");
  EXPECT_EQ(Invoke({"necessity", model, "--player", "team"}).code, cli::kExitFails);
  EXPECT_EQ(Invoke({"necessity", Model("witsenhausen-noncausal"), "--player", "team"}).code, cli::kExitFails);

  // Strategy file errors.
  EXPECT_EQ(Invoke({"pushforward", model, "--nu", nu, "--strategy", mixed, "--strategy", mixed}).code, cli::kExitInput);
  auto half = Write("half.json", R"({"kind": "pure", "profile": {"Alice": "T"}})");
  auto h = Invoke({"pushforward", model, "--nu", nu, "--strategy", half});
  EXPECT_EQ(h.code, cli::kExitInput);
  EXPECT_NE(h.err.find("exactly one player"), std::string::npos) << h.err;
}

TEST_F(Cli, OutputIsDeterministicAcrossRunsAndThreads) {
  auto nu = Write("nu.json", R"({"kind": "nature", "distribution": {"low": "1/3", "high": "2/3"}})");
  auto pr = Write("pr.json", R"({"kind": "mixed", "player": "principal", "support": [
      {"weight": "1/4", "profile": {"principal": ["accept", "reject"]}},
      {"weight": "3/4", "profile": {"principal": "reject"}}]})");
  auto ag = Write("ag.json", R"({"kind": "behavioral", "player": "agent",
      "kernels": {"agent": [{"cheap": "1/2", "costly": "1/2"}, {"cheap": "1/5", "costly": "4/5"}]}})");
  const auto model = Model("principal-agent-hidden-type");
  std::vector<std::vector<std::string>> commands = {
      {"playability", model, "--witness"},
      {"recall", Model("witsenhausen-noncausal"), "--player", "team"},
      {"pushforward", model, "--nu", nu, "--strategy", pr, "--strategy", ag},
      {"kuhn", model, "--player", "principal", "--nu", nu, "--strategy", pr, "--strategy", ag, "--verify"},
      {"necessity", Model("alice-bob-simultaneous"), "--player", "team"},
  };
  for (const auto& c : commands) {
    for (const char* fmt : {"human", "json"}) {
      std::vector<std::string> base{"--format", fmt};
      auto args = base;
      args.insert(args.end(), c.begin(), c.end());
      auto first = Invoke(args);
      ASSERT_NE(first.code, cli::kExitInput) << first.err;
      EXPECT_EQ(Invoke(args).out, first.out);
      for (const char* t : {"2", "4"}) {
        auto with = base;
        with.insert(with.end(), {"--threads", t});
        with.insert(with.end(), c.begin(), c.end());
        auto r = Invoke(with);
        EXPECT_EQ(r.code, first.code);
        EXPECT_EQ(r.out, first.out) << c[0] << " threads " << t;
      }
    }
  }
  auto timed = Invoke({"--format", "json", "--timing", "playability", model});
  EXPECT_TRUE(io::ParseJson(timed.out)["timing"]["milliseconds"].is_number());
}

TEST_F(Cli, BinaryExitCodes) {
  auto run = [](const std::string& cmd) {
    int status = std::system((std::string(WGAME_CLI_PATH) + " " + cmd + " >/dev/null 2>&1").c_str());
    return WEXITSTATUS(status);
  };
  EXPECT_EQ(run("validate " + Model("stackelberg")), 0);
  EXPECT_EQ(run("recall " + Model("alice-bob-simultaneous") + " --player team"), 1);
  EXPECT_EQ(run("validate " + Path("absent.json")), 2);
  EXPECT_EQ(run("recall " + Model("witsenhausen-noncausal") + " --player team --budget 1"), 3);
}

}  // namespace
}  // namespace wgame
