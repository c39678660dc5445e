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

// Command-line front end. Exit codes: 0 holds / success, 1 fails,
// 2 input or usage error, 3 search budget exhausted.

#pragma once

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "wgame/corpus.hpp"
#include "wgame/io.hpp"
#include "wgame/report.hpp"

namespace wgame {
namespace cli {

inline constexpr int kExitHolds = 0;
inline constexpr int kExitFails = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitUnknown = 3;

struct Options {
  std::string format = "human";
  unsigned threads = 1;
  bool timing = false;
  std::string model;
  std::string player;
  std::string ordering;
  bool search = false;
  std::size_t budget = kDefaultSearchBudget;
  std::string profile;
  std::string nu;
  std::vector<std::string> strategies;
  bool witness = false;
  bool verify = false;
  std::string output;
  std::string example;
  int steps = 3;
};

// Input error raised while reading one file.
class FileError : public Error {
 public:
  FileError(const std::string& file, const std::string& what) : Error(file + ": " + what) {}
};

template <class F>
auto FromFile(const std::string& file, F&& f) {
  std::string text = io::ReadFile(file);  // already names the file
  try {
    return f(io::ParseJson(text));
  } catch (const InputError& e) {
    throw FileError(file, e.what());
  }
}

inline WModel LoadModel(const std::string& file) {
  return FromFile(file, [](const io::Json& j) { return io::ParseModel(j); });
}

inline int LoadPlayer(const WModel& m, const std::string& name) {
  int p = m.player_index(name);
  if (p < 0) throw InputError("--player", "unknown player '" + name + "'");
  return p;
}

inline PlayerStrategy ToPlayerStrategy(const WModel& m, io::ParsedStrategy s) {
  if (auto* x = std::get_if<MixedStrategy>(&s)) return std::move(*x);
  if (auto* b = std::get_if<BehavioralStrategy>(&s)) return std::move(*b);
  auto& p = std::get<PureProfile>(s);
  auto agents = p.agents();
  for (std::size_t q = 0; q < m.num_players(); ++q)
    if (m.player(static_cast<int>(q)).agents == agents)
      return MixedStrategy::Pure(m, static_cast<int>(q), std::move(p));
  throw InputError("profile", "a pure strategy file must cover exactly one player's agents");
}

inline StrategyProfile LoadStrategies(const WModel& m, const std::vector<std::string>& files) {
  std::vector<std::optional<PlayerStrategy>> by_player(m.num_players());
  for (const auto& f : files) {
    auto s = FromFile(f, [&](const io::Json& j) {
      return ToPlayerStrategy(m, io::ParseStrategy(m, j));
    });
    int p = PlayerOf(s);
    if (by_player[static_cast<std::size_t>(p)])
      throw FileError(f, "second strategy for player '" + m.player(p).name + "'");
    by_player[static_cast<std::size_t>(p)] = std::move(s);
  }
  StrategyProfile out;
  for (std::size_t q = 0; q < by_player.size(); ++q) {
    if (!by_player[q])
      throw InputError("--strategy", "no strategy for player '" +
                                         m.player(static_cast<int>(q)).name + "'");
    out.push_back(std::move(*by_player[q]));
  }
  return out;
}

inline NatureDistribution LoadNature(const WModel& m, const std::string& file) {
  return FromFile(file, [&](const io::Json& j) { return io::ParseNature(m, j); });
}

inline void WriteFile(const std::string& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw FileError(file, "cannot write file");
  out << text;
}

class Runner {
 public:
  Runner(const Options& o, std::ostream& out) : o_(o), out_(out) {}

  int Validate() {
    WModel m = LoadModel(o_.model);
    Report r = Start("validate", m);
    r.outcome = "valid";
    r.details["configurations"] = m.H().size();
    r.details["agents"] = m.num_agents();
    r.details["players"] = m.num_players();
    return Finish(r, kExitHolds);
  }

  int Solve() {
    WModel m = LoadModel(o_.model);
    auto parsed =
        FromFile(o_.profile, [&](const io::Json& j) { return io::ParseStrategy(m, j); });
    auto* p = std::get_if<PureProfile>(&parsed);
    if (!p) throw FileError(o_.profile, "expected a strategy of kind 'pure'");
    Report r = Start("solve", m);
    try {
      auto t = SolutionMap(m, *p);
      r.outcome = "solved";
      r.details = SolutionMapDetails(m, t);
      return Finish(r, kExitHolds);
    } catch (const SolveError& e) {
      r.outcome = "not uniquely solvable";
      r.details["nature"] = m.H().nature().label(e.nature());
      r.details["solutions"] = e.count();
      return Finish(r, kExitFails);
    }
  }

  int Playability() {
    WModel m = LoadModel(o_.model);
    Report r = Start("playability", m);
    auto rep = CheckPlayability(m, Exec());
    r.outcome = rep.playable ? "playable" : "not playable";
    r.details = PlayabilityDetails(m, rep, o_.witness);
    return Finish(r, rep.playable ? kExitHolds : kExitFails);
  }

  int Recall(bool causal) {
    WModel m = LoadModel(o_.model);
    int player = LoadPlayer(m, o_.player);
    const char* property = causal ? "partial_causality" : "perfect_recall";
    Report r = Start(causal ? "causality" : "recall", m);
    r.details["player"] = o_.player;
    if (!o_.ordering.empty()) {
      auto phi = LoadOrdering(m, player);
      auto rep = causal ? CheckPartialCausality(m, player, phi) : CheckPerfectRecall(m, player, phi);
      r.outcome = rep.holds ? "holds" : "fails";
      r.details.update(RecallDetails(m, rep, property));
      return Finish(r, rep.holds ? kExitHolds : kExitFails);
    }
    auto res = causal ? SearchCausalOrdering(m, player, o_.budget)
                      : SearchRecallOrdering(m, player, o_.budget);
    r.details[property] = res.status == SearchStatus::kFound
                              ? io::Json(true)
                              : res.status == SearchStatus::kNone ? io::Json(false) : io::Json(nullptr);
    r.details.update(SearchDetails(m, res));
    return FinishSearch(r, res.status);
  }

  int PushforwardCmd() {
    WModel m = LoadModel(o_.model);
    auto nu = LoadNature(m, o_.nu);
    auto strategies = LoadStrategies(m, o_.strategies);
    Report r = Start("pushforward", m);
    auto q = ComputePushforward(m, nu, strategies, Exec());
    r.outcome = "computed";
    r.details["pushforward"] = io::PushforwardJson(m, q);
    return Finish(r, kExitHolds);
  }

  int Kuhn() {
    WModel m = LoadModel(o_.model);
    int player = LoadPlayer(m, o_.player);
    auto nu = LoadNature(m, o_.nu);
    auto strategies = LoadStrategies(m, o_.strategies);
    Report r = Start("kuhn", m);
    r.details["player"] = o_.player;
    ConfigurationOrdering phi;
    if (!o_.ordering.empty()) {
      phi = LoadOrdering(m, player);
      auto rep = CheckPerfectRecall(m, player, phi);
      if (!rep.holds) {
        r.outcome = "perfect recall fails";
        r.details.update(RecallDetails(m, rep, "perfect_recall"));
        return Finish(r, kExitFails);
      }
    } else {
      auto res = SearchRecallOrdering(m, player, o_.budget);
      if (res.status != SearchStatus::kFound) {
        r.outcome = res.status == SearchStatus::kNone ? "no perfect-recall ordering"
                                                      : "search budget exhausted";
        r.details.update(SearchDetails(m, res));
        return Finish(r, res.status == SearchStatus::kNone ? kExitFails : kExitUnknown);
      }
      phi = *res.ordering;
    }
    r.details["ordering"] = io::OrderingJson(m, phi);
    auto beta = KuhnTransform(m, player, phi, nu, strategies, Exec());
    io::Json bj = io::BehavioralJson(m, beta);
    r.details["behavioral"] = bj;
    if (!o_.output.empty()) WriteFile(o_.output, bj.dump(2) + "\n");
    int code = kExitHolds;
    r.outcome = "transformed";
    if (o_.verify) {
      auto v = VerifyKuhn(m, player, nu, strategies, beta, Exec());
      r.details["verified"] = v.equal;
      if (!v.equal) {
        r.details["pushforward_mixed"] = io::PushforwardJson(m, v.mixed);
        r.details["pushforward_behavioral"] = io::PushforwardJson(m, v.behavioral);
        r.outcome = "pushforwards differ";
        code = kExitFails;
      } else {
        r.outcome = "equivalent";
      }
    }
    return Finish(r, code);
  }

  int Necessity() {
    WModel m = LoadModel(o_.model);
    int player = LoadPlayer(m, o_.player);
    Report r = Start("necessity", m);
    r.details["player"] = o_.player;
    ConfigurationOrdering phi;
    if (!o_.ordering.empty()) {
      phi = LoadOrdering(m, player);
    } else {
      auto res = SearchCausalOrdering(m, player, o_.budget);
      if (res.status != SearchStatus::kFound) {
        r.outcome = res.status == SearchStatus::kNone ? "no partially causal ordering"
                                                      : "search budget exhausted";
        r.details.update(SearchDetails(m, res));
        return Finish(r, res.status == SearchStatus::kNone ? kExitFails : kExitUnknown);
      }
      phi = *res.ordering;
    }
    r.details["ordering"] = io::OrderingJson(m, phi);
    auto res = RunNecessity(m, player, phi, Exec());
    r.details.update(NecessityDetails(m, player, res));
    if (!res.violation) {
      r.outcome = "no violation";
      return Finish(r, kExitFails);
    }
    if (!res.certificate) {
      r.outcome = "no certificate";
      return Finish(r, kExitFails);
    }
    r.outcome = "certified";
    return Finish(r, kExitHolds);
  }

  int ExamplesList() {
    Report r{"examples list", "", "listed", io::Json::object(), std::nullopt};
    r.details["examples"] = io::Json::array();
    for (const auto& e : corpus::Catalog(o_.steps))
      r.details["examples"].push_back({{"name", e.name}, {"summary", e.summary}});
    return Finish(r, kExitHolds);
  }

  int ExamplesExport() {
    auto cat = corpus::Catalog(o_.steps);
    const auto* e = corpus::Find(cat, o_.example);
    if (!e) throw InputError("NAME", "unknown example '" + o_.example + "'");
    std::string text = io::SerializeModel(e->build());
    if (o_.output.empty()) {
      out_ << text;
    } else {
      WriteFile(o_.output, text);
    }
    return kExitHolds;
  }

 private:
  ExecOptions Exec() const { return ExecOptions{o_.threads}; }

  ConfigurationOrdering LoadOrdering(const WModel& m, int player) {
    auto phi = FromFile(o_.ordering, [&](const io::Json& j) { return io::ParseOrdering(m, j); });
    if (phi.player() != player)
      throw FileError(o_.ordering, "ordering belongs to player '" + m.player(phi.player()).name + "'");
    return phi;
  }

  Report Start(const std::string& command, const WModel& m) {
    start_ = std::chrono::steady_clock::now();
    return Report{command, io::ModelDigest(m), "", io::Json::object(), std::nullopt};
  }

  int FinishSearch(Report& r, SearchStatus s) {
    switch (s) {
      case SearchStatus::kFound:
        r.outcome = "holds";
        return Finish(r, kExitHolds);
      case SearchStatus::kNone:
        r.outcome = "fails";
        return Finish(r, kExitFails);
      case SearchStatus::kUnknown:
        break;
    }
    r.outcome = "unknown";
    return Finish(r, kExitUnknown);
  }

  int Finish(Report& r, int code) {
    if (o_.timing)
      r.timing_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
                        .count();
    out_ << EmitReport(r, o_.format == "json" ? Format::kJson : Format::kHuman);
    return code;
  }

  const Options& o_;
  std::ostream& out_;
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// argv-style entry point; args excludes the program name.
inline int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Finite Witsenhausen intrinsic games: playability, recall and Kuhn equivalence",
               "wgame"};
  app.fallthrough();
  app.require_subcommand(1);
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"human", "json"}));
  app.add_option("--threads", o.threads, "Worker threads")->check(CLI::PositiveNumber);
  app.add_flag("--timing", o.timing, "Include wall-clock timing in reports");

  auto model_arg = [&](CLI::App* sub) {
    sub->add_option("model", o.model, "Model file")->required();
  };
  auto ordering_args = [&](CLI::App* sub) {
    auto* ord = sub->add_option("--ordering", o.ordering, "Configuration-ordering file");
    auto* srch = sub->add_flag("--search", o.search, "Search for an ordering (default)");
    ord->excludes(srch);
    sub->add_option("--budget", o.budget, "Search node budget")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "Parse and validate a model");
  model_arg(validate);

  auto* solve = app.add_subcommand("solve", "Solution map of a pure profile");
  model_arg(solve);
  solve->add_option("--profile", o.profile, "Pure profile file")->required();

  auto* play = app.add_subcommand("playability", "Decide playability");
  model_arg(play);
  play->add_flag("--witness", o.witness, "Report a profile with several solutions");

  auto* recall = app.add_subcommand("recall", "Perfect recall of a player");
  model_arg(recall);
  recall->add_option("--player", o.player, "Player name")->required();
  ordering_args(recall);

  auto* causality = app.add_subcommand("causality", "Partial causality of a player");
  model_arg(causality);
  causality->add_option("--player", o.player, "Player name")->required();
  ordering_args(causality);

  auto* push = app.add_subcommand("pushforward", "Distribution over configurations");
  model_arg(push);
  push->add_option("--nu", o.nu, "Nature belief file")->required();
  push->add_option("--strategy", o.strategies, "Strategy file, one per player")->required();

  auto* kuhn = app.add_subcommand("kuhn", "Mixed-to-behavioral transform");
  model_arg(kuhn);
  kuhn->add_option("--player", o.player, "Player name")->required();
  kuhn->add_option("--nu", o.nu, "Nature belief file")->required();
  kuhn->add_option("--strategy", o.strategies, "Strategy file, one per player")->required();
  ordering_args(kuhn);
  kuhn->add_flag("--verify", o.verify, "Compare pushforwards exactly");
  kuhn->add_option("--output", o.output, "Write the behavioral strategy here");

  auto* nec = app.add_subcommand("necessity", "Certificate that no behavioral strategy matches");
  model_arg(nec);
  nec->add_option("--player", o.player, "Player name")->required();
  ordering_args(nec);

  auto* ex = app.add_subcommand("examples", "Built-in example models");
  ex->require_subcommand(1);
  ex->add_option("--steps", o.steps, "Steps of the sequential example")->check(CLI::Range(1, 20));
  auto* ex_list = ex->add_subcommand("list", "List examples");
  auto* ex_export = ex->add_subcommand("export", "Print an example model");
  ex_export->add_option("name", o.example, "Example name")->required();
  ex_export->add_option("--output", o.output, "Write the model here");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInput;
  }

  Runner r(o, out);
  try {
    if (*validate) return r.Validate();
    if (*solve) return r.Solve();
    if (*play) return r.Playability();
    if (*recall) return r.Recall(false);
    if (*causality) return r.Recall(true);
    if (*push) return r.PushforwardCmd();
    if (*kuhn) return r.Kuhn();
    if (*nec) return r.Necessity();
    if (*ex_list) return r.ExamplesList();
    if (*ex_export) return r.ExamplesExport();
  } catch (const SolveError& e) {
    err << "error: " << e.what() << "\n";
    return kExitFails;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace cli
}  // namespace wgame
