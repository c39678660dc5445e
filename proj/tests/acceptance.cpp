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


// Acceptance run: one PASS/FAIL line per criterion. Exit status is nonzero
// if any criterion fails.

#include <unistd.h>

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>

#include "generators.hpp"
#include "oracles.hpp"
#include "properties.hpp"
#include "wgame/cli.hpp"
#include "wgame/wgame.hpp"

namespace wgame {
namespace {

using testing::Rng;

// Time limits in milliseconds.
constexpr double kLimit1 = 1000;
constexpr double kLimit2 = 1000;  // per model
constexpr double kLimit3 = 60000;
constexpr double kLimit4 = 60000;
constexpr double kLimit5 = 30000;
constexpr double kLimit6 = 120000;

constexpr int kKuhnCases = 500;
constexpr int kNecessityCases = 200;
constexpr int kSuiteCases = 1000;
constexpr std::size_t kMicroCap = 2000;

struct Outcome {
  bool pass = true;
  std::string detail;

  void Fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

class Clock {
 public:
  double ms() const {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void Within(Outcome& o, const Clock& c, double limit) {
  double t = c.ms();
  if (t > limit) o.Fail("took " + std::to_string(static_cast<long>(t)) + " ms");
}

std::vector<int> Actions(const WModel& m, ConfigIndex h) {
  std::vector<int> u;
  for (std::size_t a = 0; a < m.num_agents(); ++a) u.push_back(m.H().action_of(h, static_cast<AgentIndex>(a)));
  return u;
}

Outcome Witsenhausen() {
  Outcome o;
  Clock clock;
  auto m = corpus::WitsenhausenNoncausal();
  if (!CheckPlayability(m).playable) o.Fail("not reported playable");
  auto strat = [](AgentIndex a, bool flip) {
    return PureStrategy{a, flip ? std::vector<int>{1, 0} : std::vector<int>{0, 1}};
  };
  auto profile = [&](int bits) {
    return PureProfile{{strat(0, bits & 4), strat(1, bits & 2), strat(2, bits & 1)}};
  };
  // Pinned outcomes, indexed by which agents play the complement.
  const std::map<int, std::vector<int>> pinned = {
      {0b000, {0, 0, 0}}, {0b100, {1, 0, 1}}, {0b110, {0, 1, 0}}, {0b111, {1, 1, 1}}};
  int brute = 0;
  for (int bits = 0; bits < 8; ++bits) {
    auto p = profile(bits);
    ConfigIndex h = SolveClosedLoop(m, p, 0);
    auto it = pinned.find(bits);
    if (it != pinned.end()) {
      if (Actions(m, h) != it->second) o.Fail("profile " + std::to_string(bits) + " solved wrongly");
      continue;
    }
    auto ref = oracle::Solutions(m, p, 0);
    if (ref.size() != 1 || ref[0] != h) o.Fail("profile " + std::to_string(bits) + " disagrees with brute force");
    ++brute;
  }
  if (brute != 4) o.Fail("expected four brute-force profiles");
  Within(o, clock, kLimit1);
  if (o.pass) o.detail = "playable, 4 pinned + 4 brute-force solution maps";
  return o;
}

Outcome AliceBob() {
  Outcome o;
  {
    Clock clock;
    auto m = corpus::AliceBobSimultaneous();
    auto r = SearchRecallOrdering(m, 0);
    if (r.status != SearchStatus::kNone) o.Fail("simultaneous: search did not prove absence");
    Within(o, clock, kLimit2);
  }
  for (auto build : {corpus::AliceBobOrdered, corpus::AliceBobNature}) {
    Clock clock;
    auto m = build();
    auto bob = static_cast<AgentIndex>(m.H().agent_index("Bob"));
    auto alice = static_cast<AgentIndex>(m.H().agent_index("Alice"));
    auto r = SearchRecallOrdering(m, 0);
    if (r.status != SearchStatus::kFound || !r.ordering->is_constant() ||
        r.ordering->orders()[0] != Ordering{bob, alice})
      o.Fail("recall not found with constant (Bob, Alice)");
    else if (!CheckPerfectRecall(m, 0, *r.ordering).holds)
      o.Fail("found ordering fails the recall check");
    Within(o, clock, kLimit2);
  }
  if (o.pass) o.detail = "simultaneous: none; ordered, nature: constant (Bob, Alice)";
  return o;
}

Outcome KuhnSufficiency() {
  Outcome o;
  Clock clock;
  Rng rng(3001);
  testing::CausalParams par;
  par.max_states = 3;
  par.focus_agents_max = 3;
  par.opponent_agents_max = 2;
  par.max_actions = 3;
  int checked = 0, drawn = 0;
  while (checked < kKuhnCases && drawn < 20 * kKuhnCases) {
    ++drawn;
    auto m = testing::RandomCausalModel(rng, par);
    if (!CheckPlayability(m).playable) continue;
    auto r = SearchRecallOrdering(m, 0);
    if (r.status != SearchStatus::kFound) continue;
    auto nu = testing::RandomNature(rng, m, 12);
    auto s = testing::RandomMixedProfile(rng, m, 3, 12);
    auto beta = KuhnTransform(m, 0, *r.ordering, nu, s);
    if (!VerifyKuhn(m, 0, nu, s, beta).equal) o.Fail("pushforwards differ on case " + std::to_string(checked));
    ++checked;
  }
  if (checked < kKuhnCases) o.Fail("only " + std::to_string(checked) + " models with recall");
  Within(o, clock, kLimit3);
  if (o.pass) o.detail = std::to_string(checked) + "/" + std::to_string(checked) + " exact equalities";
  return o;
}

Outcome KuhnNecessity() {
  Outcome o;
  Clock clock;
  Rng rng(4001);
  testing::CausalParams par{2, 2, 3, 1, 2, 3};
  par.recall_bias = 0.2;
  int certified = 0, drawn = 0;
  while (certified < kNecessityCases && drawn < 100 * kNecessityCases) {
    ++drawn;
    auto m = testing::RandomCausalModel(rng, par);
    bool wide = true;
    for (std::size_t a = 0; a < m.num_agents(); ++a) wide = wide && m.num_actions(static_cast<AgentIndex>(a)) >= 2;
    if (!wide || !CheckPlayability(m).playable) continue;
    auto phi = SearchCausalOrdering(m, 0);
    if (phi.status != SearchStatus::kFound) continue;
    auto r = RunNecessity(m, 0, *phi.ordering);
    if (!r.violation) continue;
    if (!r.certificate) {
      o.Fail("violation without certificate");
      break;
    }
    auto why = VerifyCertificate(m, 0, *r.certificate);
    if (!why.empty()) o.Fail("certificate rejected: " + why);
    ++certified;
  }
  if (certified < kNecessityCases) o.Fail("only " + std::to_string(certified) + " violating models");
  Within(o, clock, kLimit4);
  if (o.pass) o.detail = std::to_string(certified) + "/" + std::to_string(certified) + " certificates verified";
  return o;
}

Outcome Structural() {
  Outcome o;
  Clock clock;
  Rng rng(5001);
  std::ostringstream summary;
  for (const auto& s : props::StructuralSuites()) {
    auto run = props::RunSuite(s.check, rng, kSuiteCases, 50 * kSuiteCases);
    std::string name = s.name;
    if (!run.failure.empty()) o.Fail(name + ": " + run.failure);
    else if (run.passed < kSuiteCases) o.Fail(name + ": only " + std::to_string(run.passed) + " cases");
    summary << (summary.tellp() ? ", " : "") << s.name;
  }
  Within(o, clock, kLimit5);
  if (o.pass) o.detail = std::to_string(kSuiteCases) + " cases each: " + summary.str();
  return o;
}

// Micro models: restricted growth strings of length n with at most 4 blocks.
std::vector<std::vector<int>> SmallPartitions(int n) {
  std::vector<std::vector<int>> out;
  std::vector<int> v(static_cast<std::size_t>(n), 0);
  std::function<void(int, int)> rec = [&](int i, int blocks) {
    if (i == n) {
      out.push_back(v);
      return;
    }
    for (int b = 0; b <= std::min(blocks, 3); ++b) {
      v[static_cast<std::size_t>(i)] = b;
      rec(i + 1, std::max(blocks, b + 1));
    }
  };
  rec(0, 0);
  return out;
}

std::vector<int> Canonical(const std::vector<int>& labels) {
  std::map<int, int> seen;
  std::vector<int> out;
  for (int l : labels) out.push_back(seen.emplace(l, static_cast<int>(seen.size())).first->second);
  return out;
}

// A pair up to agent swap, action flips and nature relabeling.
std::pair<std::vector<int>, std::vector<int>> CanonicalPair(int states, const std::vector<int>& px,
                                                            const std::vector<int>& py) {
  auto code = [](int w, int x, int y) { return (w * 2 + x) * 2 + y; };
  std::pair<std::vector<int>, std::vector<int>> best;
  bool first = true;
  for (int t = 0; t < 8 * states; ++t) {
    bool swap = t & 1, fx = t & 2, fy = t & 4, fw = t >= 8;
    std::vector<int> a(px.size()), b(px.size());
    for (int w = 0; w < states; ++w)
      for (int x = 0; x < 2; ++x)
        for (int y = 0; y < 2; ++y) {
          int nx = swap ? y : x, ny = swap ? x : y;
          auto to = static_cast<std::size_t>(code(fw ? 1 - w : w, nx ^ fx, ny ^ fy));
          auto from = static_cast<std::size_t>(code(w, x, y));
          a[to] = swap ? py[from] : px[from];
          b[to] = swap ? px[from] : py[from];
        }
    std::pair<std::vector<int>, std::vector<int>> key{Canonical(a), Canonical(b)};
    if (first || key < best) best = key;
    first = false;
  }
  return best;
}

WModel MicroModel(int states, const std::vector<int>& px, const std::vector<int>& py) {
  std::vector<std::string> nature;
  for (int w = 0; w < states; ++w) nature.push_back("w" + std::to_string(w));
  auto s = MakeSpace(nature, {{"x", {"0", "1"}}, {"y", {"0", "1"}}});
  auto part = [&](const std::vector<int>& l) {
    return Partition::FromLabels(s, std::vector<std::uint64_t>(l.begin(), l.end()));
  };
  return WModel(s, {{"p", {0, 1}}}, {part(px), part(py)});
}

std::vector<WModel> MicroModels() {
  std::vector<WModel> out;
  std::set<std::pair<std::vector<int>, std::vector<int>>> seen;
  for (int states = 1; states <= 2 && out.size() < kMicroCap; ++states) {
    auto parts = SmallPartitions(4 * states);
    std::uint64_t n = parts.size(), total = n * n;
    // Visit pairs in a fixed scrambled order so a cap still samples broadly.
    std::uint64_t step = 2654435761u % total;
    while (std::gcd(step, total) != 1) ++step;
    for (std::uint64_t i = 0, k = 0; i < total && out.size() < kMicroCap; ++i, k = (k + step) % total) {
      const auto& px = parts[k / n];
      const auto& py = parts[k % n];
      if (!seen.insert(CanonicalPair(states, px, py)).second) continue;
      out.push_back(MicroModel(states, px, py));
    }
  }
  return out;
}

Outcome MicroCrossCheck() {
  Outcome o;
  Clock clock;
  auto models = MicroModels();
  std::size_t phis = 0, measurable = 0;
  for (const auto& m : models) {
    auto rhos = EnumerateOrderings(m, 0, 2);
    std::size_t n = m.H().size();
    for (std::uint64_t code = 0; code < (std::uint64_t{1} << n) && o.pass; ++code) {
      std::vector<Ordering> per(n);
      for (std::size_t h = 0; h < n; ++h) per[h] = rhos[(code >> h) & 1];
      ConfigurationOrdering phi(m, 0, per);
      bool recall = oracle::PerfectRecall(m, 0, phi, true);
      bool pairwise = oracle::ReciproqViolation(m, 0, phi);
      bool found = FindRecallViolation(m, 0, phi).has_value();
      if (CheckPerfectRecall(m, 0, phi).holds != recall) o.Fail("recall check disagrees with brute force");
      if (found != pairwise) o.Fail("violation search disagrees with brute force");
      bool cells = oracle::CellsMeasurable(m, 0, phi);
      if (!recall != (!cells || found)) o.Fail("negated recall is not unmeasurable-or-violation");
      if (cells) {
        ++measurable;
        if (!recall != found) o.Fail("negated recall and violation disagree");
      }
      ++phis;
    }
  }
  if (models.size() < kMicroCap) o.Fail("only " + std::to_string(models.size()) + " micro models");
  Within(o, clock, kLimit6);
  if (o.pass)
    o.detail = std::to_string(models.size()) + " models, " + std::to_string(phis) + " orderings, " +
               std::to_string(measurable) + " with measurable cells";
  return o;
}

std::string RunCli(const std::vector<std::string>& args, int* code) {
  std::ostringstream out, err;
  *code = cli::Run(args, out, err);
  return out.str();
}

Outcome Determinism() {
  Outcome o;
  for (const auto& e : corpus::Catalog()) {
    auto text = io::SerializeModel(e.build());
    if (io::SerializeModel(io::ParseModelText(text)) != text) o.Fail(e.name + " does not round-trip");
  }
  namespace fs = std::filesystem;
  auto dir = fs::temp_directory_path() / ("wgame_acceptance_" + std::to_string(::getpid()));
  fs::create_directories(dir);
  auto file = [&](const std::string& name) { return (dir / name).string(); };
  for (const auto& e : corpus::Catalog()) std::ofstream(file(e.name + ".json")) << io::SerializeModel(e.build());
  std::ofstream(file("nu.json")) << R"({"kind": "nature", "distribution": {"omega": "1"}})";
  std::ofstream(file("mixed.json")) << R"({"kind": "mixed", "player": "team", "support": [
      {"weight": "1/3", "profile": {"Alice": "T", "Bob": "L"}},
      {"weight": "2/3", "profile": {"Alice": "B", "Bob": "R"}}]})";
  std::vector<std::vector<std::string>> commands;
  for (const auto& e : corpus::Catalog()) {
    commands.push_back({"validate", file(e.name + ".json")});
    commands.push_back({"playability", file(e.name + ".json"), "--witness"});
  }
  auto ordered = file("alice-bob-ordered.json");
  auto sim = file("alice-bob-simultaneous.json");
  commands.push_back({"recall", file("witsenhausen-noncausal.json"), "--player", "team"});
  commands.push_back({"recall", ordered, "--player", "team"});
  commands.push_back({"pushforward", ordered, "--nu", file("nu.json"), "--strategy", file("mixed.json")});
  commands.push_back(
      {"kuhn", ordered, "--player", "team", "--nu", file("nu.json"), "--strategy", file("mixed.json"), "--verify"});
  commands.push_back({"necessity", sim, "--player", "team"});
  std::size_t runs = 0;
  for (const auto& c : commands)
    for (const char* fmt : {"human", "json"}) {
      std::vector<std::string> base{"--format", fmt};
      std::string reference;
      int ref_code = 0;
      for (const char* threads : {"1", "1", "2", "4"}) {
        auto args = base;
        args.insert(args.end(), {"--threads", threads});
        args.insert(args.end(), c.begin(), c.end());
        int code = 0;
        auto out = RunCli(args, &code);
        if (code == cli::kExitInput) o.Fail(c[0] + ": input error");
        if (runs++ % 4 == 0) {
          reference = out;
          ref_code = code;
        } else if (out != reference || code != ref_code) {
          o.Fail(c[0] + " output differs at --threads " + threads);
        }
      }
    }
  fs::remove_all(dir);
  if (o.pass)
    o.detail = "corpus round-trips; " + std::to_string(commands.size() * 2) + " commands identical over " +
               std::to_string(runs) + " runs";
  return o;
}

}  // namespace
}  // namespace wgame

int main() {
  using wgame::Outcome;
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"witsenhausen noncausal playable model", wgame::Witsenhausen},
      {"alice/bob recall suite", wgame::AliceBob},
      {"kuhn sufficiency", wgame::KuhnSufficiency},
      {"kuhn necessity certificates", wgame::KuhnNecessity},
      {"structural property suites", wgame::Structural},
      {"micro-scale exhaustive recall cross-check", wgame::MicroCrossCheck},
      {"i/o determinism", wgame::Determinism},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    wgame::Clock clock;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.Fail(std::string("exception: ") + e.what());
    }
    failed += !o.pass;
    std::printf("criterion %zu %s  %s: %s (%.0f ms)\n", i + 1, o.pass ? "PASS" : "FAIL", criteria[i].first,
                o.detail.c_str(), clock.ms());
    std::fflush(stdout);
  }
  return failed == 0 ? 0 : 1;
}
