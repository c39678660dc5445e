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

// Built-in example models and the information-pattern predicates they
// illustrate.

#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "wgame/field.hpp"
#include "wgame/model.hpp"

namespace wgame {
namespace corpus {

inline Partition Observes(const SpacePtr& s, bool nature, std::vector<AgentIndex> agents) {
  return CylinderPartition(s, {nature, std::move(agents)});
}

// Two agents of one player, neither sees the other.
inline WModel AliceBobSimultaneous() {
  auto s = MakeSpace({"omega"}, {{"Alice", {"T", "B"}}, {"Bob", {"L", "R"}}});
  return WModel(s, {{"team", {0, 1}}}, {Observes(s, false, {}), Observes(s, false, {})});
}

// Bob moves first and Alice sees Bob's action.
inline WModel AliceBobOrdered() {
  auto s = MakeSpace({"omega"}, {{"Alice", {"T", "B"}}, {"Bob", {"L", "R"}}});
  return WModel(s, {{"team", {0, 1}}}, {Observes(s, false, {1}), Observes(s, false, {})});
}

// Nature first; Bob sees Nature, Alice sees Nature and Bob.
inline WModel AliceBobNature() {
  auto s = MakeSpace({"w+", "w-"}, {{"Alice", {"T", "B"}}, {"Bob", {"L", "R"}}});
  return WModel(s, {{"team", {0, 1}}}, {Observes(s, true, {1}), Observes(s, true, {})});
}

// Agents t0..t{T-1} of one decision maker; agent t sees Nature and every
// earlier action.
inline WModel Sequential(int steps, int actions = 2, int states = 2) {
  if (steps < 1) throw PreconditionError("sequential example needs at least one step");
  std::vector<std::string> nature;
  for (int w = 0; w < states; ++w) nature.push_back("w" + std::to_string(w));
  std::vector<std::pair<std::string, std::vector<std::string>>> agents;
  std::vector<std::string> acts;
  for (int u = 0; u < actions; ++u) acts.push_back("u" + std::to_string(u));
  for (int t = 0; t < steps; ++t) agents.emplace_back("t" + std::to_string(t), acts);
  auto s = MakeSpace(nature, agents);
  std::vector<Partition> info;
  std::vector<AgentIndex> past;
  for (int t = 0; t < steps; ++t) {
    info.push_back(Observes(s, true, past));
    past.push_back(t);
  }
  return WModel(s, {{"dm", past}}, std::move(info));
}

// The agent knows its type; the principal sees the agent's action only.
inline WModel PrincipalAgentHiddenType() {
  auto s = MakeSpace({"low", "high"},
                     {{"principal", {"accept", "reject"}}, {"agent", {"cheap", "costly"}}});
  return WModel(s, {{"principal", {0}}, {"agent", {1}}},
                {Observes(s, false, {1}), Observes(s, true, {})});
}

// The principal may see the type but never the agent's action.
inline WModel PrincipalAgentHiddenAction() {
  auto s = MakeSpace({"low", "high"},
                     {{"principal", {"bonus", "flat"}}, {"agent", {"work", "shirk"}}});
  return WModel(s, {{"principal", {0}}, {"agent", {1}}},
                {Observes(s, true, {}), Observes(s, true, {})});
}

// The leader sees Nature; the follower sees Nature and the leader.
inline WModel Stackelberg() {
  auto s = MakeSpace({"w1", "w2"}, {{"leader", {"l1", "l2"}}, {"follower", {"f1", "f2"}}});
  return WModel(s, {{"leader", {0}}, {"follower", {1}}},
                {Observes(s, true, {}), Observes(s, true, {0})});
}

// Three binary agents: a sees u_b(1-u_c), b sees u_c(1-u_a), c sees
// u_a(1-u_b). Playable although no agent can be placed first.
inline WModel WitsenhausenNoncausal() {
  auto s = MakeSpace({"omega"}, {{"a", {"0", "1"}}, {"b", {"0", "1"}}, {"c", {"0", "1"}}});
  std::vector<Partition> info;
  for (int a = 0; a < 3; ++a) {
    int x = (a + 1) % 3, y = (a + 2) % 3;
    std::vector<std::uint64_t> labels(s->size());
    for (ConfigIndex h = 0; h < s->size(); ++h)
      labels[h] = static_cast<std::uint64_t>(s->action_of(h, x) * (1 - s->action_of(h, y)));
    info.push_back(Partition::FromLabels(s, labels));
  }
  return WModel(s, {{"team", {0, 1, 2}}}, std::move(info));
}

struct Entry {
  std::string name;
  std::string summary;
  std::function<WModel()> build;
};

inline std::vector<Entry> Catalog(int steps = 3) {
  return {
      {"alice-bob-simultaneous", "Alice and Bob act without seeing each other",
       AliceBobSimultaneous},
      {"alice-bob-ordered", "Bob acts first, Alice sees Bob", AliceBobOrdered},
      {"alice-bob-nature", "Nature, then Bob, then Alice; each sees everything before",
       AliceBobNature},
      {"sequential", "one decision maker over T steps with perfect memory",
       [steps] { return Sequential(steps); }},
      {"principal-agent-hidden-type", "the principal sees the action but not the type",
       PrincipalAgentHiddenType},
      {"principal-agent-hidden-action", "the principal sees the type but not the action",
       PrincipalAgentHiddenAction},
      {"stackelberg", "leader sees Nature, follower sees Nature and leader", Stackelberg},
      {"witsenhausen-noncausal", "three binary agents, playable but noncausal",
       WitsenhausenNoncausal},
  };
}

inline const Entry* Find(const std::vector<Entry>& cat, const std::string& name) {
  for (const auto& e : cat)
    if (e.name == name) return &e;
  return nullptr;
}

}  // namespace corpus

// Information-pattern predicates. `order` lists agents t = 0, 1, ...
namespace patterns {

inline Partition Past(const WModel& m, const std::vector<AgentIndex>& order, std::size_t t,
                      bool nature) {
  return CylinderPartition(m.space(), {nature, {order.begin(), order.begin() + static_cast<long>(t)}});
}

// I_t lies in the field of Nature and the earlier actions.
inline bool Sequentiality(const WModel& m, const std::vector<AgentIndex>& order) {
  for (std::size_t t = 0; t < order.size(); ++t)
    if (!PartitionRefines(Past(m, order, t, true), m.info(order[t]))) return false;
  return true;
}

inline bool MemoryOfPastInformation(const WModel& m, const std::vector<AgentIndex>& order) {
  for (std::size_t t = 1; t < order.size(); ++t)
    if (!PartitionRefines(m.info(order[t]), m.info(order[t - 1]))) return false;
  return true;
}

inline bool MemoryOfPastActions(const WModel& m, const std::vector<AgentIndex>& order) {
  for (std::size_t t = 1; t < order.size(); ++t)
    if (!PartitionRefines(m.info(order[t]), Past(m, order, t, false))) return false;
  return true;
}

inline bool PerfectRecallInclusions(const WModel& m, const std::vector<AgentIndex>& order) {
  for (std::size_t t = 1; t < order.size(); ++t)
    if (!PartitionRefines(m.info(order[t]),
                          PartitionJoin(m.info(order[t - 1]), Past(m, order, t, false))))
      return false;
  return true;
}

inline bool HiddenType(const WModel& m, AgentIndex principal, AgentIndex agent) {
  return PartitionRefines(CylinderPartition(m.space(), {false, {agent}}), m.info(principal)) &&
         PartitionRefines(m.info(agent), CylinderPartition(m.space(), {true, {}}));
}

inline bool HiddenAction(const WModel& m, AgentIndex principal, AgentIndex agent) {
  return PartitionRefines(CylinderPartition(m.space(), {true, {}}), m.info(principal)) &&
         PartitionRefines(m.info(agent), CylinderPartition(m.space(), {true, {}}));
}

inline bool StackelbergPattern(const WModel& m, AgentIndex leader, AgentIndex follower) {
  return PartitionRefines(CylinderPartition(m.space(), {true, {}}), m.info(leader)) &&
         PartitionRefines(CylinderPartition(m.space(), {true, {leader}}), m.info(follower));
}

}  // namespace patterns
}  // namespace wgame
