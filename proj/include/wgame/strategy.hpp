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

// Pure, mixed and behavioral strategies.

#pragma once

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "wgame/model.hpp"
#include "wgame/rational.hpp"

namespace wgame {

inline constexpr std::size_t kDefaultEnumerationCap = 1'000'000;

// choice[z] is the action index taken on atom z of the agent's field.
struct PureStrategy {
  AgentIndex agent = 0;
  std::vector<int> choice;

  int at(const WModel& m, ConfigIndex h) const { return choice[m.info(agent).atom_of(h)]; }

  static PureStrategy Constant(const WModel& m, AgentIndex a, int u) {
    return {a, std::vector<int>(m.info(a).num_atoms(), u)};
  }

  friend bool operator==(const PureStrategy&, const PureStrategy&) = default;
  friend auto operator<=>(const PureStrategy&, const PureStrategy&) = default;
};

// Strategies for a set of agents, sorted by agent index.
struct PureProfile {
  std::vector<PureStrategy> strategies;

  std::vector<AgentIndex> agents() const {
    std::vector<AgentIndex> out;
    for (const auto& s : strategies) out.push_back(s.agent);
    return out;
  }
  const PureStrategy* find(AgentIndex a) const {
    for (const auto& s : strategies)
      if (s.agent == a) return &s;
    return nullptr;
  }
  const PureStrategy& of(AgentIndex a) const {
    const PureStrategy* s = find(a);
    if (!s) throw PreconditionError("profile has no strategy for agent " + std::to_string(a));
    return *s;
  }
  void normalize() {
    std::sort(strategies.begin(), strategies.end(),
              [](const auto& x, const auto& y) { return x.agent < y.agent; });
  }

  friend bool operator==(const PureProfile&, const PureProfile&) = default;
  friend auto operator<=>(const PureProfile&, const PureProfile&) = default;
};

inline bool ValidatePure(const WModel& m, const PureStrategy& s) {
  if (s.agent < 0 || static_cast<std::size_t>(s.agent) >= m.num_agents())
    throw PreconditionError("unknown agent " + std::to_string(s.agent));
  if (s.choice.size() != m.info(s.agent).num_atoms()) return false;
  auto n = static_cast<int>(m.num_actions(s.agent));
  return std::all_of(s.choice.begin(), s.choice.end(), [n](int u) { return u >= 0 && u < n; });
}

inline bool ValidateProfile(const WModel& m, const PureProfile& p,
                            const std::vector<AgentIndex>& agents) {
  if (p.agents() != agents) return false;
  return std::all_of(p.strategies.begin(), p.strategies.end(),
                     [&](const PureStrategy& s) { return ValidatePure(m, s); });
}

inline std::vector<AgentIndex> AllAgents(const WModel& m) {
  std::vector<AgentIndex> out(m.num_agents());
  for (std::size_t a = 0; a < out.size(); ++a) out[a] = static_cast<AgentIndex>(a);
  return out;
}

// Lexicographic in (choice on atom 0, atom 1, ...).
inline std::vector<PureStrategy> EnumeratePure(const WModel& m, AgentIndex a,
                                               std::size_t cap = kDefaultEnumerationCap) {
  std::size_t atoms = m.info(a).num_atoms();
  std::size_t k = m.num_actions(a);
  std::size_t total = 1;
  for (std::size_t i = 0; i < atoms; ++i) {
    total *= k;
    if (total > cap)
      throw CapExceeded("agent '" + m.H().agent_id(a) + "' has more than " + std::to_string(cap) +
                        " pure strategies");
  }
  std::vector<PureStrategy> out;
  out.reserve(total);
  PureStrategy s{a, std::vector<int>(atoms, 0)};
  for (std::size_t t = 0; t < total; ++t) {
    out.push_back(s);
    for (std::size_t i = atoms; i-- > 0;) {
      if (++s.choice[i] < static_cast<int>(k)) break;
      s.choice[i] = 0;
    }
  }
  return out;
}

inline PureProfile RestrictProfile(const PureProfile& p, const std::vector<AgentIndex>& B) {
  if (B.empty()) throw PreconditionError("restriction to an empty agent set");
  PureProfile out;
  for (AgentIndex b : B) out.strategies.push_back(p.of(b));
  out.normalize();
  return out;
}

// Union of sub-profiles over disjoint agent sets.
inline PureProfile CombineProfiles(const std::vector<const PureProfile*>& parts) {
  PureProfile out;
  for (const auto* part : parts)
    for (const auto& s : part->strategies) out.strategies.push_back(s);
  out.normalize();
  for (std::size_t i = 1; i < out.strategies.size(); ++i)
    if (out.strategies[i].agent == out.strategies[i - 1].agent)
      throw PreconditionError("combined profiles overlap");
  return out;
}

// Finitely supported distribution over pure sub-profiles of one player.
// Canonical: support sorted, no duplicates, no zero weights.
class MixedStrategy {
 public:
  MixedStrategy() = default;
  MixedStrategy(const WModel& m, int player,
                std::vector<std::pair<PureProfile, Rational>> entries)
      : player_(player) {
    const auto& agents = m.player(player).agents;
    std::map<PureProfile, Rational> merged;
    Rational total;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      auto& [prof, w] = entries[i];
      prof.normalize();
      std::string path = "support[" + std::to_string(i) + "]";
      if (!ValidateProfile(m, prof, agents))
        throw InputError(path, "profile is not a valid pure profile of player '" +
                                   m.player(player).name + "'");
      if (w.is_negative()) throw InputError(path, "negative weight " + w.ToString());
      total += w;
      if (!w.is_zero()) merged[prof] += w;
    }
    if (total != Rational(1)) throw InputError("support", "weights sum to " + total.ToString());
    for (auto& [prof, w] : merged) {
      support_.push_back(prof);
      weights_.push_back(w);
    }
  }

  static MixedStrategy Pure(const WModel& m, int player, PureProfile p) {
    return MixedStrategy(m, player, {{std::move(p), Rational(1)}});
  }

  int player() const { return player_; }
  const std::vector<PureProfile>& support() const { return support_; }
  const std::vector<Rational>& weights() const { return weights_; }
  std::size_t size() const { return support_.size(); }

  friend bool operator==(const MixedStrategy&, const MixedStrategy&) = default;

 private:
  int player_ = 0;
  std::vector<PureProfile> support_;
  std::vector<Rational> weights_;
};

// kernel(i, z)[u]: probability that the i-th agent of the player plays action
// u on atom z of its field. Agents are sampled independently.
class BehavioralStrategy {
 public:
  using Kernel = std::vector<Rational>;

  BehavioralStrategy() = default;
  BehavioralStrategy(const WModel& m, int player, std::vector<std::vector<Kernel>> kernels)
      : player_(player), agents_(m.player(player).agents), kernels_(std::move(kernels)) {
    if (kernels_.size() != agents_.size())
      throw InputError("kernels", "one kernel family per agent is required");
    for (std::size_t i = 0; i < agents_.size(); ++i) {
      AgentIndex a = agents_[i];
      const std::string path = "kernels." + m.H().agent_id(a);
      if (kernels_[i].size() != m.info(a).num_atoms())
        throw InputError(path, "expected " + std::to_string(m.info(a).num_atoms()) +
                                   " atoms, got " + std::to_string(kernels_[i].size()));
      for (std::size_t z = 0; z < kernels_[i].size(); ++z) {
        const auto& k = kernels_[i][z];
        std::string zp = path + "[" + std::to_string(z) + "]";
        if (k.size() != m.num_actions(a)) throw InputError(zp, "wrong number of actions");
        Rational s;
        for (const auto& w : k) {
          if (w.is_negative()) throw InputError(zp, "negative weight " + w.ToString());
          s += w;
        }
        if (s != Rational(1)) throw InputError(zp, "weights sum to " + s.ToString());
      }
    }
  }

  int player() const { return player_; }
  const std::vector<AgentIndex>& agents() const { return agents_; }
  const std::vector<std::vector<Kernel>>& kernels() const { return kernels_; }
  const Kernel& kernel(std::size_t i, AtomId z) const { return kernels_[i][z]; }
  // Probability that agent a (of this player) plays u at atom z.
  const Rational& prob(AgentIndex a, AtomId z, int u) const {
    for (std::size_t i = 0; i < agents_.size(); ++i)
      if (agents_[i] == a) return kernels_[i][z][static_cast<std::size_t>(u)];
    throw PreconditionError("agent not owned by behavioral strategy's player");
  }

  friend bool operator==(const BehavioralStrategy&, const BehavioralStrategy&) = default;

 private:
  int player_ = 0;
  std::vector<AgentIndex> agents_;
  std::vector<std::vector<Kernel>> kernels_;
};

// Product expansion over (agent, atom) factors; zero-weight profiles dropped.
inline MixedStrategy BehavioralToMixed(const WModel& m, const BehavioralStrategy& b,
                                       std::size_t cap = kDefaultEnumerationCap) {
  struct Slot {
    std::size_t agent_pos;
    AtomId atom;
    std::vector<int> actions;
  };
  std::vector<Slot> slots;
  std::size_t total = 1;
  for (std::size_t i = 0; i < b.agents().size(); ++i)
    for (AtomId z = 0; z < b.kernels()[i].size(); ++z) {
      Slot s{i, z, {}};
      for (std::size_t u = 0; u < b.kernels()[i][z].size(); ++u)
        if (!b.kernels()[i][z][u].is_zero()) s.actions.push_back(static_cast<int>(u));
      total *= s.actions.size();
      if (total > cap)
        throw CapExceeded("behavioral expansion exceeds " + std::to_string(cap) + " profiles");
      slots.push_back(std::move(s));
    }
  std::vector<std::pair<PureProfile, Rational>> entries;
  std::vector<std::size_t> digit(slots.size(), 0);
  PureProfile base;
  for (std::size_t i = 0; i < b.agents().size(); ++i)
    base.strategies.push_back(
        {b.agents()[i], std::vector<int>(b.kernels()[i].size(), 0)});
  for (std::size_t t = 0; t < total; ++t) {
    PureProfile p = base;
    Rational w(1);
    for (std::size_t s = 0; s < slots.size(); ++s) {
      int u = slots[s].actions[digit[s]];
      p.strategies[slots[s].agent_pos].choice[slots[s].atom] = u;
      w *= b.kernels()[slots[s].agent_pos][slots[s].atom][static_cast<std::size_t>(u)];
    }
    entries.emplace_back(std::move(p), w);
    for (std::size_t s = slots.size(); s-- > 0;) {
      if (++digit[s] < slots[s].actions.size()) break;
      digit[s] = 0;
    }
  }
  return MixedStrategy(m, b.player(), std::move(entries));
}

using PlayerStrategy = std::variant<MixedStrategy, BehavioralStrategy>;

inline int PlayerOf(const PlayerStrategy& s) {
  return std::visit([](const auto& x) { return x.player(); }, s);
}

// One strategy per player, indexed by player.
using StrategyProfile = std::vector<PlayerStrategy>;

inline void CheckStrategyProfile(const WModel& m, const StrategyProfile& s) {
  if (s.size() != m.num_players())
    throw PreconditionError("one strategy per player is required");
  for (std::size_t p = 0; p < s.size(); ++p)
    if (PlayerOf(s[p]) != static_cast<int>(p))
      throw PreconditionError("strategy profile is not ordered by player");
}

}  // namespace wgame
