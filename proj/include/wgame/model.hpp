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

#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "wgame/error.hpp"
#include "wgame/field.hpp"

namespace wgame {

struct Player {
  std::string name;
  std::vector<AgentIndex> agents;  // ascending
};

// A finite W-model: Nature, agents with action sets, a partition of the agents
// into players, and one information partition per agent.
class WModel {
 public:
  WModel(SpacePtr space, std::vector<Player> players, std::vector<Partition> information)
      : space_(std::move(space)),
        players_(std::move(players)),
        info_(std::move(information)) {
    std::size_t n = space_->num_agents();
    if (info_.size() != n) throw InputError("information", "one field per agent is required");
    for (std::size_t a = 0; a < n; ++a) CheckSameSpace(info_[a], info_[0]);
    if (info_[0].space()->size() != space_->size() || !info_[0].space()->same_shape(*space_))
      throw SpaceMismatch();
    if (players_.empty()) throw InputError("players", "at least one player is required");
    player_of_.assign(n, -1);
    for (std::size_t p = 0; p < players_.size(); ++p) {
      auto& pl = players_[p];
      std::string path = "players." + pl.name;
      if (pl.name.empty()) throw InputError("players", "empty player name");
      for (std::size_t q = 0; q < p; ++q)
        if (players_[q].name == pl.name) throw InputError(path, "duplicate player name");
      if (pl.agents.empty()) throw InputError(path, "player owns no agents");
      std::sort(pl.agents.begin(), pl.agents.end());
      for (AgentIndex a : pl.agents) {
        if (a < 0 || static_cast<std::size_t>(a) >= n) throw InputError(path, "unknown agent");
        if (player_of_[static_cast<std::size_t>(a)] != -1)
          throw InputError(path, "agent '" + space_->agent_id(a) + "' belongs to two players");
        player_of_[static_cast<std::size_t>(a)] = static_cast<int>(p);
      }
    }
    for (std::size_t a = 0; a < n; ++a)
      if (player_of_[a] == -1)
        throw InputError("players", "agent '" + space_->agent_id(static_cast<AgentIndex>(a)) +
                                        "' belongs to no player");
  }

  const SpacePtr& space() const { return space_; }
  const ConfigurationSpace& H() const { return *space_; }
  std::size_t num_agents() const { return space_->num_agents(); }
  std::size_t num_players() const { return players_.size(); }
  const Player& player(int p) const { return players_.at(static_cast<std::size_t>(p)); }
  const std::vector<Player>& players() const { return players_; }
  int player_of(AgentIndex a) const { return player_of_.at(static_cast<std::size_t>(a)); }
  int player_index(const std::string& name) const {
    for (std::size_t p = 0; p < players_.size(); ++p)
      if (players_[p].name == name) return static_cast<int>(p);
    return -1;
  }
  const Partition& info(AgentIndex a) const { return info_.at(static_cast<std::size_t>(a)); }
  const std::vector<Partition>& information() const { return info_; }

  // Agents outside player p, ascending.
  std::vector<AgentIndex> opponents_of(int p) const {
    std::vector<AgentIndex> out;
    for (std::size_t a = 0; a < num_agents(); ++a)
      if (player_of_[a] != p) out.push_back(static_cast<AgentIndex>(a));
    return out;
  }

  std::size_t num_actions(AgentIndex a) const { return space_->actions(a).size(); }

 private:
  SpacePtr space_;
  std::vector<Player> players_;
  std::vector<Partition> info_;
  std::vector<int> player_of_;
};

// Space constructor used by the corpus and tests.
inline SpacePtr MakeSpace(std::vector<std::string> nature,
                          std::vector<std::pair<std::string, std::vector<std::string>>> agents,
                          std::size_t cap = kDefaultSpaceCap) {
  std::vector<std::string> ids;
  std::vector<FiniteSet> acts;
  for (auto& [id, a] : agents) {
    ids.push_back(id);
    acts.emplace_back(std::move(a));
  }
  return std::make_shared<const ConfigurationSpace>(FiniteSet(std::move(nature)), std::move(ids),
                                                     std::move(acts), cap);
}

}  // namespace wgame
