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

// Finite configuration spaces and sigma-fields over them.
//
// A sigma-field on a finite set is determined by its atoms, so every field is
// stored as a partition. Configurations are addressed by their index in the
// canonical enumeration of Omega x U_1 x ... x U_n (lexicographic, Nature
// most significant, last declared agent least significant).

#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "wgame/error.hpp"

namespace wgame {

using ConfigIndex = std::uint32_t;
using AtomId = std::uint32_t;
using AgentIndex = int;

inline constexpr std::size_t kDefaultSpaceCap = 10'000'000;

class FiniteSet {
 public:
  FiniteSet() = default;
  explicit FiniteSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
    if (labels_.empty()) throw InputError("", "finite set must be nonempty");
    for (std::size_t i = 0; i < labels_.size(); ++i) {
      if (labels_[i].empty()) throw InputError("", "empty label");
      if (!index_.emplace(labels_[i], static_cast<int>(i)).second)
        throw InputError("", "duplicate label '" + labels_[i] + "'");
    }
  }

  std::size_t size() const { return labels_.size(); }
  const std::string& label(int i) const { return labels_.at(static_cast<std::size_t>(i)); }
  const std::vector<std::string>& labels() const { return labels_; }

  // -1 when absent.
  int index_of(const std::string& label) const {
    auto it = index_.find(label);
    return it == index_.end() ? -1 : it->second;
  }

  friend bool operator==(const FiniteSet& a, const FiniteSet& b) {
    return a.labels_ == b.labels_;
  }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

// Decoded configuration: a Nature index and one action index per agent.
struct Configuration {
  int nature = 0;
  std::vector<int> actions;

  friend bool operator==(const Configuration&, const Configuration&) = default;
  friend auto operator<=>(const Configuration&, const Configuration&) = default;
};

// Which coordinates of the hybrid space a cylinder field depends on.
struct CoordinateSet {
  bool include_nature = false;
  std::vector<AgentIndex> agents;

  static CoordinateSet None() { return {}; }
  static CoordinateSet NatureOnly() { return {true, {}}; }
};

class ConfigurationSpace {
 public:
  ConfigurationSpace(FiniteSet nature, std::vector<std::string> agent_ids,
                     std::vector<FiniteSet> actions,
                     std::size_t cap = kDefaultSpaceCap)
      : nature_(std::move(nature)),
        agent_ids_(std::move(agent_ids)),
        actions_(std::move(actions)) {
    if (agent_ids_.empty()) throw InputError("agents", "at least one agent is required");
    if (agent_ids_.size() != actions_.size())
      throw InputError("agents", "one action set per agent is required");
    for (std::size_t i = 0; i < agent_ids_.size(); ++i) {
      if (agent_ids_[i].empty() || agent_ids_[i] == "nature")
        throw InputError("agents[" + std::to_string(i) + "].id",
                         "agent id must be nonempty and not 'nature'");
      if (!agent_index_.emplace(agent_ids_[i], static_cast<int>(i)).second)
        throw InputError("agents[" + std::to_string(i) + "].id",
                         "duplicate agent id '" + agent_ids_[i] + "'");
    }
    // strides_[c] for coordinate c (0 = nature, 1 + a = agent a)
    std::size_t n = agent_ids_.size();
    strides_.assign(n + 1, 1);
    radices_.assign(n + 1, 1);
    radices_[0] = nature_.size();
    for (std::size_t a = 0; a < n; ++a) radices_[a + 1] = actions_[a].size();
    for (std::size_t c = n; c-- > 0;) {
      strides_[c] = strides_[c + 1] * radices_[c + 1];
      if (strides_[c] > cap || strides_[c] * radices_[c] > cap)
        throw CapExceeded("configuration space exceeds cap of " +
                          std::to_string(cap) + " configurations");
    }
    size_ = strides_[0] * radices_[0];
    if (size_ > cap)
      throw CapExceeded("configuration space exceeds cap of " +
                        std::to_string(cap) + " configurations");
  }

  std::size_t size() const { return size_; }
  std::size_t num_agents() const { return agent_ids_.size(); }
  const FiniteSet& nature() const { return nature_; }
  const FiniteSet& actions(AgentIndex a) const { return actions_.at(static_cast<std::size_t>(a)); }
  const std::string& agent_id(AgentIndex a) const { return agent_ids_.at(static_cast<std::size_t>(a)); }
  const std::vector<std::string>& agent_ids() const { return agent_ids_; }
  int agent_index(const std::string& id) const {
    auto it = agent_index_.find(id);
    return it == agent_index_.end() ? -1 : it->second;
  }

  // Number of configurations sharing one Nature state.
  std::size_t slice_size() const { return strides_[0]; }

  int nature_of(ConfigIndex h) const { return static_cast<int>(h / strides_[0]); }
  int action_of(ConfigIndex h, AgentIndex a) const {
    std::size_t c = static_cast<std::size_t>(a) + 1;
    return static_cast<int>((h / strides_[c]) % radices_[c]);
  }
  // With a new action for agent a.
  ConfigIndex with_action(ConfigIndex h, AgentIndex a, int u) const {
    std::size_t c = static_cast<std::size_t>(a) + 1;
    long delta = static_cast<long>(u) - action_of(h, a);
    return static_cast<ConfigIndex>(static_cast<long>(h) + delta * static_cast<long>(strides_[c]));
  }

  ConfigIndex encode(const Configuration& cfg) const {
    if (cfg.actions.size() != num_agents())
      throw PreconditionError("configuration has wrong number of actions");
    std::size_t h = static_cast<std::size_t>(cfg.nature) * strides_[0];
    for (std::size_t a = 0; a < num_agents(); ++a)
      h += static_cast<std::size_t>(cfg.actions[a]) * strides_[a + 1];
    return static_cast<ConfigIndex>(h);
  }
  Configuration decode(ConfigIndex h) const {
    Configuration cfg;
    cfg.nature = nature_of(h);
    cfg.actions.resize(num_agents());
    for (std::size_t a = 0; a < num_agents(); ++a)
      cfg.actions[a] = action_of(h, static_cast<AgentIndex>(a));
    return cfg;
  }

  std::string describe(ConfigIndex h) const {
    std::string s = "(" + nature_.label(nature_of(h));
    for (std::size_t a = 0; a < num_agents(); ++a)
      s += "," + actions_[a].label(action_of(h, static_cast<AgentIndex>(a)));
    return s + ")";
  }

  bool same_shape(const ConfigurationSpace& o) const {
    return nature_ == o.nature_ && agent_ids_ == o.agent_ids_ && actions_ == o.actions_;
  }

 private:
  FiniteSet nature_;
  std::vector<std::string> agent_ids_;
  std::vector<FiniteSet> actions_;
  std::unordered_map<std::string, int> agent_index_;
  std::vector<std::size_t> strides_;
  std::vector<std::size_t> radices_;
  std::size_t size_ = 0;
};

using SpacePtr = std::shared_ptr<const ConfigurationSpace>;

// Subset of configurations as a bitset over the canonical enumeration.
class ConfigSet {
 public:
  ConfigSet() = default;
  explicit ConfigSet(std::size_t n, bool full = false)
      : n_(n), words_((n + 63) / 64, full ? ~std::uint64_t{0} : 0) {
    trim();
  }
  static ConfigSet Of(std::size_t n, const std::vector<ConfigIndex>& members) {
    ConfigSet s(n);
    for (ConfigIndex h : members) s.insert(h);
    return s;
  }

  std::size_t universe() const { return n_; }
  bool contains(ConfigIndex h) const { return (words_[h >> 6] >> (h & 63)) & 1u; }
  void insert(ConfigIndex h) { words_[h >> 6] |= std::uint64_t{1} << (h & 63); }
  void erase(ConfigIndex h) { words_[h >> 6] &= ~(std::uint64_t{1} << (h & 63)); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool empty() const {
    return std::all_of(words_.begin(), words_.end(), [](auto w) { return w == 0; });
  }
  bool is_subset_of(const ConfigSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & ~o.words_[i]) return false;
    return true;
  }
  bool intersects(const ConfigSet& o) const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i] & o.words_[i]) return true;
    return false;
  }

  ConfigSet& operator&=(const ConfigSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  ConfigSet& operator|=(const ConfigSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  ConfigSet& operator-=(const ConfigSet& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }
  friend ConfigSet operator&(ConfigSet a, const ConfigSet& b) { return a &= b; }
  friend ConfigSet operator|(ConfigSet a, const ConfigSet& b) { return a |= b; }
  friend ConfigSet operator-(ConfigSet a, const ConfigSet& b) { return a -= b; }
  ConfigSet complement() const { return ConfigSet(n_, true) - *this; }

  std::vector<ConfigIndex> members() const {
    std::vector<ConfigIndex> out;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      std::uint64_t w = words_[i];
      while (w) {
        int b = std::countr_zero(w);
        out.push_back(static_cast<ConfigIndex>(i * 64 + static_cast<std::size_t>(b)));
        w &= w - 1;
      }
    }
    return out;
  }
  // Smallest member; universe() when empty.
  std::size_t first() const {
    for (std::size_t i = 0; i < words_.size(); ++i)
      if (words_[i]) return i * 64 + static_cast<std::size_t>(std::countr_zero(words_[i]));
    return n_;
  }

  friend bool operator==(const ConfigSet&, const ConfigSet&) = default;

  std::uint64_t hash() const {
    std::uint64_t x = 1469598103934665603ull ^ n_;
    for (auto w : words_) x = (x ^ w) * 1099511628211ull;
    return x;
  }

 private:
  void trim() {
    if (n_ % 64 && !words_.empty()) words_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
  }
  std::size_t n_ = 0;
  std::vector<std::uint64_t> words_;
};

// A sigma-field on the configuration space, stored by its atoms. Atoms are
// numbered by increasing smallest member, so two equal fields have identical
// representations.
class Partition {
 public:
  Partition() = default;

  // Builds the partition whose atoms are the level sets of `labels`.
  static Partition FromLabels(SpacePtr space, const std::vector<std::uint64_t>& labels) {
    if (labels.size() != space->size())
      throw PreconditionError("label vector does not match space size");
    Partition p;
    p.space_ = std::move(space);
    p.atom_of_.resize(labels.size());
    std::unordered_map<std::uint64_t, AtomId> seen;
    for (std::size_t h = 0; h < labels.size(); ++h) {
      auto [it, inserted] = seen.emplace(labels[h], static_cast<AtomId>(p.atoms_.size()));
      if (inserted) p.atoms_.emplace_back();
      p.atom_of_[h] = it->second;
      p.atoms_[it->second].push_back(static_cast<ConfigIndex>(h));
    }
    return p;
  }

  static Partition Trivial(SpacePtr space) {
    return FromLabels(space, std::vector<std::uint64_t>(space->size(), 0));
  }
  static Partition Complete(SpacePtr space) {
    std::vector<std::uint64_t> l(space->size());
    std::iota(l.begin(), l.end(), 0);
    return FromLabels(std::move(space), l);
  }

  // Validates that `atoms` are disjoint, nonempty and cover the space.
  static Partition FromAtoms(SpacePtr space, const std::vector<std::vector<ConfigIndex>>& atoms) {
    constexpr std::uint64_t kUnset = ~std::uint64_t{0};
    std::vector<std::uint64_t> labels(space->size(), kUnset);
    for (std::size_t i = 0; i < atoms.size(); ++i) {
      if (atoms[i].empty())
        throw InputError("atoms[" + std::to_string(i) + "]", "atom is empty");
      for (ConfigIndex h : atoms[i]) {
        if (h >= space->size())
          throw InputError("atoms[" + std::to_string(i) + "]", "configuration out of range");
        if (labels[h] != kUnset)
          throw InputError("atoms[" + std::to_string(i) + "]",
                           "atoms are not disjoint: " + space->describe(h) + " appears twice");
        labels[h] = i;
      }
    }
    for (std::size_t h = 0; h < labels.size(); ++h)
      if (labels[h] == kUnset)
        throw InputError("atoms", "atoms do not cover H: " +
                                      space->describe(static_cast<ConfigIndex>(h)) + " is missing");
    return FromLabels(std::move(space), labels);
  }

  const SpacePtr& space() const { return space_; }
  std::size_t num_atoms() const { return atoms_.size(); }
  AtomId atom_of(ConfigIndex h) const { return atom_of_[h]; }
  const std::vector<AtomId>& atom_index() const { return atom_of_; }
  const std::vector<ConfigIndex>& atom(AtomId z) const { return atoms_.at(z); }
  const std::vector<std::vector<ConfigIndex>>& atoms() const { return atoms_; }
  ConfigSet atom_set(AtomId z) const { return ConfigSet::Of(space_->size(), atoms_.at(z)); }

  bool is_trivial() const { return atoms_.size() == 1; }
  bool is_complete() const { return atoms_.size() == atom_of_.size(); }

  friend bool operator==(const Partition& a, const Partition& b) {
    return a.atom_of_ == b.atom_of_;
  }

 private:
  SpacePtr space_;
  std::vector<AtomId> atom_of_;
  std::vector<std::vector<ConfigIndex>> atoms_;
};

inline void CheckSameSpace(const Partition& p, const Partition& q) {
  if (p.space() == q.space()) return;
  if (!p.space() || !q.space() || !p.space()->same_shape(*q.space())) throw SpaceMismatch();
}

// Two configurations share an atom iff they agree on every coordinate in
// `coords`.
inline Partition CylinderPartition(const SpacePtr& space, const CoordinateSet& coords) {
  for (AgentIndex a : coords.agents)
    if (a < 0 || static_cast<std::size_t>(a) >= space->num_agents())
      throw PreconditionError("coordinate set names an unknown agent");
  std::vector<std::uint64_t> labels(space->size());
  for (std::size_t h = 0; h < space->size(); ++h) {
    std::uint64_t key = 0;
    auto hh = static_cast<ConfigIndex>(h);
    if (coords.include_nature)
      key = static_cast<std::uint64_t>(space->nature_of(hh));
    for (AgentIndex a : coords.agents)
      key = key * space->actions(a).size() + static_cast<std::uint64_t>(space->action_of(hh, a));
    labels[h] = key;
  }
  return Partition::FromLabels(space, labels);
}

// True iff every atom of `fine` lies inside one atom of `coarse`.
inline bool PartitionRefines(const Partition& fine, const Partition& coarse) {
  CheckSameSpace(fine, coarse);
  for (const auto& atom : fine.atoms()) {
    AtomId z = coarse.atom_of(atom.front());
    for (ConfigIndex h : atom)
      if (coarse.atom_of(h) != z) return false;
  }
  return true;
}

// Common refinement: the smallest field containing both.
inline Partition PartitionJoin(const Partition& p, const Partition& q) {
  CheckSameSpace(p, q);
  std::vector<std::uint64_t> labels(p.atom_index().size());
  for (std::size_t h = 0; h < labels.size(); ++h)
    labels[h] = (static_cast<std::uint64_t>(p.atom_of(static_cast<ConfigIndex>(h))) << 32) |
                q.atom_of(static_cast<ConfigIndex>(h));
  return Partition::FromLabels(p.space(), labels);
}

// Partition of a subset by intersecting it with the atoms of a field.
struct SubsetPartition {
  ConfigSet domain;
  std::vector<ConfigSet> atoms;
};

inline SubsetPartition TracePartition(const Partition& p, const ConfigSet& subset) {
  if (subset.empty()) throw PreconditionError("trace over an empty subset");
  SubsetPartition out{subset, {}};
  std::unordered_map<AtomId, std::size_t> pos;
  for (ConfigIndex h : subset.members()) {
    auto [it, inserted] = pos.emplace(p.atom_of(h), out.atoms.size());
    if (inserted) out.atoms.emplace_back(subset.universe());
    out.atoms[it->second].insert(h);
  }
  return out;
}

inline AtomId AtomOf(const Partition& p, ConfigIndex h) { return p.atom_of(h); }

// True iff `s` is a (possibly empty) union of atoms of `p`.
inline bool SubsetInField(const ConfigSet& s, const Partition& p) {
  std::vector<std::uint32_t> hits(p.num_atoms(), 0);
  for (ConfigIndex h : s.members()) ++hits[p.atom_of(h)];
  for (std::size_t z = 0; z < hits.size(); ++z)
    if (hits[z] != 0 && hits[z] != p.atom(static_cast<AtomId>(z)).size()) return false;
  return true;
}

// First atom of `p` that meets `s` without being contained in it.
inline std::optional<AtomId> FirstStraddlingAtom(const ConfigSet& s, const Partition& p) {
  std::vector<std::uint32_t> hits(p.num_atoms(), 0);
  for (ConfigIndex h : s.members()) ++hits[p.atom_of(h)];
  for (std::size_t z = 0; z < hits.size(); ++z)
    if (hits[z] != 0 && hits[z] != p.atom(static_cast<AtomId>(z)).size())
      return static_cast<AtomId>(z);
  return std::nullopt;
}

}  // namespace wgame
