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

// Orderings of a player's agents, configuration-orderings, perfect recall and
// partial causality.

#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "wgame/field.hpp"
#include "wgame/model.hpp"

namespace wgame {

using Ordering = std::vector<AgentIndex>;

inline constexpr std::size_t kDefaultSearchBudget = 1'000'000;

// All injective sequences of length k over the player's agents, lexicographic
// in agent index.
inline std::vector<Ordering> EnumerateOrderings(const WModel& m, int player, std::size_t k) {
  const auto& agents = m.player(player).agents;
  if (k < 1 || k > agents.size())
    throw PreconditionError("ordering length " + std::to_string(k) + " out of range");
  std::vector<Ordering> out;
  Ordering cur;
  std::vector<bool> used(agents.size(), false);
  auto rec = [&](auto&& self) -> void {
    if (cur.size() == k) {
      out.push_back(cur);
      return;
    }
    for (std::size_t i = 0; i < agents.size(); ++i) {
      if (used[i]) continue;
      used[i] = true;
      cur.push_back(agents[i]);
      self(self);
      cur.pop_back();
      used[i] = false;
    }
  };
  rec(rec);
  return out;
}

// Lengths 1..n, each block lexicographic.
inline std::vector<Ordering> AllOrderings(const WModel& m, int player) {
  std::vector<Ordering> out;
  for (std::size_t k = 1; k <= m.player(player).agents.size(); ++k) {
    auto block = EnumerateOrderings(m, player, k);
    out.insert(out.end(), block.begin(), block.end());
  }
  return out;
}

inline Ordering RestrictOrdering(const Ordering& rho, std::size_t k) {
  if (k < 1 || k > rho.size())
    throw PreconditionError("restriction length " + std::to_string(k) + " out of range");
  return Ordering(rho.begin(), rho.begin() + static_cast<long>(k));
}

// Predecessors of the last agent.
inline Ordering FirstElements(const Ordering& kappa) {
  return Ordering(kappa.begin(), kappa.end() - 1);
}

// Assignment of a total ordering of the player's agents to every
// configuration. orders is sorted and duplicate-free.
class ConfigurationOrdering {
 public:
  ConfigurationOrdering() = default;
  ConfigurationOrdering(const WModel& m, int player, const std::vector<Ordering>& per_config)
      : player_(player) {
    if (per_config.size() != m.H().size())
      throw InputError("ordering", "one ordering per configuration is required");
    auto agents = m.player(player).agents;
    std::map<Ordering, std::uint32_t> ids;
    for (const auto& o : per_config) {
      Ordering s = o;
      std::sort(s.begin(), s.end());
      if (s != agents)
        throw InputError("ordering", "not a total ordering of player '" + m.player(player).name +
                                         "'");
      ids.emplace(o, 0);
    }
    std::uint32_t next = 0;
    for (auto& [o, id] : ids) {
      id = next++;
      orders_.push_back(o);
    }
    order_of_.reserve(per_config.size());
    for (const auto& o : per_config) order_of_.push_back(ids.at(o));
  }

  static ConfigurationOrdering Constant(const WModel& m, int player, const Ordering& rho) {
    return ConfigurationOrdering(m, player, std::vector<Ordering>(m.H().size(), rho));
  }

  int player() const { return player_; }
  const Ordering& at(ConfigIndex h) const { return orders_[order_of_[h]]; }
  const std::vector<Ordering>& orders() const { return orders_; }
  std::uint32_t order_id(ConfigIndex h) const { return order_of_[h]; }
  bool is_constant() const { return orders_.size() == 1; }

  friend bool operator==(const ConfigurationOrdering&, const ConfigurationOrdering&) = default;

 private:
  int player_ = 0;
  std::vector<Ordering> orders_;
  std::vector<std::uint32_t> order_of_;
};

// H_kappa: configurations whose ordering starts with kappa. The empty kappa
// gives H.
inline ConfigSet OrderingCell(const WModel& m, const ConfigurationOrdering& phi,
                              const Ordering& kappa) {
  ConfigSet out(m.H().size());
  std::vector<bool> match(phi.orders().size());
  for (std::size_t i = 0; i < match.size(); ++i) {
    const auto& o = phi.orders()[i];
    match[i] = kappa.size() <= o.size() && std::equal(kappa.begin(), kappa.end(), o.begin());
  }
  for (std::size_t h = 0; h < m.H().size(); ++h)
    if (match[phi.order_id(static_cast<ConfigIndex>(h))]) out.insert(static_cast<ConfigIndex>(h));
  return out;
}

// Join of (action cylinder of a) v I_a over the given agents; trivial when
// empty.
inline Partition ChoiceField(const WModel& m, const std::vector<AgentIndex>& agents) {
  Partition c = Partition::Trivial(m.space());
  for (AgentIndex a : agents) {
    c = PartitionJoin(c, CylinderPartition(m.space(), {false, {a}}));
    c = PartitionJoin(c, m.info(a));
  }
  return c;
}

// Field generated by Nature, the player's opponents and the given agents.
inline Partition HistoryField(const WModel& m, int player, const std::vector<AgentIndex>& own) {
  CoordinateSet cs{true, m.opponents_of(player)};
  cs.agents.insert(cs.agents.end(), own.begin(), own.end());
  std::sort(cs.agents.begin(), cs.agents.end());
  return CylinderPartition(m.space(), cs);
}

struct RecallViolationDetail {
  Ordering kappa;
  std::vector<ConfigIndex> atom;       // atom H' of the tested field
  std::vector<ConfigIndex> set;        // H_kappa intersected with H'
  std::vector<ConfigIndex> offending;  // atom of the target field split by `set`
};

struct RecallReport {
  bool holds = true;
  ConfigurationOrdering ordering;
  std::optional<RecallViolationDetail> violation;
};

namespace internal {

inline std::uint32_t AgentMask(const std::vector<AgentIndex>& agents) {
  std::uint32_t mask = 0;
  for (AgentIndex a : agents) mask |= 1u << a;
  return mask;
}

inline void CheckSmallPlayer(const WModel& m, int player) {
  if (m.num_agents() > 31) throw PreconditionError("at most 31 agents are supported");
  (void)player;
}

}  // namespace internal

// Every kappa with |kappa| >= 2 and every atom H' of the choice field of the
// predecessors: H_kappa n H' must lie in I_last(kappa). For |kappa| = 1 the
// cell itself must lie in I_last(kappa).
inline RecallReport CheckPerfectRecall(const WModel& m, int player,
                                       const ConfigurationOrdering& phi) {
  internal::CheckSmallPlayer(m, player);
  RecallReport rep{true, phi, std::nullopt};
  std::unordered_map<std::uint32_t, Partition> choice_cache;
  for (const auto& kappa : AllOrderings(m, player)) {
    ConfigSet cell = OrderingCell(m, phi, kappa);
    if (cell.empty()) continue;
    Ordering flat = FirstElements(kappa);
    std::sort(flat.begin(), flat.end());
    auto mask = internal::AgentMask(flat);
    auto it = choice_cache.find(mask);
    if (it == choice_cache.end()) it = choice_cache.emplace(mask, ChoiceField(m, flat)).first;
    const Partition& C = it->second;
    const Partition& I_last = m.info(kappa.back());
    for (const auto& piece : TracePartition(C, cell).atoms) {
      if (auto z = FirstStraddlingAtom(piece, I_last)) {
        rep.holds = false;
        rep.violation = RecallViolationDetail{kappa, C.atom(C.atom_of(piece.members().front())),
                                              piece.members(), I_last.atom(*z)};
        return rep;
      }
    }
  }
  return rep;
}

// Every kappa and every atom H' of I_last(kappa): H_kappa n H' must depend on
// Nature, opponents and the predecessors' actions only.
inline RecallReport CheckPartialCausality(const WModel& m, int player,
                                          const ConfigurationOrdering& phi) {
  internal::CheckSmallPlayer(m, player);
  RecallReport rep{true, phi, std::nullopt};
  std::unordered_map<std::uint32_t, Partition> hist_cache;
  for (const auto& kappa : AllOrderings(m, player)) {
    ConfigSet cell = OrderingCell(m, phi, kappa);
    if (cell.empty()) continue;
    Ordering flat = FirstElements(kappa);
    std::sort(flat.begin(), flat.end());
    auto mask = internal::AgentMask(flat);
    auto it = hist_cache.find(mask);
    if (it == hist_cache.end()) it = hist_cache.emplace(mask, HistoryField(m, player, flat)).first;
    const Partition& D = it->second;
    const Partition& I_last = m.info(kappa.back());
    for (const auto& piece : TracePartition(I_last, cell).atoms) {
      if (auto d = FirstStraddlingAtom(piece, D)) {
        rep.holds = false;
        rep.violation = RecallViolationDetail{
            kappa, I_last.atom(I_last.atom_of(piece.members().front())), piece.members(),
            D.atom(*d)};
        return rep;
      }
    }
  }
  return rep;
}

enum class SearchStatus { kFound, kNone, kUnknown };

struct OrderingSearchResult {
  SearchStatus status = SearchStatus::kNone;
  std::optional<ConfigurationOrdering> ordering;
  std::size_t nodes = 0;
};

namespace internal {

struct BudgetExhausted {};

struct SetKey {
  std::uint32_t mask;
  ConfigSet set;
  bool operator==(const SetKey& o) const { return mask == o.mask && set == o.set; }
};
struct SetKeyHash {
  std::size_t operator()(const SetKey& k) const {
    return static_cast<std::size_t>(k.set.hash() * 31 + k.mask);
  }
};

// Backtracking over prefix cells. A subproblem is a set Y inside one prefix
// cell and inside one atom of the choice field of the prefix; it depends only
// on Y and the set of agents already placed.
class RecallSearch {
 public:
  RecallSearch(const WModel& m, int player, std::size_t budget)
      : m_(m), player_(player), budget_(budget), assign_(m.H().size()) {}

  bool Run() {
    ConfigSet all(m_.H().size(), true);
    Ordering p;
    return Solve(all, p);
  }
  std::size_t nodes() const { return nodes_; }
  const std::vector<Ordering>& assignment() const { return assign_; }

 private:
  const Partition& Choice(std::uint32_t mask, const Ordering& p) {
    auto it = choice_.find(mask);
    if (it != choice_.end()) return it->second;
    Ordering flat = p;
    std::sort(flat.begin(), flat.end());
    return choice_.emplace(mask, ChoiceField(m_, flat)).first->second;
  }

  void Tick() {
    if (++nodes_ > budget_) throw BudgetExhausted{};
  }

  bool Solve(const ConfigSet& Y, Ordering& p) {
    const auto& agents = m_.player(player_).agents;
    if (p.size() == agents.size()) {
      for (ConfigIndex h : Y.members()) assign_[h] = p;
      return true;
    }
    std::uint32_t mask = AgentMask(p);
    SetKey key{mask, Y};
    if (failed_.count(key)) return false;
    std::vector<AgentIndex> rest;
    for (AgentIndex a : agents)
      if (!(mask >> a & 1u)) rest.push_back(a);
    std::vector<std::pair<AgentIndex, AtomId>> chosen;
    bool ok = Cover(Y, Y, rest, chosen, p);
    if (!ok) failed_.insert(std::move(key));
    return ok;
  }

  bool Cover(const ConfigSet& Y, const ConfigSet& remaining, const std::vector<AgentIndex>& rest,
             std::vector<std::pair<AgentIndex, AtomId>>& chosen, Ordering& p) {
    if (remaining.empty()) return Children(Y, rest, chosen, p);
    auto h = static_cast<ConfigIndex>(remaining.first());
    for (AgentIndex a : rest) {
      const Partition& I = m_.info(a);
      AtomId z = I.atom_of(h);
      bool inside = std::all_of(I.atom(z).begin(), I.atom(z).end(),
                                [&](ConfigIndex g) { return remaining.contains(g); });
      if (!inside) continue;
      Tick();
      ConfigSet next = remaining - I.atom_set(z);
      chosen.emplace_back(a, z);
      if (Cover(Y, next, rest, chosen, p)) return true;
      chosen.pop_back();
    }
    return false;
  }

  bool Children(const ConfigSet& Y, const std::vector<AgentIndex>& rest,
                const std::vector<std::pair<AgentIndex, AtomId>>& chosen, Ordering& p) {
    for (AgentIndex a : rest) {
      ConfigSet Ya(Y.universe());
      for (const auto& [b, z] : chosen)
        if (b == a) Ya |= m_.info(a).atom_set(z);
      if (Ya.empty()) continue;
      p.push_back(a);
      const Partition& C = Choice(AgentMask(p), p);
      bool ok = true;
      for (const auto& piece : TracePartition(C, Ya).atoms)
        if (!Solve(piece, p)) {
          ok = false;
          break;
        }
      p.pop_back();
      if (!ok) return false;
    }
    return true;
  }

  const WModel& m_;
  int player_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Ordering> assign_;
  std::unordered_map<std::uint32_t, Partition> choice_;
  std::unordered_set<SetKey, SetKeyHash> failed_;
};

// A subproblem is one class d of the history field of the prefix (Nature,
// opponents, placed agents) inside the prefix cell. The next agent must see d
// inside one of its atoms; classes are independent, so results are memoized by
// (placed agents, smallest member of d).
class CausalitySearch {
 public:
  CausalitySearch(const WModel& m, int player, std::size_t budget)
      : m_(m), player_(player), budget_(budget), assign_(m.H().size()) {}

  bool Run() {
    const Partition& D = History(0, {});
    for (const auto& atom : D.atoms()) {
      Ordering p;
      if (!Solve(atom, p)) return false;
    }
    return true;
  }
  std::size_t nodes() const { return nodes_; }
  const std::vector<Ordering>& assignment() const { return assign_; }

 private:
  const Partition& History(std::uint32_t mask, const Ordering& p) {
    auto it = hist_.find(mask);
    if (it != hist_.end()) return it->second;
    Ordering flat = p;
    std::sort(flat.begin(), flat.end());
    return hist_.emplace(mask, HistoryField(m_, player_, flat)).first->second;
  }

  // d is sorted; writes the orderings of all of d on success.
  bool Solve(const std::vector<ConfigIndex>& d, Ordering& p) {
    const auto& agents = m_.player(player_).agents;
    if (p.size() == agents.size()) {
      for (ConfigIndex h : d) assign_[h] = p;
      return true;
    }
    std::uint32_t mask = AgentMask(p);
    std::uint64_t key = (static_cast<std::uint64_t>(mask) << 32) | d.front();
    if (auto it = memo_.find(key); it != memo_.end() && !it->second) return false;
    for (AgentIndex a : agents) {
      if (mask >> a & 1u) continue;
      const Partition& I = m_.info(a);
      AtomId z = I.atom_of(d.front());
      if (!std::all_of(d.begin(), d.end(), [&](ConfigIndex g) { return I.atom_of(g) == z; }))
        continue;
      if (++nodes_ > budget_) throw BudgetExhausted{};
      p.push_back(a);
      const Partition& D = History(AgentMask(p), p);
      ConfigSet ds = ConfigSet::Of(m_.H().size(), d);
      bool ok = true;
      for (const auto& piece : TracePartition(D, ds).atoms)
        if (!Solve(piece.members(), p)) {
          ok = false;
          break;
        }
      p.pop_back();
      if (ok) {
        memo_[key] = true;
        return true;
      }
    }
    memo_[key] = false;
    return false;
  }

  const WModel& m_;
  int player_;
  std::size_t budget_;
  std::size_t nodes_ = 0;
  std::vector<Ordering> assign_;
  std::unordered_map<std::uint32_t, Partition> hist_;
  std::unordered_map<std::uint64_t, bool> memo_;
};

template <typename Check, typename Search>
OrderingSearchResult SearchOrdering(const WModel& m, int player, std::size_t budget, Check check) {
  if (budget == 0) throw PreconditionError("search budget must be positive");
  CheckSmallPlayer(m, player);
  OrderingSearchResult res;
  std::size_t n = m.player(player).agents.size();
  for (const auto& rho : EnumerateOrderings(m, player, n)) {
    if (++res.nodes > budget) {
      res.status = SearchStatus::kUnknown;
      return res;
    }
    auto phi = ConfigurationOrdering::Constant(m, player, rho);
    if (check(m, player, phi).holds) {
      res.status = SearchStatus::kFound;
      res.ordering = std::move(phi);
      return res;
    }
  }
  Search search(m, player, budget - res.nodes);
  try {
    bool found = search.Run();
    res.nodes += search.nodes();
    if (found) {
      res.status = SearchStatus::kFound;
      res.ordering = ConfigurationOrdering(m, player, search.assignment());
    } else {
      res.status = SearchStatus::kNone;
    }
  } catch (const BudgetExhausted&) {
    res.nodes = budget;
    res.status = SearchStatus::kUnknown;
  }
  return res;
}

}  // namespace internal

// Constant orderings first, then backtracking over prefix cells. kNone is only
// reported after exhausting the search within the node budget.
inline OrderingSearchResult SearchRecallOrdering(const WModel& m, int player,
                                                 std::size_t budget = kDefaultSearchBudget) {
  return internal::SearchOrdering<decltype(&CheckPerfectRecall), internal::RecallSearch>(
      m, player, budget, &CheckPerfectRecall);
}

inline OrderingSearchResult SearchCausalOrdering(const WModel& m, int player,
                                                 std::size_t budget = kDefaultSearchBudget) {
  return internal::SearchOrdering<decltype(&CheckPartialCausality), internal::CausalitySearch>(
      m, player, budget, &CheckPartialCausality);
}

}  // namespace wgame
