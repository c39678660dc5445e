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

// Brute-force reference implementations. They share only the model data
// types with the library and recompute everything from definitions.

#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <vector>

#include "wgame/wgame.hpp"

namespace wgame::oracle {

// Action tuples of all agents, last agent fastest.
inline std::vector<std::vector<int>> ActionTuples(const ConfigurationSpace& H) {
  std::vector<std::vector<int>> out;
  std::vector<int> u(H.num_agents(), 0);
  while (true) {
    out.push_back(u);
    std::size_t i = u.size();
    while (i > 0) {
      --i;
      if (++u[i] < static_cast<int>(H.actions(static_cast<AgentIndex>(i)).size())) break;
      u[i] = 0;
      if (i == 0) return out;
    }
    if (u.empty()) return out;
  }
}

inline int Choice(const WModel& m, const PureProfile& p, AgentIndex a, ConfigIndex h) {
  for (const auto& s : p.strategies)
    if (s.agent == a) return s.choice.at(m.info(a).atom_of(h));
  throw std::logic_error("agent missing from profile");
}

inline std::vector<ConfigIndex> Solutions(const WModel& m, const PureProfile& p, int omega) {
  const auto& H = m.H();
  std::vector<ConfigIndex> out;
  for (const auto& u : ActionTuples(H)) {
    ConfigIndex h = H.encode({omega, u});
    bool ok = true;
    for (std::size_t a = 0; a < u.size() && ok; ++a)
      ok = Choice(m, p, static_cast<AgentIndex>(a), h) == u[a];
    if (ok) out.push_back(h);
  }
  return out;
}

// All pure strategies of agent a, counted as maps atom -> action.
inline std::vector<std::vector<int>> AllChoices(const WModel& m, AgentIndex a) {
  std::size_t atoms = m.info(a).num_atoms();
  int k = static_cast<int>(m.H().actions(a).size());
  std::vector<std::vector<int>> out;
  std::vector<int> c(atoms, 0);
  while (true) {
    out.push_back(c);
    std::size_t i = 0;
    while (i < atoms && ++c[i] == k) c[i++] = 0;
    if (i == atoms) return out;
  }
}

// Every profile over `agents` (sorted).
inline std::vector<PureProfile> AllProfiles(const WModel& m, const std::vector<AgentIndex>& agents) {
  std::vector<PureProfile> out{PureProfile{}};
  for (AgentIndex a : agents) {
    std::vector<PureProfile> next;
    for (const auto& p : out)
      for (const auto& c : AllChoices(m, a)) {
        PureProfile q = p;
        q.strategies.push_back({a, c});
        next.push_back(std::move(q));
      }
    out = std::move(next);
  }
  for (auto& p : out) p.normalize();
  return out;
}

inline bool Playable(const WModel& m) {
  for (const auto& p : AllProfiles(m, AllAgents(m)))
    for (std::size_t w = 0; w < m.H().nature().size(); ++w)
      if (Solutions(m, p, static_cast<int>(w)).size() != 1) return false;
  return true;
}

// Number of pure sub-profiles of a player, saturating at `cap`.
inline std::size_t ProfileCount(const WModel& m, int player, std::size_t cap = 1u << 20) {
  std::size_t n = 1;
  for (AgentIndex a : m.player(player).agents)
    for (std::size_t z = 0; z < m.info(a).num_atoms(); ++z) {
      n *= m.num_actions(a);
      if (n >= cap) return cap;
    }
  return n;
}

// Player strategies as explicit (profile, weight) lists.
inline std::vector<std::pair<PureProfile, Rational>> Expand(const WModel& m, const PlayerStrategy& s) {
  std::vector<std::pair<PureProfile, Rational>> out;
  if (const auto* x = std::get_if<MixedStrategy>(&s)) {
    for (std::size_t i = 0; i < x->size(); ++i) out.emplace_back(x->support()[i], x->weights()[i]);
    return out;
  }
  const auto& b = std::get<BehavioralStrategy>(s);
  for (const auto& p : AllProfiles(m, m.player(b.player()).agents)) {
    Rational w(1);
    for (const auto& st : p.strategies)
      for (std::size_t z = 0; z < st.choice.size(); ++z)
        w *= b.prob(st.agent, static_cast<AtomId>(z), st.choice[z]);
    if (!w.is_zero()) out.emplace_back(p, w);
  }
  return out;
}

inline std::map<ConfigIndex, Rational> Pushforward(const WModel& m, const NatureDistribution& nu,
                                                   const StrategyProfile& strategies) {
  std::vector<std::vector<std::pair<PureProfile, Rational>>> per;
  for (const auto& s : strategies) per.push_back(Expand(m, s));
  std::map<ConfigIndex, Rational> q;
  std::vector<std::size_t> pick(per.size(), 0);
  while (true) {
    Rational w(1);
    PureProfile full;
    for (std::size_t i = 0; i < per.size(); ++i) {
      w *= per[i][pick[i]].second;
      for (const auto& st : per[i][pick[i]].first.strategies) full.strategies.push_back(st);
    }
    full.normalize();
    for (std::size_t k = 0; k < nu.size(); ++k) {
      auto sol = Solutions(m, full, nu.carrier()[k]);
      if (sol.size() != 1) throw std::runtime_error("oracle: not solvable");
      q[sol[0]] += w * nu.weights()[k];
    }
    std::size_t i = 0;
    while (i < per.size() && ++pick[i] == per[i].size()) pick[i++] = 0;
    if (i == per.size()) break;
  }
  for (auto it = q.begin(); it != q.end();) it = it->second.is_zero() ? q.erase(it) : std::next(it);
  return q;
}

// Subset algebra on spaces of at most 64 configurations.
using Mask = std::uint64_t;

inline Mask Full(std::size_t n) { return n == 64 ? ~Mask{0} : ((Mask{1} << n) - 1); }

// Sigma-field generated by `gens`: its atoms are the classes of equal
// membership signature; members are all unions of atoms.
inline std::set<Mask> Generate(const std::vector<Mask>& gens, std::size_t n) {
  std::map<std::vector<bool>, Mask> classes;
  for (std::size_t h = 0; h < n; ++h) {
    std::vector<bool> sig;
    for (Mask g : gens) sig.push_back((g >> h) & 1);
    classes[sig] |= Mask{1} << h;
  }
  std::vector<Mask> atoms;
  for (const auto& [sig, x] : classes) atoms.push_back(x);
  if (atoms.size() > 20) throw std::runtime_error("oracle: field too large");
  std::set<Mask> f;
  for (std::uint32_t sel = 0; sel < (1u << atoms.size()); ++sel) {
    Mask x = 0;
    for (std::size_t i = 0; i < atoms.size(); ++i)
      if ((sel >> i) & 1) x |= atoms[i];
    f.insert(x);
  }
  return f;
}

inline std::vector<Mask> Blocks(const Partition& p) {
  std::vector<Mask> out;
  for (const auto& atom : p.atoms()) {
    Mask x = 0;
    for (ConfigIndex h : atom) x |= Mask{1} << h;
    out.push_back(x);
  }
  return out;
}

// {h : h_a = u} for all u.
inline std::vector<Mask> ActionCylinders(const ConfigurationSpace& H, AgentIndex a) {
  std::vector<Mask> out(H.actions(a).size(), 0);
  for (ConfigIndex h = 0; h < H.size(); ++h) out[static_cast<std::size_t>(H.action_of(h, a))] |= Mask{1} << h;
  return out;
}

inline std::vector<Mask> NatureCylinders(const ConfigurationSpace& H) {
  std::vector<Mask> out(H.nature().size(), 0);
  for (ConfigIndex h = 0; h < H.size(); ++h) out[static_cast<std::size_t>(H.nature_of(h))] |= Mask{1} << h;
  return out;
}

inline bool Prefix(const Ordering& full, const Ordering& k) {
  return k.size() <= full.size() && std::equal(k.begin(), k.end(), full.begin());
}

inline Mask Cell(const WModel& m, const ConfigurationOrdering& phi, const Ordering& kappa) {
  Mask x = 0;
  for (ConfigIndex h = 0; h < m.H().size(); ++h)
    if (Prefix(phi.at(h), kappa)) x |= Mask{1} << h;
  return x;
}

// Injective sequences of length >= 1 over `agents`.
inline std::vector<Ordering> Sequences(const std::vector<AgentIndex>& agents) {
  std::vector<Ordering> out, frontier{Ordering{}};
  for (std::size_t k = 0; k < agents.size(); ++k) {
    std::vector<Ordering> next;
    for (const auto& s : frontier)
      for (AgentIndex a : agents)
        if (std::find(s.begin(), s.end(), a) == s.end()) {
          auto t = s;
          t.push_back(a);
          next.push_back(t);
        }
    out.insert(out.end(), next.begin(), next.end());
    frontier = std::move(next);
  }
  return out;
}

// Perfect recall read directly as sigma-field inclusions. `strict` also
// demands H_kappa in I_last for one-element kappa.
inline bool PerfectRecall(const WModel& m, int player, const ConfigurationOrdering& phi, bool strict) {
  const auto& H = m.H();
  std::size_t n = H.size();
  for (const auto& kappa : Sequences(m.player(player).agents)) {
    Mask cell = Cell(m, phi, kappa);
    auto target = Generate(Blocks(m.info(kappa.back())), n);
    if (kappa.size() == 1) {
      if (strict && !target.count(cell)) return false;
      continue;
    }
    std::vector<Mask> gens;
    for (std::size_t i = 0; i + 1 < kappa.size(); ++i) {
      for (Mask x : ActionCylinders(H, kappa[i])) gens.push_back(x);
      for (Mask x : Blocks(m.info(kappa[i]))) gens.push_back(x);
    }
    for (Mask hp : Generate(gens, n))
      if (!target.count(cell & hp)) return false;
  }
  return true;
}

inline bool PartialCausality(const WModel& m, int player, const ConfigurationOrdering& phi) {
  const auto& H = m.H();
  std::size_t n = H.size();
  const auto& own = m.player(player).agents;
  for (const auto& kappa : Sequences(own)) {
    Mask cell = Cell(m, phi, kappa);
    std::vector<Mask> gens = NatureCylinders(H);
    for (std::size_t a = 0; a < H.num_agents(); ++a) {
      auto ai = static_cast<AgentIndex>(a);
      bool mine = std::find(own.begin(), own.end(), ai) != own.end();
      bool before = std::find(kappa.begin(), kappa.end() - 1, ai) != kappa.end() - 1;
      if (!mine || before)
        for (Mask x : ActionCylinders(H, ai)) gens.push_back(x);
    }
    auto field = Generate(gens, n);
    for (Mask hp : Generate(Blocks(m.info(kappa.back())), n))
      if (!field.count(cell & hp)) return false;
  }
  return true;
}

// The pairwise violation condition: some kappa, two configurations of its
// cell in one I_last atom whose predecessors' (atom, action) tuples differ.
inline bool ReciproqViolation(const WModel& m, int player, const ConfigurationOrdering& phi) {
  const auto& H = m.H();
  for (const auto& kappa : Sequences(m.player(player).agents)) {
    if (kappa.size() < 2) continue;
    Mask cell = Cell(m, phi, kappa);
    const auto& last = m.info(kappa.back());
    for (ConfigIndex x = 0; x < H.size(); ++x)
      for (ConfigIndex y = x + 1; y < H.size(); ++y) {
        if (!((cell >> x) & 1) || !((cell >> y) & 1)) continue;
        if (last.atom_of(x) != last.atom_of(y)) continue;
        for (std::size_t i = 0; i + 1 < kappa.size(); ++i) {
          AgentIndex a = kappa[i];
          if (H.action_of(x, a) != H.action_of(y, a) || m.info(a).atom_of(x) != m.info(a).atom_of(y))
            return true;
        }
      }
  }
  return false;
}

// Every cell H_kappa is I_last(kappa)-measurable.
inline bool CellsMeasurable(const WModel& m, int player, const ConfigurationOrdering& phi) {
  for (const auto& kappa : Sequences(m.player(player).agents)) {
    Mask cell = Cell(m, phi, kappa);
    for (Mask b : Blocks(m.info(kappa.back())))
      if ((b & cell) != 0 && (b & cell) != b) return false;
  }
  return true;
}

}  // namespace wgame::oracle
