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

// JSON model and strategy files.
//
// Model:
//   {"nature": {"states": [...]},
//    "agents": [{"id": "a", "actions": [...]}, ...],
//    "players": {"p": ["a", ...]},
//    "information": {"a": {"observes": ["nature", "b"]} | {"atoms": [[cfg...]...]}}}
// A configuration is {"nature": label, "<agent>": action, ...}; "nature" may
// be omitted when there is a single state. Rationals are strings "p/q".

#pragma once

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "json.hpp"
#include "wgame/kuhn.hpp"
#include "wgame/model.hpp"
#include "wgame/recall.hpp"
#include "wgame/strategy.hpp"

namespace wgame {
namespace io {

using Json = nlohmann::ordered_json;

inline std::string ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path, "cannot read file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Json ParseJson(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError("", std::string("invalid JSON: ") + e.what());
  }
}

namespace internal {

inline const Json& Field(const Json& j, const std::string& key, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw InputError(path, "missing key '" + key + "'");
  return *it;
}

inline std::string Str(const Json& j, const std::string& path) {
  if (!j.is_string()) throw InputError(path, "expected a string");
  return j.get<std::string>();
}

inline std::vector<std::string> StrList(const Json& j, const std::string& path) {
  if (!j.is_array()) throw InputError(path, "expected an array");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(Str(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

inline void OnlyKeys(const Json& j, const std::vector<std::string>& keys, const std::string& path) {
  if (!j.is_object()) throw InputError(path.empty() ? "(root)" : path, "expected an object");
  for (auto it = j.begin(); it != j.end(); ++it)
    if (std::find(keys.begin(), keys.end(), it.key()) == keys.end())
      throw InputError(path, "unknown key '" + it.key() + "'");
}

inline std::string Join(const std::string& path, const std::string& key) {
  return path.empty() ? key : path + "." + key;
}

}  // namespace internal

inline Rational ParseRational(const Json& j, const std::string& path) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (!j.is_string()) throw InputError(path, "expected a rational string \"p/q\"");
  auto r = Rational::Parse(j.get<std::string>());
  if (!r) throw InputError(path, "malformed rational '" + j.get<std::string>() + "'");
  return *r;
}

inline Json RationalJson(const Rational& r) { return r.ToString(); }

inline Json ConfigJson(const ConfigurationSpace& H, ConfigIndex h) {
  Json j = Json::object();
  if (H.nature().size() > 1) j["nature"] = H.nature().label(H.nature_of(h));
  for (std::size_t a = 0; a < H.num_agents(); ++a) {
    auto ai = static_cast<AgentIndex>(a);
    j[H.agent_id(ai)] = H.actions(ai).label(H.action_of(h, ai));
  }
  return j;
}

inline ConfigIndex ParseConfig(const ConfigurationSpace& H, const Json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "configuration must be an object");
  Configuration cfg;
  cfg.actions.assign(H.num_agents(), -1);
  for (auto it = j.begin(); it != j.end(); ++it) {
    std::string kp = internal::Join(path, it.key());
    std::string label = internal::Str(it.value(), kp);
    if (it.key() == "nature") {
      cfg.nature = H.nature().index_of(label);
      if (cfg.nature < 0) throw InputError(kp, "unknown nature state '" + label + "'");
      continue;
    }
    int a = H.agent_index(it.key());
    if (a < 0) throw InputError(path, "unknown agent '" + it.key() + "'");
    int u = H.actions(a).index_of(label);
    if (u < 0) throw InputError(kp, "unknown action '" + label + "'");
    cfg.actions[static_cast<std::size_t>(a)] = u;
  }
  if (!j.contains("nature") && H.nature().size() > 1)
    throw InputError(path, "missing key 'nature'");
  for (std::size_t a = 0; a < H.num_agents(); ++a)
    if (cfg.actions[a] < 0)
      throw InputError(path, "missing action of agent '" +
                                 H.agent_id(static_cast<AgentIndex>(a)) + "'");
  return H.encode(cfg);
}

inline Json ConfigListJson(const ConfigurationSpace& H, const std::vector<ConfigIndex>& hs) {
  Json j = Json::array();
  for (ConfigIndex h : hs) j.push_back(ConfigJson(H, h));
  return j;
}

inline std::vector<AgentIndex> ParseAgentList(const ConfigurationSpace& H, const Json& j,
                                              const std::string& path) {
  auto ids = internal::StrList(j, path);
  std::vector<AgentIndex> out;
  for (std::size_t i = 0; i < ids.size(); ++i) {
    int a = H.agent_index(ids[i]);
    if (a < 0)
      throw InputError(path + "[" + std::to_string(i) + "]", "unknown agent '" + ids[i] + "'");
    out.push_back(a);
  }
  return out;
}

// Model parsing ------------------------------------------------------------

inline WModel ParseModel(const Json& j, std::size_t cap = kDefaultSpaceCap) {
  if (!j.is_object()) throw InputError("", "model must be a JSON object");
  internal::OnlyKeys(j, {"nature", "agents", "players", "information"}, "");
  std::vector<std::string> states{"omega"};
  if (j.contains("nature")) {
    const Json& n = j["nature"];
    internal::OnlyKeys(n, {"states"}, "nature");
    states = internal::StrList(internal::Field(n, "states", "nature"), "nature.states");
  }
  const Json& ja = internal::Field(j, "agents", "");
  if (!ja.is_array()) throw InputError("agents", "expected an array");
  std::vector<std::string> ids;
  std::vector<FiniteSet> acts;
  for (std::size_t i = 0; i < ja.size(); ++i) {
    std::string p = "agents[" + std::to_string(i) + "]";
    if (!ja[i].is_object()) throw InputError(p, "expected an object");
    internal::OnlyKeys(ja[i], {"id", "actions"}, p);
    ids.push_back(internal::Str(internal::Field(ja[i], "id", p), p + ".id"));
    auto labels = internal::StrList(internal::Field(ja[i], "actions", p), p + ".actions");
    try {
      acts.emplace_back(std::move(labels));
    } catch (const InputError& e) {
      throw InputError(p + ".actions", e.what());
    }
  }
  SpacePtr space;
  try {
    FiniteSet nature_set(states);
    space = std::make_shared<const ConfigurationSpace>(std::move(nature_set), ids, acts, cap);
  } catch (const InputError& e) {
    if (!e.path().empty()) throw;
    throw InputError("nature.states", e.what());
  }
  const auto& H = *space;

  const Json& jp = internal::Field(j, "players", "");
  if (!jp.is_object()) throw InputError("players", "expected an object");
  std::vector<Player> players;
  for (auto it = jp.begin(); it != jp.end(); ++it)
    players.push_back({it.key(), ParseAgentList(H, it.value(), "players." + it.key())});

  const Json& ji = internal::Field(j, "information", "");
  if (!ji.is_object()) throw InputError("information", "expected an object");
  std::vector<std::optional<Partition>> info(H.num_agents());
  for (auto it = ji.begin(); it != ji.end(); ++it) {
    std::string p = "information." + it.key();
    int a = H.agent_index(it.key());
    if (a < 0) throw InputError(p, "unknown agent '" + it.key() + "'");
    const Json& entry = it.value();
    if (!entry.is_object()) throw InputError(p, "expected an object");
    internal::OnlyKeys(entry, {"observes", "atoms"}, p);
    if (entry.contains("observes") == entry.contains("atoms"))
      throw InputError(p, "give exactly one of 'observes' or 'atoms'");
    if (entry.contains("observes")) {
      auto coords = internal::StrList(entry["observes"], p + ".observes");
      CoordinateSet cs;
      for (std::size_t k = 0; k < coords.size(); ++k) {
        std::string cp = p + ".observes[" + std::to_string(k) + "]";
        if (coords[k] == "nature") {
          cs.include_nature = true;
          continue;
        }
        int b = H.agent_index(coords[k]);
        if (b < 0) throw InputError(cp, "unknown coordinate '" + coords[k] + "'");
        cs.agents.push_back(b);
      }
      std::sort(cs.agents.begin(), cs.agents.end());
      cs.agents.erase(std::unique(cs.agents.begin(), cs.agents.end()), cs.agents.end());
      info[static_cast<std::size_t>(a)] = CylinderPartition(space, cs);
    } else {
      const Json& atoms = entry["atoms"];
      if (!atoms.is_array()) throw InputError(p + ".atoms", "expected an array");
      std::vector<std::vector<ConfigIndex>> lists;
      for (std::size_t k = 0; k < atoms.size(); ++k) {
        std::string ap = p + ".atoms[" + std::to_string(k) + "]";
        if (!atoms[k].is_array()) throw InputError(ap, "expected an array of configurations");
        std::vector<ConfigIndex> atom;
        for (std::size_t r = 0; r < atoms[k].size(); ++r)
          atom.push_back(ParseConfig(H, atoms[k][r], ap + "[" + std::to_string(r) + "]"));
        lists.push_back(std::move(atom));
      }
      try {
        info[static_cast<std::size_t>(a)] = Partition::FromAtoms(space, lists);
      } catch (const InputError& e) {
        throw InputError(p + "." + e.path(), e.what() + e.path().size() + 2);
      }
    }
  }
  std::vector<Partition> fields;
  for (std::size_t a = 0; a < H.num_agents(); ++a) {
    if (!info[a])
      throw InputError("information", "missing information for agent '" +
                                          H.agent_id(static_cast<AgentIndex>(a)) + "'");
    fields.push_back(*info[a]);
  }
  return WModel(space, std::move(players), std::move(fields));
}

inline WModel ParseModelText(const std::string& text, std::size_t cap = kDefaultSpaceCap) {
  return ParseModel(ParseJson(text), cap);
}

// Coordinates a cylinder field over them would need; nullopt when the
// partition is not a cylinder.
inline std::optional<CoordinateSet> AsCylinder(const WModel& m, const Partition& p) {
  const auto& H = m.H();
  CoordinateSet cs;
  for (ConfigIndex h = 0; h < H.size(); ++h) {
    if (!cs.include_nature && H.nature().size() > 1) {
      std::size_t s = H.slice_size();
      ConfigIndex g = static_cast<ConfigIndex>((h + s) % H.size());
      if (p.atom_of(h) != p.atom_of(g)) cs.include_nature = true;
    }
  }
  for (std::size_t a = 0; a < H.num_agents(); ++a) {
    auto ai = static_cast<AgentIndex>(a);
    int k = static_cast<int>(H.actions(ai).size());
    if (k < 2) continue;
    bool depends = false;
    for (ConfigIndex h = 0; h < H.size() && !depends; ++h)
      if (p.atom_of(h) != p.atom_of(H.with_action(h, ai, (H.action_of(h, ai) + 1) % k)))
        depends = true;
    if (depends) cs.agents.push_back(ai);
  }
  if (CylinderPartition(m.space(), cs) == p) return cs;
  return std::nullopt;
}

inline Json ModelJson(const WModel& m) {
  const auto& H = m.H();
  Json j;
  j["nature"]["states"] = H.nature().labels();
  j["agents"] = Json::array();
  for (std::size_t a = 0; a < H.num_agents(); ++a) {
    auto ai = static_cast<AgentIndex>(a);
    j["agents"].push_back({{"id", H.agent_id(ai)}, {"actions", H.actions(ai).labels()}});
  }
  j["players"] = Json::object();
  for (const auto& p : m.players()) {
    Json ids = Json::array();
    for (AgentIndex a : p.agents) ids.push_back(H.agent_id(a));
    j["players"][p.name] = ids;
  }
  j["information"] = Json::object();
  for (std::size_t a = 0; a < H.num_agents(); ++a) {
    auto ai = static_cast<AgentIndex>(a);
    const Partition& I = m.info(ai);
    Json entry;
    if (auto cs = AsCylinder(m, I)) {
      Json obs = Json::array();
      if (cs->include_nature) obs.push_back("nature");
      for (AgentIndex b : cs->agents) obs.push_back(H.agent_id(b));
      entry["observes"] = obs;
    } else {
      entry["atoms"] = Json::array();
      for (const auto& atom : I.atoms()) entry["atoms"].push_back(ConfigListJson(H, atom));
    }
    j["information"][H.agent_id(ai)] = entry;
  }
  return j;
}

inline std::string SerializeModel(const WModel& m) { return ModelJson(m).dump(2) + "\n"; }

// FNV-1a over the canonical compact serialization.
inline std::string ModelDigest(const WModel& m) {
  std::string s = ModelJson(m).dump();
  std::uint64_t x = 1469598103934665603ull;
  for (unsigned char c : s) {
    x ^= c;
    x *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(x));
  return buf;
}

// Strategies ---------------------------------------------------------------

inline PureStrategy ParsePureStrategy(const WModel& m, AgentIndex a, const Json& j,
                                      const std::string& path) {
  const auto& U = m.H().actions(a);
  std::size_t atoms = m.info(a).num_atoms();
  auto action = [&](const Json& x, const std::string& p) {
    std::string l = internal::Str(x, p);
    int u = U.index_of(l);
    if (u < 0) throw InputError(p, "unknown action '" + l + "'");
    return u;
  };
  if (j.is_string()) return {a, std::vector<int>(atoms, action(j, path))};
  if (!j.is_array())
    throw InputError(path, "expected an action or one action per atom");
  if (j.size() != atoms)
    throw InputError(path, "expected " + std::to_string(atoms) + " atoms, got " +
                               std::to_string(j.size()));
  PureStrategy s{a, {}};
  for (std::size_t z = 0; z < atoms; ++z)
    s.choice.push_back(action(j[z], path + "[" + std::to_string(z) + "]"));
  return s;
}

inline Json PureStrategyJson(const WModel& m, const PureStrategy& s) {
  const auto& U = m.H().actions(s.agent);
  bool constant = std::all_of(s.choice.begin(), s.choice.end(),
                              [&](int u) { return u == s.choice.front(); });
  if (constant && !s.choice.empty()) return U.label(s.choice.front());
  Json j = Json::array();
  for (int u : s.choice) j.push_back(U.label(u));
  return j;
}

inline PureProfile ParseProfileObject(const WModel& m, const Json& j, const std::string& path) {
  if (!j.is_object()) throw InputError(path, "expected an object agent -> strategy");
  PureProfile p;
  for (auto it = j.begin(); it != j.end(); ++it) {
    int a = m.H().agent_index(it.key());
    if (a < 0) throw InputError(path, "unknown agent '" + it.key() + "'");
    p.strategies.push_back(ParsePureStrategy(m, a, it.value(), internal::Join(path, it.key())));
  }
  p.normalize();
  for (std::size_t i = 1; i < p.strategies.size(); ++i)
    if (p.strategies[i].agent == p.strategies[i - 1].agent)
      throw InputError(path, "duplicate agent");
  return p;
}

inline Json ProfileObjectJson(const WModel& m, const PureProfile& p) {
  Json j = Json::object();
  for (const auto& s : p.strategies) j[m.H().agent_id(s.agent)] = PureStrategyJson(m, s);
  return j;
}

using ParsedStrategy = std::variant<PureProfile, MixedStrategy, BehavioralStrategy>;

inline int ParsePlayer(const WModel& m, const Json& j) {
  std::string name = internal::Str(internal::Field(j, "player", ""), "player");
  int p = m.player_index(name);
  if (p < 0) throw InputError("player", "unknown player '" + name + "'");
  return p;
}

inline std::string Kind(const Json& j) {
  if (!j.is_object()) throw InputError("", "expected a JSON object");
  return internal::Str(internal::Field(j, "kind", ""), "kind");
}

inline MixedStrategy ParseMixed(const WModel& m, const Json& j) {
  internal::OnlyKeys(j, {"kind", "player", "support"}, "");
  int player = ParsePlayer(m, j);
  const Json& sup = internal::Field(j, "support", "");
  if (!sup.is_array()) throw InputError("support", "expected an array");
  std::vector<std::pair<PureProfile, Rational>> entries;
  for (std::size_t i = 0; i < sup.size(); ++i) {
    std::string p = "support[" + std::to_string(i) + "]";
    internal::OnlyKeys(sup[i], {"weight", "profile"}, p);
    Rational w = ParseRational(internal::Field(sup[i], "weight", p), p + ".weight");
    if (!w.is_positive()) throw InputError(p + ".weight", "support weights must be positive");
    entries.emplace_back(ParseProfileObject(m, internal::Field(sup[i], "profile", p), p + ".profile"),
                         w);
  }
  return MixedStrategy(m, player, std::move(entries));
}

inline BehavioralStrategy ParseBehavioral(const WModel& m, const Json& j) {
  internal::OnlyKeys(j, {"kind", "player", "kernels"}, "");
  int player = ParsePlayer(m, j);
  const Json& ks = internal::Field(j, "kernels", "");
  if (!ks.is_object()) throw InputError("kernels", "expected an object");
  const auto& agents = m.player(player).agents;
  for (auto it = ks.begin(); it != ks.end(); ++it) {
    int a = m.H().agent_index(it.key());
    if (a < 0 || std::find(agents.begin(), agents.end(), a) == agents.end())
      throw InputError("kernels." + it.key(), "not an agent of player '" +
                                                  m.player(player).name + "'");
  }
  std::vector<std::vector<BehavioralStrategy::Kernel>> kernels;
  for (AgentIndex a : agents) {
    const std::string& id = m.H().agent_id(a);
    std::string p = "kernels." + id;
    if (!ks.contains(id)) throw InputError("kernels", "missing agent '" + id + "'");
    const auto& U = m.H().actions(a);
    auto dist = [&](const Json& d, const std::string& dp) {
      if (!d.is_object()) throw InputError(dp, "expected an object action -> weight");
      BehavioralStrategy::Kernel k(U.size());
      for (auto it = d.begin(); it != d.end(); ++it) {
        int u = U.index_of(it.key());
        if (u < 0) throw InputError(dp, "unknown action '" + it.key() + "'");
        k[static_cast<std::size_t>(u)] = ParseRational(it.value(), internal::Join(dp, it.key()));
      }
      return k;
    };
    std::size_t atoms = m.info(a).num_atoms();
    const Json& v = ks[id];
    std::vector<BehavioralStrategy::Kernel> fam;
    if (v.is_object()) {
      fam.assign(atoms, dist(v, p));
    } else if (v.is_array()) {
      if (v.size() != atoms)
        throw InputError(p, "expected " + std::to_string(atoms) + " atoms, got " +
                                std::to_string(v.size()));
      for (std::size_t z = 0; z < atoms; ++z)
        fam.push_back(dist(v[z], p + "[" + std::to_string(z) + "]"));
    } else {
      throw InputError(p, "expected one distribution per atom");
    }
    kernels.push_back(std::move(fam));
  }
  return BehavioralStrategy(m, player, std::move(kernels));
}

inline ParsedStrategy ParseStrategy(const WModel& m, const Json& j) {
  std::string kind = Kind(j);
  if (kind == "pure") {
    internal::OnlyKeys(j, {"kind", "profile"}, "");
    return ParseProfileObject(m, internal::Field(j, "profile", ""), "profile");
  }
  if (kind == "mixed") return ParseMixed(m, j);
  if (kind == "behavioral") return ParseBehavioral(m, j);
  throw InputError("kind", "unknown strategy kind '" + kind + "'");
}

inline ParsedStrategy ParseStrategyText(const WModel& m, const std::string& text) {
  return ParseStrategy(m, ParseJson(text));
}

inline Json PureProfileJson(const WModel& m, const PureProfile& p) {
  Json j;
  j["kind"] = "pure";
  j["profile"] = ProfileObjectJson(m, p);
  return j;
}

inline Json MixedJson(const WModel& m, const MixedStrategy& s) {
  Json j;
  j["kind"] = "mixed";
  j["player"] = m.player(s.player()).name;
  j["support"] = Json::array();
  for (std::size_t i = 0; i < s.size(); ++i)
    j["support"].push_back(
        {{"weight", RationalJson(s.weights()[i])}, {"profile", ProfileObjectJson(m, s.support()[i])}});
  return j;
}

inline Json BehavioralJson(const WModel& m, const BehavioralStrategy& b) {
  Json j;
  j["kind"] = "behavioral";
  j["player"] = m.player(b.player()).name;
  j["kernels"] = Json::object();
  for (std::size_t i = 0; i < b.agents().size(); ++i) {
    AgentIndex a = b.agents()[i];
    const auto& U = m.H().actions(a);
    Json fam = Json::array();
    for (const auto& k : b.kernels()[i]) {
      Json d = Json::object();
      for (std::size_t u = 0; u < k.size(); ++u)
        if (!k[u].is_zero()) d[U.label(static_cast<int>(u))] = RationalJson(k[u]);
      fam.push_back(d);
    }
    j["kernels"][m.H().agent_id(a)] = fam;
  }
  return j;
}

inline Json StrategyJson(const WModel& m, const ParsedStrategy& s) {
  if (const auto* p = std::get_if<PureProfile>(&s)) return PureProfileJson(m, *p);
  if (const auto* x = std::get_if<MixedStrategy>(&s)) return MixedJson(m, *x);
  return BehavioralJson(m, std::get<BehavioralStrategy>(s));
}

inline Json PlayerStrategyJson(const WModel& m, const PlayerStrategy& s) {
  if (const auto* x = std::get_if<MixedStrategy>(&s)) return MixedJson(m, *x);
  return BehavioralJson(m, std::get<BehavioralStrategy>(s));
}

// Nature beliefs -------------------------------------------------------------

inline NatureDistribution ParseNature(const WModel& m, const Json& j) {
  if (Kind(j) != "nature") throw InputError("kind", "expected kind 'nature'");
  internal::OnlyKeys(j, {"kind", "distribution"}, "");
  const Json& d = internal::Field(j, "distribution", "");
  if (!d.is_object()) throw InputError("distribution", "expected an object state -> weight");
  std::vector<int> car;
  std::vector<Rational> w;
  for (auto it = d.begin(); it != d.end(); ++it) {
    int s = m.H().nature().index_of(it.key());
    if (s < 0) throw InputError("distribution", "unknown nature state '" + it.key() + "'");
    car.push_back(s);
    w.push_back(ParseRational(it.value(), "distribution." + it.key()));
  }
  try {
    return NatureDistribution(std::move(car), std::move(w));
  } catch (const InputError& e) {
    throw InputError("distribution", e.what());
  }
}

inline Json NatureJson(const WModel& m, const NatureDistribution& nu) {
  std::vector<std::size_t> idx(nu.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(),
            [&](std::size_t x, std::size_t y) { return nu.carrier()[x] < nu.carrier()[y]; });
  Json j;
  j["kind"] = "nature";
  j["distribution"] = Json::object();
  for (std::size_t i : idx)
    j["distribution"][m.H().nature().label(nu.carrier()[i])] = RationalJson(nu.weights()[i]);
  return j;
}

// Configuration-orderings ----------------------------------------------------

inline Ordering ParseOrderingList(const WModel& m, const Json& j, const std::string& path) {
  return ParseAgentList(m.H(), j, path);
}

inline Json OrderingListJson(const WModel& m, const Ordering& o) {
  Json j = Json::array();
  for (AgentIndex a : o) j.push_back(m.H().agent_id(a));
  return j;
}

// {"kind": "ordering", "player": p, "constant": [...]} or
// {"kind": "ordering", "player": p, "default": [...]?,
//  "cases": [{"order": [...], "configurations": [cfg...]}]}
inline ConfigurationOrdering ParseOrdering(const WModel& m, const Json& j) {
  if (Kind(j) != "ordering") throw InputError("kind", "expected kind 'ordering'");
  internal::OnlyKeys(j, {"kind", "player", "constant", "default", "cases"}, "");
  int player = ParsePlayer(m, j);
  if (j.contains("constant")) {
    if (j.contains("cases") || j.contains("default"))
      throw InputError("constant", "'constant' excludes 'cases' and 'default'");
    return ConfigurationOrdering::Constant(m, player,
                                           ParseOrderingList(m, j["constant"], "constant"));
  }
  std::vector<std::optional<Ordering>> per(m.H().size());
  if (j.contains("default")) {
    Ordering d = ParseOrderingList(m, j["default"], "default");
    for (auto& x : per) x = d;
  }
  std::vector<bool> set_by_case(m.H().size(), false);
  if (j.contains("cases")) {
    const Json& cs = j["cases"];
    if (!cs.is_array()) throw InputError("cases", "expected an array");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      std::string p = "cases[" + std::to_string(i) + "]";
      internal::OnlyKeys(cs[i], {"order", "configurations"}, p);
      Ordering o = ParseOrderingList(m, internal::Field(cs[i], "order", p), p + ".order");
      const Json& hs = internal::Field(cs[i], "configurations", p);
      if (!hs.is_array()) throw InputError(p + ".configurations", "expected an array");
      for (std::size_t k = 0; k < hs.size(); ++k) {
        std::string hp = p + ".configurations[" + std::to_string(k) + "]";
        ConfigIndex h = ParseConfig(m.H(), hs[k], hp);
        if (set_by_case[h]) throw InputError(hp, "configuration assigned twice");
        set_by_case[h] = true;
        per[h] = o;
      }
    }
  }
  std::vector<Ordering> orders;
  for (std::size_t h = 0; h < per.size(); ++h) {
    if (!per[h])
      throw InputError("cases", "no ordering for configuration " +
                                    m.H().describe(static_cast<ConfigIndex>(h)));
    orders.push_back(*per[h]);
  }
  try {
    return ConfigurationOrdering(m, player, orders);
  } catch (const InputError& e) {
    throw InputError("cases", e.what() + e.path().size() + 2);
  }
}

inline Json OrderingJson(const WModel& m, const ConfigurationOrdering& phi) {
  Json j;
  j["kind"] = "ordering";
  j["player"] = m.player(phi.player()).name;
  if (phi.is_constant()) {
    j["constant"] = OrderingListJson(m, phi.orders().front());
    return j;
  }
  j["cases"] = Json::array();
  for (std::uint32_t id = 0; id < phi.orders().size(); ++id) {
    std::vector<ConfigIndex> hs;
    for (ConfigIndex h = 0; h < m.H().size(); ++h)
      if (phi.order_id(h) == id) hs.push_back(h);
    j["cases"].push_back(
        {{"order", OrderingListJson(m, phi.orders()[id])}, {"configurations", ConfigListJson(m.H(), hs)}});
  }
  return j;
}

inline Json PushforwardJson(const WModel& m, const Pushforward& q) {
  Json j = Json::array();
  for (std::size_t i = 0; i < q.support.size(); ++i)
    j.push_back({{"configuration", ConfigJson(m.H(), q.support[i])},
                 {"weight", RationalJson(q.weights[i])}});
  return j;
}

}  // namespace io
}  // namespace wgame
