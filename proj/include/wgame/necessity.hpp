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

// Recall violations, the witness strategies built from them, and finite
// certificates that no behavioral strategy reproduces a pushforward.

#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wgame/kuhn.hpp"
#include "wgame/playability.hpp"
#include "wgame/recall.hpp"
#include "wgame/strategy.hpp"

namespace wgame {

enum class ViolationCase { kPredecessorActionDiffers, kPredecessorInformationDiffers };

inline const char* ViolationCaseName(ViolationCase c) {
  return c == ViolationCase::kPredecessorActionDiffers ? "predecessor-action-differs"
                                                       : "predecessor-information-differs";
}

// h+ and h- share a cell H_kappa and an atom of I_last(kappa) but differ in
// some predecessor's (atom, action) pair.
struct RecallViolation {
  Ordering kappa;
  ConfigIndex plus = 0;
  ConfigIndex minus = 0;
  ViolationCase kind = ViolationCase::kPredecessorActionDiffers;

  friend bool operator==(const RecallViolation&, const RecallViolation&) = default;
};

namespace internal {

// 0: no difference, 1: some predecessor action differs, 2: only atoms differ.
inline int PredecessorDifference(const WModel& m, const Ordering& kappa, ConfigIndex x,
                                 ConfigIndex y) {
  const auto& H = m.H();
  bool atoms = false;
  for (std::size_t i = 0; i + 1 < kappa.size(); ++i) {
    AgentIndex b = kappa[i];
    if (H.action_of(x, b) != H.action_of(y, b)) return 1;
    if (m.info(b).atom_of(x) != m.info(b).atom_of(y)) atoms = true;
  }
  return atoms ? 2 : 0;
}

}  // namespace internal

// Scans kappa in canonical order. In the first violating cell, a pair with a
// differing predecessor action wins over one where only information differs,
// and within each case a pair where the last agent acts differently is
// preferred; ties go to the smallest (h+, h-) with h+ < h-.
inline std::optional<RecallViolation> FindRecallViolation(const WModel& m, int player,
                                                          const ConfigurationOrdering& phi) {
  if (phi.player() != player) throw PreconditionError("ordering belongs to another player");
  const auto& H = m.H();
  for (const auto& kappa : AllOrderings(m, player)) {
    if (kappa.size() < 2) continue;
    auto cell = OrderingCell(m, phi, kappa).members();
    AgentIndex c = kappa.back();
    const Partition& I = m.info(c);
    // best[case][preferred]
    std::optional<std::pair<ConfigIndex, ConfigIndex>> best[2][2];
    for (std::size_t i = 0; i < cell.size(); ++i)
      for (std::size_t j = i + 1; j < cell.size(); ++j) {
        ConfigIndex x = cell[i], y = cell[j];
        if (I.atom_of(x) != I.atom_of(y)) continue;
        int d = internal::PredecessorDifference(m, kappa, x, y);
        if (d == 0) continue;
        int pref = H.action_of(x, c) != H.action_of(y, c) ? 1 : 0;
        auto& slot = best[d - 1][pref];
        if (!slot) slot = std::make_pair(x, y);
      }
    for (int d = 0; d < 2; ++d)
      for (int pref = 1; pref >= 0; --pref)
        if (best[d][pref]) {
          return RecallViolation{kappa, best[d][pref]->first, best[d][pref]->second,
                                 d == 0 ? ViolationCase::kPredecessorActionDiffers
                                        : ViolationCase::kPredecessorInformationDiffers};
        }
  }
  return std::nullopt;
}

struct Witness {
  NatureDistribution nu;
  StrategyProfile strategies;  // mixed, one per player
  // Case 2 only: the agent whose information differs and its switch action.
  AgentIndex switch_agent = -1;
  int switch_action = -1;
};

namespace internal {

inline PureProfile ConstantProfile(const WModel& m, const std::vector<AgentIndex>& agents,
                                   ConfigIndex h) {
  PureProfile p;
  for (AgentIndex a : agents) p.strategies.push_back(PureStrategy::Constant(m, a, m.H().action_of(h, a)));
  return p;
}

inline void CheckViolation(const WModel& m, int player, const RecallViolation& v) {
  const auto& agents = m.player(player).agents;
  if (v.kappa.size() < 2) throw PreconditionError("violation ordering must have length >= 2");
  for (AgentIndex a : v.kappa)
    if (std::find(agents.begin(), agents.end(), a) == agents.end())
      throw PreconditionError("violation ordering names an agent outside the player");
  if (v.plus >= m.H().size() || v.minus >= m.H().size())
    throw PreconditionError("violation configuration out of range");
  const Partition& I = m.info(v.kappa.back());
  if (I.atom_of(v.plus) != I.atom_of(v.minus))
    throw PreconditionError("violation configurations lie in different atoms of the last agent");
  int d = PredecessorDifference(m, v.kappa, v.plus, v.minus);
  if (d == 0) throw PreconditionError("violation configurations agree on all predecessors");
  if ((d == 1) != (v.kind == ViolationCase::kPredecessorActionDiffers))
    throw PreconditionError("violation case tag does not match the configurations");
}

}  // namespace internal

inline Witness BuildWitness(const WModel& m, int player, const RecallViolation& v) {
  internal::CheckViolation(m, player, v);
  const auto& H = m.H();
  Witness w;
  int wp = H.nature_of(v.plus), wm = H.nature_of(v.minus);
  w.nu = wp == wm ? NatureDistribution::PointMass(wp)
                  : NatureDistribution({wp, wm}, {Rational(1, 2), Rational(1, 2)});
  for (std::size_t q = 0; q < m.num_players(); ++q) {
    const auto& agents = m.player(static_cast<int>(q)).agents;
    if (static_cast<int>(q) != player || v.kind == ViolationCase::kPredecessorActionDiffers) {
      w.strategies.push_back(MixedStrategy(
          m, static_cast<int>(q),
          {{internal::ConstantProfile(m, agents, v.plus), Rational(1, 2)},
           {internal::ConstantProfile(m, agents, v.minus), Rational(1, 2)}}));
      continue;
    }
    AgentIndex c = v.kappa.back();
    AgentIndex b = -1;
    for (std::size_t i = 0; i + 1 < v.kappa.size(); ++i)
      if (m.info(v.kappa[i]).atom_of(v.plus) != m.info(v.kappa[i]).atom_of(v.minus)) {
        b = v.kappa[i];
        break;
      }
    int hb = H.action_of(v.plus, b);
    if (m.num_actions(b) < 2)
      throw PreconditionError("agent '" + H.agent_id(b) + "' needs at least two actions");
    int ubar = hb == 0 ? 1 : 0;
    w.switch_agent = b;
    w.switch_action = ubar;
    PureProfile plus = internal::ConstantProfile(m, agents, v.plus);
    PureProfile minus = plus;
    AtomId zb = m.info(b).atom_of(v.plus), zc = m.info(c).atom_of(v.plus);
    for (std::size_t i = 0; i < agents.size(); ++i) {
      AgentIndex a = agents[i];
      if (a == b) {
        auto& pc = plus.strategies[i].choice;
        auto& mc = minus.strategies[i].choice;
        for (AtomId z = 0; z < pc.size(); ++z) {
          pc[z] = z == zb ? hb : ubar;
          mc[z] = z == zb ? ubar : hb;
        }
      } else if (a == c) {
        auto& mc = minus.strategies[i].choice;
        for (AtomId z = 0; z < mc.size(); ++z)
          mc[z] = z == zc ? H.action_of(v.minus, c) : H.action_of(v.plus, c);
      }
    }
    w.strategies.push_back(MixedStrategy(
        m, player, {{std::move(plus), Rational(1, 2)}, {std::move(minus), Rational(1, 2)}}));
  }
  return w;
}

// pos[i][z]: sorted actions of the player's i-th agent seen on atom z inside
// the support of q.
using ForcedSupportMap = std::vector<std::vector<std::vector<int>>>;

inline ForcedSupportMap ForcedSupport(const WModel& m, int player, const Pushforward& q) {
  const auto& agents = m.player(player).agents;
  ForcedSupportMap pos(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) pos[i].resize(m.info(agents[i]).num_atoms());
  for (ConfigIndex h : q.support)
    for (std::size_t i = 0; i < agents.size(); ++i) {
      auto& s = pos[i][m.info(agents[i]).atom_of(h)];
      int u = m.H().action_of(h, agents[i]);
      if (std::find(s.begin(), s.end(), u) == s.end()) s.insert(std::upper_bound(s.begin(), s.end(), u), u);
    }
  return pos;
}

struct ForcedChoice {
  AgentIndex agent = 0;
  AtomId atom = 0;
  int action = 0;
  ConfigIndex source = 0;  // supported configuration that puts `action` in Pos

  friend bool operator==(const ForcedChoice&, const ForcedChoice&) = default;
};

// Any behavioral strategy of the player with pushforward equal to `target`
// plays every forced choice with positive probability; together with the
// opponents' support draw `opponent_pick` and the state `omega` this is a
// positive-probability event. Every configuration that event can produce has
// zero target mass, which is the contradiction.
struct NonEquivalenceCertificate {
  NatureDistribution nu;
  StrategyProfile strategies;
  Pushforward target;
  ForcedSupportMap pos;
  std::vector<ForcedChoice> plan;
  int omega = 0;
  std::vector<std::size_t> opponent_pick;  // support index per player; unused for `player`
  PureProfile profile;                     // full profile assembled from the plan
  ConfigIndex exhibited = 0;               // its closed-loop outcome at omega
};

namespace internal {

// Configurations in the omega slice that the opponent draw and the forced
// choices can produce.
inline std::vector<ConfigIndex> PlanOutcomes(const WModel& m, int omega,
                                             const std::vector<const PureProfile*>& opp,
                                             const std::vector<ForcedChoice>& plan) {
  const auto& H = m.H();
  std::size_t s = H.slice_size();
  std::vector<ConfigIndex> out;
  auto begin = static_cast<ConfigIndex>(static_cast<std::size_t>(omega) * s);
  for (ConfigIndex h = begin; h < begin + s; ++h) {
    bool ok = true;
    for (const auto* p : opp) {
      for (const auto& st : p->strategies)
        if (st.at(m, h) != H.action_of(h, st.agent)) {
          ok = false;
          break;
        }
      if (!ok) break;
    }
    if (!ok) continue;
    for (const auto& f : plan)
      if (m.info(f.agent).atom_of(h) == f.atom && H.action_of(h, f.agent) != f.action) {
        ok = false;
        break;
      }
    if (ok) out.push_back(h);
  }
  return out;
}

inline PureProfile AssembleProfile(const WModel& m, int player, const ForcedSupportMap& pos,
                                   const std::vector<ForcedChoice>& plan,
                                   const std::vector<const PureProfile*>& opp) {
  const auto& agents = m.player(player).agents;
  PureProfile own;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    PureStrategy st{agents[i], std::vector<int>(m.info(agents[i]).num_atoms(), 0)};
    for (AtomId z = 0; z < st.choice.size(); ++z)
      if (!pos[i][z].empty()) st.choice[z] = pos[i][z].front();
    for (const auto& f : plan)
      if (f.agent == agents[i]) st.choice[f.atom] = f.action;
    own.strategies.push_back(std::move(st));
  }
  std::vector<const PureProfile*> parts = opp;
  parts.push_back(&own);
  return CombineProfiles(parts);
}

}  // namespace internal

// Searches forced plans that take each agent's choice from one of two
// supported configurations h1, h2 (agent by agent), over every positive state
// and every opponent support draw, in canonical order.
inline std::optional<NonEquivalenceCertificate> CertifyNonequivalence(
    const WModel& m, int player, const NatureDistribution& nu, const StrategyProfile& strategies,
    const ExecOptions& exec = {}) {
  const auto& H = m.H();
  auto mixed = internal::AllMixed(m, strategies);
  Pushforward target = ComputePushforward(m, nu, strategies, exec);
  ForcedSupportMap pos = ForcedSupport(m, player, target);
  const auto& agents = m.player(player).agents;
  if (agents.size() > 20) throw PreconditionError("player has too many agents");
  std::size_t combos = 1;
  for (std::size_t q = 0; q < mixed.size(); ++q)
    if (static_cast<int>(q) != player) combos *= mixed[q].size();
  const auto& supp = target.support;
  for (std::size_t wi = 0; wi < nu.size(); ++wi) {
    if (nu.weights()[wi].is_zero()) continue;
    int omega = nu.carrier()[wi];
    for (std::size_t c = 0; c < combos; ++c) {
      std::vector<std::size_t> pick(mixed.size(), 0);
      std::size_t rest = c;
      for (std::size_t q = mixed.size(); q-- > 0;) {
        if (static_cast<int>(q) == player) continue;
        pick[q] = rest % mixed[q].size();
        rest /= mixed[q].size();
      }
      std::vector<const PureProfile*> opp;
      for (std::size_t q = 0; q < mixed.size(); ++q)
        if (static_cast<int>(q) != player) opp.push_back(&mixed[q].support()[pick[q]]);
      auto free_outcomes = internal::PlanOutcomes(m, omega, opp, {});
      for (std::size_t i = 0; i < supp.size(); ++i)
        for (std::size_t j = i; j < supp.size(); ++j) {
          std::size_t masks = i == j ? 1 : (std::size_t{1} << agents.size());
          for (std::size_t mask = 0; mask < masks; ++mask) {
            std::vector<ForcedChoice> plan;
            for (std::size_t k = 0; k < agents.size(); ++k) {
              ConfigIndex src = (mask >> k & 1u) ? supp[j] : supp[i];
              plan.push_back({agents[k], m.info(agents[k]).atom_of(src),
                              H.action_of(src, agents[k]), src});
            }
            bool valid = true;
            bool any = false;
            for (ConfigIndex h : free_outcomes) {
              bool hit = true;
              for (const auto& f : plan)
                if (m.info(f.agent).atom_of(h) == f.atom && H.action_of(h, f.agent) != f.action) {
                  hit = false;
                  break;
                }
              if (!hit) continue;
              any = true;
              if (!target.at(h).is_zero()) {
                valid = false;
                break;
              }
            }
            if (!valid || !any) continue;
            NonEquivalenceCertificate cert;
            cert.nu = nu;
            cert.strategies = strategies;
            cert.target = target;
            cert.pos = pos;
            cert.plan = std::move(plan);
            cert.omega = omega;
            cert.opponent_pick = pick;
            cert.profile = internal::AssembleProfile(m, player, pos, cert.plan, opp);
            cert.exhibited = SolveClosedLoop(m, cert.profile, omega);
            return cert;
          }
        }
    }
  }
  return std::nullopt;
}

// Re-derives every claim of the certificate. Returns an empty string when it
// verifies, otherwise the first failed check.
inline std::string VerifyCertificate(const WModel& m, int player,
                                     const NonEquivalenceCertificate& cert) {
  const auto& H = m.H();
  auto mixed = internal::AllMixed(m, cert.strategies);
  Pushforward target = ComputePushforward(m, cert.nu, cert.strategies);
  if (!DistributionsEqual(target, cert.target)) return "target pushforward mismatch";
  if (target.total() != Rational(1)) return "target mass is not one";
  auto pos = ForcedSupport(m, player, target);
  if (pos != cert.pos) return "forced support mismatch";
  const auto& agents = m.player(player).agents;
  if (cert.plan.size() != agents.size()) return "plan must force one choice per agent";
  for (std::size_t k = 0; k < agents.size(); ++k) {
    const auto& f = cert.plan[k];
    if (f.agent != agents[k]) return "plan agents out of order";
    if (f.atom >= m.info(f.agent).num_atoms()) return "plan atom out of range";
    const auto& s = pos[k][f.atom];
    if (std::find(s.begin(), s.end(), f.action) == s.end())
      return "forced choice of '" + H.agent_id(f.agent) + "' is not in its forced support";
    if (target.at(f.source).is_zero() || m.info(f.agent).atom_of(f.source) != f.atom ||
        H.action_of(f.source, f.agent) != f.action)
      return "forced choice source does not witness the support";
  }
  if (cert.nu.weight_of(cert.omega).is_zero()) return "state has zero belief";
  if (cert.opponent_pick.size() != mixed.size()) return "opponent draw has wrong size";
  std::vector<const PureProfile*> opp;
  for (std::size_t q = 0; q < mixed.size(); ++q) {
    if (static_cast<int>(q) == player) continue;
    if (cert.opponent_pick[q] >= mixed[q].size()) return "opponent draw outside support";
    opp.push_back(&mixed[q].support()[cert.opponent_pick[q]]);
  }
  for (const auto* p : opp)
    for (const auto& st : p->strategies)
      if (cert.profile.of(st.agent) != st) return "profile disagrees with the opponent draw";
  for (const auto& f : cert.plan)
    if (cert.profile.of(f.agent).choice[f.atom] != f.action)
      return "profile disagrees with the plan";
  auto sols = ClosedLoopSolutions(m, cert.profile, cert.omega);
  if (sols.size() != 1 || sols.front() != cert.exhibited)
    return "exhibited configuration is not the closed-loop outcome";
  if (!target.at(cert.exhibited).is_zero()) return "exhibited configuration has positive mass";
  for (ConfigIndex h : internal::PlanOutcomes(m, cert.omega, opp, cert.plan))
    if (!target.at(h).is_zero())
      return "plan can produce " + H.describe(h) + " which has positive mass";
  return {};
}

struct NecessityResult {
  std::optional<RecallViolation> violation;
  std::optional<Witness> witness;
  std::optional<NonEquivalenceCertificate> certificate;
};

inline NecessityResult RunNecessity(const WModel& m, int player, const ConfigurationOrdering& phi,
                                    const ExecOptions& exec = {}) {
  NecessityResult r;
  r.violation = FindRecallViolation(m, player, phi);
  if (!r.violation) return r;
  r.witness = BuildWitness(m, player, *r.violation);
  r.certificate = CertifyNonequivalence(m, player, r.witness->nu, r.witness->strategies, exec);
  return r;
}

}  // namespace wgame
