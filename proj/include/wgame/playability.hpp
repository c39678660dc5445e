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

// Closed-loop equations h_a = lambda_a(h) and playability.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wgame/model.hpp"
#include "wgame/parallel.hpp"
#include "wgame/strategy.hpp"

namespace wgame {

inline constexpr std::size_t kDefaultPairCap = 20'000'000'000ull;

namespace internal {

inline void CheckFullProfile(const WModel& m, const PureProfile& p) {
  if (p.strategies.size() != m.num_agents())
    throw PreconditionError("profile must assign a strategy to every agent");
  for (std::size_t a = 0; a < m.num_agents(); ++a)
    if (p.strategies[a].agent != static_cast<AgentIndex>(a) || !ValidatePure(m, p.strategies[a]))
      throw PreconditionError("invalid strategy for agent '" +
                              m.H().agent_id(static_cast<AgentIndex>(a)) + "'");
}

inline bool IsFixedPoint(const WModel& m, const PureProfile& p, ConfigIndex h) {
  const auto& H = m.H();
  for (std::size_t a = 0; a < m.num_agents(); ++a) {
    auto ai = static_cast<AgentIndex>(a);
    if (p.strategies[a].choice[m.info(ai).atom_of(h)] != H.action_of(h, ai)) return false;
  }
  return true;
}

}  // namespace internal

// All configurations (omega, u) with u_a = lambda_a(omega, u) for every a.
inline std::vector<ConfigIndex> ClosedLoopSolutions(const WModel& m, const PureProfile& profile,
                                                    int omega) {
  internal::CheckFullProfile(m, profile);
  std::vector<ConfigIndex> out;
  std::size_t s = m.H().slice_size();
  auto begin = static_cast<ConfigIndex>(static_cast<std::size_t>(omega) * s);
  for (ConfigIndex h = begin; h < begin + s; ++h)
    if (internal::IsFixedPoint(m, profile, h)) out.push_back(h);
  return out;
}

// Unique solution at omega, or SolveError.
inline ConfigIndex SolveClosedLoop(const WModel& m, const PureProfile& profile, int omega) {
  auto sols = ClosedLoopSolutions(m, profile, omega);
  if (sols.size() != 1)
    throw SolveError(omega, sols.size(),
                     "closed-loop equations have " + std::to_string(sols.size()) +
                         " solutions at nature state '" + m.H().nature().label(omega) + "'");
  return sols.front();
}

struct PlayabilityWitness {
  PureProfile profile;
  int nature = 0;
  std::vector<ConfigIndex> solutions;
};

struct PlayabilityReport {
  bool playable = true;
  std::optional<PlayabilityWitness> witness;
};

// Every configuration is a fixed point of exactly prod_a |U_a|^(atoms_a - 1)
// profiles, so per state of Nature the solution counts over all profiles sum to
// the number of profiles. Hence the model is playable iff no profile has two
// solutions, iff every pair h != h' in one Nature slice has an agent that sees
// them in one atom but acts differently.
inline PlayabilityReport CheckPlayability(const WModel& m, const ExecOptions& exec = {},
                                          std::size_t pair_cap = kDefaultPairCap) {
  const auto& H = m.H();
  std::size_t s = H.slice_size();
  std::size_t n_nat = H.nature().size();
  if (s != 0 && (s - 1) / 2 > pair_cap / s / n_nat)
    throw CapExceeded("playability check exceeds cap of " + std::to_string(pair_cap) + " pairs");
  std::size_t n = m.num_agents();
  auto compatible = [&](ConfigIndex h, ConfigIndex g) {
    for (std::size_t a = 0; a < n; ++a) {
      auto ai = static_cast<AgentIndex>(a);
      const auto& I = m.info(ai);
      if (I.atom_of(h) == I.atom_of(g) && H.action_of(h, ai) != H.action_of(g, ai)) return false;
    }
    return true;
  };
  using Hit = std::optional<std::pair<ConfigIndex, ConfigIndex>>;
  auto hits = ParallelChunks<Hit>(H.size(), exec, [&](std::size_t b, std::size_t e) -> Hit {
    for (std::size_t hi = b; hi < e; ++hi) {
      auto h = static_cast<ConfigIndex>(hi);
      std::size_t end = (hi / s + 1) * s;
      for (std::size_t gi = hi + 1; gi < end; ++gi)
        if (compatible(h, static_cast<ConfigIndex>(gi)))
          return std::make_pair(h, static_cast<ConfigIndex>(gi));
    }
    return std::nullopt;
  });
  for (const auto& hit : hits) {
    if (!hit) continue;
    auto [h, g] = *hit;
    PlayabilityWitness w;
    w.nature = H.nature_of(h);
    for (std::size_t a = 0; a < n; ++a) {
      auto ai = static_cast<AgentIndex>(a);
      PureStrategy st{ai, std::vector<int>(m.info(ai).num_atoms(), 0)};
      st.choice[m.info(ai).atom_of(h)] = H.action_of(h, ai);
      st.choice[m.info(ai).atom_of(g)] = H.action_of(g, ai);
      w.profile.strategies.push_back(std::move(st));
    }
    w.solutions = ClosedLoopSolutions(m, w.profile, w.nature);
    return {false, std::move(w)};
  }
  return {};
}

// rows[omega] = S_lambda(omega).
struct SolutionMapTable {
  PureProfile profile;
  std::vector<ConfigIndex> rows;
};

inline SolutionMapTable SolutionMap(const WModel& m, const PureProfile& profile) {
  SolutionMapTable t{profile, {}};
  for (std::size_t w = 0; w < m.H().nature().size(); ++w)
    t.rows.push_back(SolveClosedLoop(m, profile, static_cast<int>(w)));
  return t;
}

// Solution when the agents in B play the constants u_B and the others follow
// profile_minus_B.
inline ConfigIndex PartialSolutionMap(const WModel& m, const std::vector<AgentIndex>& B,
                                      const PureProfile& profile_minus_B,
                                      const std::vector<int>& u_B, int omega) {
  if (B.size() != u_B.size()) throw PreconditionError("one constant per agent of B is required");
  PureProfile full = profile_minus_B;
  for (std::size_t i = 0; i < B.size(); ++i) {
    if (full.find(B[i])) throw PreconditionError("agent in B also has a strategy");
    full.strategies.push_back(PureStrategy::Constant(m, B[i], u_B[i]));
  }
  full.normalize();
  return SolveClosedLoop(m, full, omega);
}

}  // namespace wgame
