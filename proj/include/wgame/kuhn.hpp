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

// Pushforward probabilities, conditional kernels and the mixed to behavioral
// transform.

#pragma once

#include <functional>
#include <map>
#include <utility>
#include <variant>
#include <vector>

#include "wgame/parallel.hpp"
#include "wgame/playability.hpp"
#include "wgame/rational.hpp"
#include "wgame/recall.hpp"
#include "wgame/strategy.hpp"

namespace wgame {

// Belief on Nature; the carrier holds nature indices.
using NatureDistribution = RationalDistribution<int>;

inline void CheckNature(const WModel& m, const NatureDistribution& nu) {
  for (int w : nu.carrier())
    if (w < 0 || static_cast<std::size_t>(w) >= m.H().nature().size())
      throw PreconditionError("belief charges an unknown nature state");
}

// Distribution on H; support sorted, zero weights omitted.
struct Pushforward {
  SpacePtr space;
  std::vector<ConfigIndex> support;
  std::vector<Rational> weights;

  Rational at(ConfigIndex h) const {
    auto it = std::lower_bound(support.begin(), support.end(), h);
    if (it == support.end() || *it != h) return Rational(0);
    return weights[static_cast<std::size_t>(it - support.begin())];
  }
  Rational total() const { return Sum(weights); }
  RationalDistribution<ConfigIndex> distribution() const {
    return RationalDistribution<ConfigIndex>(support, weights);
  }

  static Pushforward FromMap(SpacePtr space, const std::map<ConfigIndex, Rational>& mass) {
    Pushforward q{std::move(space), {}, {}};
    for (const auto& [h, w] : mass)
      if (!w.is_zero()) {
        q.support.push_back(h);
        q.weights.push_back(w);
      }
    return q;
  }
};

inline bool DistributionsEqual(const Pushforward& a, const Pushforward& b) {
  if (a.space != b.space && (!a.space || !b.space || !a.space->same_shape(*b.space)))
    throw SpaceMismatch();
  return a.support == b.support && a.weights == b.weights;
}

namespace internal {

inline MixedStrategy AsMixed(const WModel& m, const PlayerStrategy& s) {
  if (const auto* mx = std::get_if<MixedStrategy>(&s)) return *mx;
  return BehavioralToMixed(m, std::get<BehavioralStrategy>(s));
}

// One draw of (omega, one support profile per player).
struct Sample {
  Rational weight;
  int omega = 0;
  std::vector<std::size_t> pick;  // support index per player
  ConfigIndex outcome = 0;
};

// Enumerates every draw with positive weight and solves its closed loop.
inline std::vector<Sample> Samples(const WModel& m, const NatureDistribution& nu,
                                   const std::vector<MixedStrategy>& mixed,
                                   const ExecOptions& exec) {
  CheckNature(m, nu);
  std::size_t combos = 1;
  for (const auto& s : mixed) combos *= s.size();
  std::size_t n_nat = nu.size();
  std::size_t total = combos * n_nat;
  auto chunks = ParallelChunks<std::vector<Sample>>(
      total, exec, [&](std::size_t b, std::size_t e) {
        std::vector<Sample> out;
        for (std::size_t t = b; t < e; ++t) {
          std::size_t wi = t / combos, c = t % combos;
          Sample s;
          s.omega = nu.carrier()[wi];
          s.weight = nu.weights()[wi];
          if (s.weight.is_zero()) continue;
          s.pick.assign(mixed.size(), 0);
          std::vector<const PureProfile*> parts;
          for (std::size_t p = mixed.size(); p-- > 0;) {
            s.pick[p] = c % mixed[p].size();
            c /= mixed[p].size();
          }
          for (std::size_t p = 0; p < mixed.size(); ++p) {
            s.weight *= mixed[p].weights()[s.pick[p]];
            parts.push_back(&mixed[p].support()[s.pick[p]]);
          }
          s.outcome = SolveClosedLoop(m, CombineProfiles(parts), s.omega);
          out.push_back(std::move(s));
        }
        return out;
      });
  std::vector<Sample> all;
  for (auto& c : chunks)
    for (auto& s : c) all.push_back(std::move(s));
  return all;
}

inline std::vector<MixedStrategy> AllMixed(const WModel& m, const StrategyProfile& strategies) {
  CheckStrategyProfile(m, strategies);
  std::vector<MixedStrategy> mixed;
  for (const auto& s : strategies) mixed.push_back(AsMixed(m, s));
  return mixed;
}

}  // namespace internal

// Q(h) = sum of nu(omega) * prod_q weight_q over the draws whose closed loop
// solves to h. Behavioral strategies are expanded into mixed ones.
inline Pushforward ComputePushforward(const WModel& m, const NatureDistribution& nu,
                                      const StrategyProfile& strategies,
                                      const ExecOptions& exec = {}) {
  auto samples = internal::Samples(m, nu, internal::AllMixed(m, strategies), exec);
  std::map<ConfigIndex, Rational> mass;
  for (const auto& s : samples) mass[s.outcome] += s.weight;
  return Pushforward::FromMap(m.space(), mass);
}

// Probability that player q's randomization selects h_a on atom_a(h) for all
// of q's agents.
inline Rational SelectionProbability(const WModel& m, const PlayerStrategy& s, ConfigIndex h) {
  const auto& H = m.H();
  if (const auto* b = std::get_if<BehavioralStrategy>(&s)) {
    Rational p(1);
    for (AgentIndex a : b->agents()) {
      p *= b->prob(a, m.info(a).atom_of(h), H.action_of(h, a));
      if (p.is_zero()) break;
    }
    return p;
  }
  const auto& mx = std::get<MixedStrategy>(s);
  Rational p;
  for (std::size_t i = 0; i < mx.size(); ++i) {
    bool ok = true;
    for (const auto& st : mx.support()[i].strategies)
      if (st.at(m, h) != H.action_of(h, st.agent)) {
        ok = false;
        break;
      }
    if (ok) p += mx.weights()[i];
  }
  return p;
}

// Same distribution as ComputePushforward on playable models, computed as
// Q(h) = nu(h_0) * prod_q SelectionProbability_q(h): under playability h is
// the outcome of a draw iff every agent's drawn strategy selects h_a at h.
inline Pushforward ComputePushforwardFactored(const WModel& m, const NatureDistribution& nu,
                                              const StrategyProfile& strategies,
                                              const ExecOptions& exec = {}) {
  CheckNature(m, nu);
  CheckStrategyProfile(m, strategies);
  const auto& H = m.H();
  std::vector<Rational> nat(H.nature().size());
  for (std::size_t i = 0; i < nu.size(); ++i)
    nat[static_cast<std::size_t>(nu.carrier()[i])] = nu.weights()[i];
  using Part = std::map<ConfigIndex, Rational>;
  auto parts = ParallelChunks<Part>(H.size(), exec, [&](std::size_t b, std::size_t e) {
    Part out;
    for (std::size_t hi = b; hi < e; ++hi) {
      auto h = static_cast<ConfigIndex>(hi);
      Rational q = nat[static_cast<std::size_t>(H.nature_of(h))];
      for (const auto& s : strategies) {
        if (q.is_zero()) break;
        q *= SelectionProbability(m, s, h);
      }
      if (!q.is_zero()) out.emplace(h, q);
    }
    return out;
  });
  Part mass;
  for (auto& p : parts) mass.merge(p);
  return Pushforward::FromMap(m.space(), mass);
}

inline Rational ExpectedUtility(const Pushforward& q,
                                const std::function<Rational(ConfigIndex)>& criterion) {
  Rational s;
  for (std::size_t i = 0; i < q.support.size(); ++i) s += q.weights[i] * criterion(q.support[i]);
  return s;
}

inline Rational ExpectedUtility(const WModel& m, const NatureDistribution& nu,
                                const StrategyProfile& strategies,
                                const std::function<Rational(ConfigIndex)>& criterion) {
  return ExpectedUtility(ComputePushforward(m, nu, strategies), criterion);
}

// Gamma^kappa(. | z) for the I_last(kappa) atoms z inside H_kappa. Carrier
// entries are action tuples over kappa in kappa order.
struct ConditionalKernel {
  Ordering kappa;
  std::vector<AtomId> atoms;
  std::vector<bool> reached;
  std::vector<RationalDistribution<std::vector<int>>> dists;
};

namespace internal {

inline void CheckRecallPrecondition(const WModel& m, int player, const ConfigurationOrdering& phi) {
  if (phi.player() != player) throw PreconditionError("ordering belongs to another player");
  auto rep = CheckPerfectRecall(m, player, phi);
  if (!rep.holds)
    throw PreconditionError("perfect recall does not hold for player '" + m.player(player).name +
                            "' under the given ordering");
}

inline std::vector<std::vector<int>> AllTuples(const WModel& m, const Ordering& kappa) {
  std::vector<std::vector<int>> out{{}};
  for (AgentIndex a : kappa) {
    std::vector<std::vector<int>> next;
    for (const auto& t : out)
      for (std::size_t u = 0; u < m.num_actions(a); ++u) {
        auto x = t;
        x.push_back(static_cast<int>(u));
        next.push_back(std::move(x));
      }
    out = std::move(next);
  }
  return out;
}

}  // namespace internal

inline ConditionalKernel ComputeConditionalKernel(const WModel& m, int player,
                                                  const ConfigurationOrdering& phi,
                                                  const Ordering& kappa,
                                                  const NatureDistribution& nu,
                                                  const StrategyProfile& strategies,
                                                  const ExecOptions& exec = {}) {
  internal::CheckRecallPrecondition(m, player, phi);
  if (kappa.empty()) throw PreconditionError("empty ordering");
  auto mixed = internal::AllMixed(m, strategies);
  auto samples = internal::Samples(m, nu, mixed, exec);
  const Partition& I = m.info(kappa.back());
  ConfigSet cell = OrderingCell(m, phi, kappa);
  ConditionalKernel k;
  k.kappa = kappa;
  std::map<AtomId, std::size_t> pos;
  for (AtomId z = 0; z < I.num_atoms(); ++z)
    if (cell.contains(I.atom(z).front())) {
      pos[z] = k.atoms.size();
      k.atoms.push_back(z);
    }
  std::vector<Rational> denom(k.atoms.size());
  std::vector<std::map<std::vector<int>, Rational>> num(k.atoms.size());
  const auto& mp = mixed[static_cast<std::size_t>(player)];
  for (const auto& s : samples) {
    auto it = pos.find(I.atom_of(s.outcome));
    if (it == pos.end()) continue;
    ConfigIndex rep = I.atom(k.atoms[it->second]).front();
    const auto& lam = mp.support()[s.pick[static_cast<std::size_t>(player)]];
    std::vector<int> u;
    for (AgentIndex b : kappa) u.push_back(lam.of(b).at(m, rep));
    denom[it->second] += s.weight;
    num[it->second][u] += s.weight;
  }
  for (std::size_t i = 0; i < k.atoms.size(); ++i) {
    if (denom[i].is_zero()) {
      k.reached.push_back(false);
      k.dists.push_back(RationalDistribution<std::vector<int>>::Uniform(internal::AllTuples(m, kappa)));
      continue;
    }
    std::vector<std::vector<int>> car;
    std::vector<Rational> w;
    for (const auto& [u, x] : num[i]) {
      car.push_back(u);
      w.push_back(x / denom[i]);
    }
    k.reached.push_back(true);
    k.dists.emplace_back(std::move(car), std::move(w));
  }
  return k;
}

// For every agent a and atom z of I_a: beta_a(u | z) is the conditional
// probability, given that the outcome lands in z, that a's drawn strategy
// plays u on z while the predecessors' drawn strategies reproduce the
// predecessors' actions at z. Unreached atoms get the uniform kernel.
inline BehavioralStrategy KuhnTransform(const WModel& m, int player,
                                        const ConfigurationOrdering& phi,
                                        const NatureDistribution& nu,
                                        const StrategyProfile& strategies,
                                        const ExecOptions& exec = {}) {
  internal::CheckRecallPrecondition(m, player, phi);
  auto mixed = internal::AllMixed(m, strategies);
  auto samples = internal::Samples(m, nu, mixed, exec);
  const auto& H = m.H();
  const auto& agents = m.player(player).agents;
  const auto& mp = mixed[static_cast<std::size_t>(player)];
  // num[i][z][u], den[i][z]
  std::vector<std::vector<std::vector<Rational>>> num(agents.size());
  std::vector<std::vector<Rational>> den(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i) {
    num[i].assign(m.info(agents[i]).num_atoms(),
                  std::vector<Rational>(m.num_actions(agents[i])));
    den[i].assign(m.info(agents[i]).num_atoms(), Rational(0));
  }
  for (const auto& s : samples) {
    const auto& lam = mp.support()[s.pick[static_cast<std::size_t>(player)]];
    for (std::size_t i = 0; i < agents.size(); ++i) {
      AgentIndex a = agents[i];
      const Partition& I = m.info(a);
      AtomId z = I.atom_of(s.outcome);
      ConfigIndex rep = I.atom(z).front();
      const Ordering& rho = phi.at(rep);
      bool matches = true;
      for (AgentIndex b : rho) {
        if (b == a) break;
        if (lam.of(b).at(m, rep) != H.action_of(rep, b)) {
          matches = false;
          break;
        }
      }
      if (!matches) continue;
      den[i][z] += s.weight;
      num[i][z][static_cast<std::size_t>(lam.of(a).choice[z])] += s.weight;
    }
  }
  std::vector<std::vector<BehavioralStrategy::Kernel>> kernels(agents.size());
  for (std::size_t i = 0; i < agents.size(); ++i)
    for (std::size_t z = 0; z < num[i].size(); ++z) {
      std::size_t k = num[i][z].size();
      if (den[i][z].is_zero()) {
        kernels[i].emplace_back(k, Rational(1, static_cast<long>(k)));
        continue;
      }
      BehavioralStrategy::Kernel kz;
      for (const auto& x : num[i][z]) kz.push_back(x / den[i][z]);
      kernels[i].push_back(std::move(kz));
    }
  return BehavioralStrategy(m, player, std::move(kernels));
}

struct KuhnVerification {
  bool equal = false;
  Pushforward mixed;
  Pushforward behavioral;
};

inline KuhnVerification VerifyKuhn(const WModel& m, int player, const NatureDistribution& nu,
                                   const StrategyProfile& strategies,
                                   const BehavioralStrategy& beta, const ExecOptions& exec = {}) {
  KuhnVerification v;
  v.mixed = ComputePushforward(m, nu, strategies, exec);
  StrategyProfile replaced = strategies;
  replaced[static_cast<std::size_t>(player)] = beta;
  v.behavioral = ComputePushforwardFactored(m, nu, replaced, exec);
  v.equal = DistributionsEqual(v.mixed, v.behavioral);
  return v;
}

}  // namespace wgame
