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

// Analysis reports and their human / JSON renderings.

#pragma once

#include <optional>
#include <sstream>
#include <string>

#include "wgame/io.hpp"
#include "wgame/kuhn.hpp"
#include "wgame/necessity.hpp"
#include "wgame/playability.hpp"
#include "wgame/recall.hpp"

namespace wgame {

enum class Format { kHuman, kJson };

struct Report {
  std::string command;
  std::string model_digest;  // empty when no model is involved
  std::string outcome;
  io::Json details = io::Json::object();
  std::optional<double> timing_ms;

  friend bool operator==(const Report&, const Report&) = default;
};

inline io::Json ReportJson(const Report& r) {
  io::Json j;
  j["command"] = r.command;
  if (!r.model_digest.empty()) j["model_digest"] = r.model_digest;
  j["outcome"] = r.outcome;
  j["details"] = r.details;
  if (r.timing_ms) j["timing"] = {{"milliseconds", *r.timing_ms}};
  return j;
}

inline Report ParseReport(const io::Json& j) {
  Report r;
  r.command = io::internal::Str(io::internal::Field(j, "command", ""), "command");
  if (j.contains("model_digest"))
    r.model_digest = io::internal::Str(j["model_digest"], "model_digest");
  r.outcome = io::internal::Str(io::internal::Field(j, "outcome", ""), "outcome");
  r.details = io::internal::Field(j, "details", "");
  if (j.contains("timing")) r.timing_ms = j["timing"].at("milliseconds").get<double>();
  return r;
}

namespace internal {

inline std::string Inline(const io::Json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_object()) {
    std::string s = "(";
    bool first = true;
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (!first) s += ", ";
      first = false;
      s += it.key() + "=" + Inline(it.value());
    }
    return s + ")";
  }
  if (j.is_array()) {
    std::string s = "[";
    for (std::size_t i = 0; i < j.size(); ++i) s += (i ? ", " : "") + Inline(j[i]);
    return s + "]";
  }
  return j.dump();
}

inline bool IsFlat(const io::Json& j) {
  if (j.is_object()) {
    for (const auto& v : j) if (v.is_structured()) return false;
    return true;
  }
  if (j.is_array()) {
    for (const auto& v : j) if (!v.is_primitive() && !IsFlat(v)) return false;
    return Inline(j).size() <= 100;
  }
  return true;
}

inline void Human(std::ostream& os, const io::Json& j, int indent) {
  std::string pad(static_cast<std::size_t>(indent), ' ');
  if (j.is_object()) {
    for (auto it = j.begin(); it != j.end(); ++it) {
      if (IsFlat(it.value())) {
        os << pad << it.key() << ": " << Inline(it.value()) << "\n";
      } else {
        os << pad << it.key() << ":\n";
        Human(os, it.value(), indent + 2);
      }
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (IsFlat(v)) {
        os << pad << "- " << Inline(v) << "\n";
      } else {
        os << pad << "-\n";
        Human(os, v, indent + 2);
      }
    }
  } else {
    os << pad << Inline(j) << "\n";
  }
}

}  // namespace internal

inline std::string EmitReport(const Report& r, Format f) {
  if (f == Format::kJson) return ReportJson(r).dump(2) + "\n";
  std::ostringstream os;
  os << r.command << ": " << r.outcome << "\n";
  if (!r.model_digest.empty()) os << "model digest: " << r.model_digest << "\n";
  internal::Human(os, r.details, 2);
  if (r.timing_ms) os << "time: " << *r.timing_ms << " ms\n";
  return os.str();
}

// Detail builders --------------------------------------------------------------

inline io::Json PlayabilityDetails(const WModel& m, const PlayabilityReport& r, bool witness) {
  io::Json j;
  j["playable"] = r.playable;
  if (witness && r.witness) {
    j["witness"]["nature"] = m.H().nature().label(r.witness->nature);
    j["witness"]["profile"] = io::ProfileObjectJson(m, r.witness->profile);
    j["witness"]["solutions"] = io::ConfigListJson(m.H(), r.witness->solutions);
  }
  return j;
}

inline io::Json SolutionMapDetails(const WModel& m, const SolutionMapTable& t) {
  io::Json j;
  j["profile"] = io::ProfileObjectJson(m, t.profile);
  j["solutions"] = io::Json::array();
  for (std::size_t w = 0; w < t.rows.size(); ++w)
    j["solutions"].push_back({{"nature", m.H().nature().label(static_cast<int>(w))},
                              {"configuration", io::ConfigJson(m.H(), t.rows[w])}});
  return j;
}

inline io::Json RecallDetails(const WModel& m, const RecallReport& r, const char* property) {
  io::Json j;
  j[property] = r.holds;
  j["ordering"] = io::OrderingJson(m, r.ordering);
  if (r.violation) {
    const auto& v = *r.violation;
    j["violation"]["kappa"] = io::OrderingListJson(m, v.kappa);
    j["violation"]["atom"] = io::ConfigListJson(m.H(), v.atom);
    j["violation"]["set"] = io::ConfigListJson(m.H(), v.set);
    j["violation"]["offending"] = io::ConfigListJson(m.H(), v.offending);
  }
  return j;
}

inline const char* SearchStatusName(SearchStatus s) {
  switch (s) {
    case SearchStatus::kFound: return "found";
    case SearchStatus::kNone: return "none";
    case SearchStatus::kUnknown: return "unknown";
  }
  return "unknown";
}

inline io::Json SearchDetails(const WModel& m, const OrderingSearchResult& r) {
  io::Json j;
  j["search"] = SearchStatusName(r.status);
  j["nodes"] = r.nodes;
  if (r.ordering) j["ordering"] = io::OrderingJson(m, *r.ordering);
  return j;
}

inline io::Json ViolationJson(const WModel& m, const RecallViolation& v) {
  return {{"kappa", io::OrderingListJson(m, v.kappa)},
          {"plus", io::ConfigJson(m.H(), v.plus)},
          {"minus", io::ConfigJson(m.H(), v.minus)},
          {"case", ViolationCaseName(v.kind)}};
}

inline io::Json ForcedSupportJson(const WModel& m, int player, const ForcedSupportMap& pos) {
  io::Json j = io::Json::object();
  const auto& agents = m.player(player).agents;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    const auto& U = m.H().actions(agents[i]);
    io::Json fam = io::Json::array();
    for (const auto& acts : pos[i]) {
      io::Json s = io::Json::array();
      for (int u : acts) s.push_back(U.label(u));
      fam.push_back(s);
    }
    j[m.H().agent_id(agents[i])] = fam;
  }
  return j;
}

inline io::Json CertificateJson(const WModel& m, int player, const NonEquivalenceCertificate& c) {
  const auto& H = m.H();
  io::Json j;
  j["nature"] = io::NatureJson(m, c.nu);
  j["strategies"] = io::Json::array();
  for (const auto& s : c.strategies) j["strategies"].push_back(io::PlayerStrategyJson(m, s));
  j["target"] = io::PushforwardJson(m, c.target);
  j["forced_support"] = ForcedSupportJson(m, player, c.pos);
  j["plan"] = io::Json::array();
  for (const auto& f : c.plan)
    j["plan"].push_back({{"agent", H.agent_id(f.agent)},
                         {"atom", f.atom},
                         {"action", H.actions(f.agent).label(f.action)},
                         {"source", io::ConfigJson(H, f.source)}});
  j["omega"] = H.nature().label(c.omega);
  io::Json opp = io::Json::object();
  for (std::size_t q = 0; q < m.num_players(); ++q)
    if (static_cast<int>(q) != player)
      opp[m.player(static_cast<int>(q)).name] = c.opponent_pick[q];
  j["opponent_support_index"] = opp;
  j["profile"] = io::ProfileObjectJson(m, c.profile);
  j["exhibited"] = io::ConfigJson(H, c.exhibited);
  return j;
}

inline io::Json NecessityDetails(const WModel& m, int player, const NecessityResult& r) {
  io::Json j;
  j["violation"] = r.violation ? ViolationJson(m, *r.violation) : io::Json(nullptr);
  if (r.witness && r.witness->switch_agent >= 0)
    j["switch"] = {{"agent", m.H().agent_id(r.witness->switch_agent)},
                   {"action", m.H().actions(r.witness->switch_agent).label(r.witness->switch_action)}};
  if (r.certificate) {
    j["certificate"] = CertificateJson(m, player, *r.certificate);
    j["certificate_check"] = VerifyCertificate(m, player, *r.certificate).empty() ? "ok" : "failed";
  }
  return j;
}

}  // namespace wgame
