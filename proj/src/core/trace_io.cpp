/*
 * Copyright 2026 The dkd Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "core/trace_io.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "core/error.hpp"
#include "json.hpp"

namespace dkd {

namespace {

using Json = nlohmann::ordered_json;

template <typename Enum, std::size_t N>
Enum enum_from(const std::string& s, const Enum (&values)[N],
               const char* (*name)(Enum), const char* what) {
  for (Enum v : values) {
    if (s == name(v)) return v;
  }
  throw Error(ErrorCode::kInvalidArgument, std::string("unknown ") + what + " '" + s + "'");
}

constexpr ConfigTag kTags[] = {ConfigTag::kChain, ConfigTag::kBlocks, ConfigTag::kTarget,
                               ConfigTag::kInvalid};
constexpr Phase kPhases[] = {Phase::kSpread, Phase::kReconstruct, Phase::kHalt};
constexpr OutcomeKind kOutcomes[] = {OutcomeKind::kTerminated, OutcomeKind::kBoundExceeded,
                                     OutcomeKind::kFrozen, OutcomeKind::kEscaped,
                                     OutcomeKind::kInProgress};

const char* scheduler_name(Scheduler s) { return s == Scheduler::kFsync ? "fsync" : "ssync"; }
constexpr Scheduler kSchedulers[] = {Scheduler::kFsync, Scheduler::kSsync};

Json header_json(const Trace& t) {
  Json params;
  params["n"] = t.params.n;
  params["k"] = t.params.k;
  params["l"] = t.params.l;
  params["initial_node"] = t.params.initial_node;
  params["round_limit"] = t.params.effective_round_limit();
  Json h;
  h["trace"] = "dkd";
  h["scheduler"] = scheduler_name(t.scheduler);
  h["params"] = std::move(params);
  h["adversary"] = t.adversary;
  h["warnings"] = t.warnings;
  h["outcome"] = outcome_name(t.outcome.kind);
  h["rounds"] = t.outcome.rounds;
  return h;
}

Json record_json(const RoundRecord& r, Scheduler s) {
  Json j;
  j["round"] = r.round;
  j["missing_edge"] = r.missing_edge ? Json(*r.missing_edge) : Json(nullptr);
  j["classification"] = tag_name(r.classification);
  j["occupancy"] = r.occupancy_before;
  Json moves = Json::array();
  for (const auto& [id, d] : r.moves) moves.push_back(Json::array({id, d.name()}));
  j["moves"] = std::move(moves);
  j["phase"] = phase_name(r.phase);
  if (s == Scheduler::kSsync) j["activated"] = r.activated;
  return j;
}

MoveDecision move_from(const std::string& s) {
  if (s == "stay") return MoveDecision::stay();
  if (s == "cw") return MoveDecision::move(Direction::kCw);
  if (s == "ccw") return MoveDecision::move(Direction::kCcw);
  throw Error(ErrorCode::kInvalidArgument, "unknown move '" + s + "'");
}

}  // namespace

void write_trace(const Trace& trace, std::ostream& os) {
  os << header_json(trace).dump() << '\n';
  for (const auto& r : trace.records) os << record_json(r, trace.scheduler).dump() << '\n';
}

std::string serialize_trace(const Trace& trace) {
  std::ostringstream os;
  write_trace(trace, os);
  return os.str();
}

Trace read_trace(std::istream& is) {
  Trace t;
  std::string line;
  try {
    if (!std::getline(is, line)) throw Error(ErrorCode::kInvalidArgument, "empty trace");
    const auto h = Json::parse(line);
    if (h.at("trace") != "dkd") throw Error(ErrorCode::kInvalidArgument, "not a dkd trace");
    t.scheduler = enum_from(h.at("scheduler").get<std::string>(), kSchedulers,
                            scheduler_name, "scheduler");
    const auto& p = h.at("params");
    t.params.n = p.at("n").get<std::uint32_t>();
    t.params.k = p.at("k").get<std::uint32_t>();
    t.params.l = p.at("l").get<std::uint32_t>();
    t.params.initial_node = p.at("initial_node").get<Node>();
    const auto limit = p.at("round_limit").get<std::uint64_t>();
    if (limit != t.params.n) t.params.round_limit = limit;
    t.adversary = h.at("adversary").get<std::string>();
    t.warnings = h.at("warnings").get<std::vector<std::string>>();
    t.outcome.kind = enum_from(h.at("outcome").get<std::string>(), kOutcomes,
                               outcome_name, "outcome");
    t.outcome.rounds = h.at("rounds").get<std::uint64_t>();

    while (std::getline(is, line)) {
      if (line.empty()) continue;
      const auto j = Json::parse(line);
      RoundRecord r;
      r.round = j.at("round").get<std::uint64_t>();
      if (!j.at("missing_edge").is_null()) r.missing_edge = j.at("missing_edge").get<EdgeIndex>();
      r.classification = enum_from(j.at("classification").get<std::string>(), kTags,
                                   tag_name, "classification");
      r.occupancy_before = j.at("occupancy").get<std::vector<std::uint32_t>>();
      for (const auto& m : j.at("moves")) {
        r.moves.emplace_back(m.at(0).get<RobotId>(), move_from(m.at(1).get<std::string>()));
      }
      r.phase = enum_from(j.at("phase").get<std::string>(), kPhases, phase_name, "phase");
      if (j.contains("activated")) r.activated = j.at("activated").get<std::vector<RobotId>>();
      t.records.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("malformed trace: ") + e.what());
  }
  return t;
}

}  // namespace dkd
