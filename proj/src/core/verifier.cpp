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

#include "core/verifier.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <unordered_set>

#include "core/definition_oracle.hpp"
#include "core/error.hpp"

namespace dkd {

namespace {

std::string counts_text(const Occupancy& occ) {
  std::ostringstream os;
  os << '[';
  for (Node v = 0; v < occ.size(); ++v) os << (v ? "," : "") << occ[v];
  os << ']';
  return os.str();
}

std::uint32_t first_gap(const Block& b, std::uint32_t n) {
  return distance(n, b.occupied_nodes[0], b.occupied_nodes[1], b.direction);
}

// Gaps between consecutive occupied nodes of a block, skipping the first
// `skip` of them.
std::vector<std::uint32_t> block_gaps(const Block& b, std::uint32_t n, std::size_t skip) {
  std::vector<std::uint32_t> out;
  for (std::size_t i = skip; i + 1 < b.occupied_nodes.size(); ++i) {
    out.push_back(distance(n, b.occupied_nodes[i], b.occupied_nodes[i + 1], b.direction));
  }
  return out;
}

}  // namespace

const char* check_id_name(CheckId id) {
  switch (id) {
    case CheckId::kL3Singleton: return "L3-singleton";
    case CheckId::kL4TwoBlocks: return "L4-two-blocks";
    case CheckId::kL5HeadGapOne: return "L5-head-gap-one";
    case CheckId::kLGapIncrement: return "L-gap-increment";
    case CheckId::kL6ReconstructBound: return "L6-reconstruct-bound";
    case CheckId::kT5RoundBound: return "T5-round-bound";
    case CheckId::kTargetConditions: return "target-conditions";
    case CheckId::kConservation: return "conservation";
    case CheckId::kClassificationOracle: return "classification-oracle";
    case CheckId::kProtocolFault: return "protocol-fault";
  }
  return "unknown";
}

std::string to_string(const Violation& v) {
  return "round " + std::to_string(v.round) + " [" + check_id_name(v.check) + "] " + v.detail;
}

Snapshot snapshot(const WorldState& state, std::uint32_t k) {
  return {state, classify(state.occupancy, state.topology.missing_edge, k)};
}

std::vector<Violation> check_transition(const Snapshot& prev, const Snapshot& next,
                                        std::uint32_t k) {
  std::vector<Violation> out;
  const auto round = prev.state.round;
  const auto n = prev.state.n();
  const auto& before = prev.state.occupancy;
  const auto& after = next.state.occupancy;
  auto add = [&](CheckId id, const std::string& detail) {
    out.push_back({round, id, detail + " in " + counts_text(before) + " -> " + counts_text(after)});
  };

  if (before.total() != after.total()) {
    add(CheckId::kConservation, "robot count " + std::to_string(before.total()) + " became " +
                                    std::to_string(after.total()));
  }
  try {
    validate_state(next.state);
  } catch (const Error& e) {
    add(CheckId::kConservation, e.what());
  }
  bool same_ids = prev.state.registry.size() == next.state.registry.size();
  for (auto a = prev.state.registry.begin(), b = next.state.registry.begin();
       same_ids && a != prev.state.registry.end(); ++a, ++b) {
    same_ids = a->first == b->first;
  }
  if (!same_ids) add(CheckId::kConservation, "robot ids changed");

  const auto pt = tag_of(prev.classification);
  const auto nt = tag_of(next.classification);

  if (pt == ConfigTag::kChain) {
    // One robot leaves the multiplicity. When only two were there, the one
    // left behind becomes a singleton as well.
    const auto mult = before.multiplicity_nodes();
    const std::size_t gained = (mult.size() == 1 && before[mult.front()] == 2) ? 2 : 1;
    if (after.singleton_count() != before.singleton_count() + gained ||
        after.occupied_nodes().size() != before.occupied_nodes().size() + 1) {
      add(CheckId::kL3Singleton, "spread took singleton nodes from " +
                                     std::to_string(before.singleton_count()) + " to " +
                                     std::to_string(after.singleton_count()) + " (expected +" +
                                     std::to_string(gained) + ")");
    }
  }

  if (nt == ConfigTag::kInvalid) {
    add(CheckId::kL4TwoBlocks, "non-chain non-target state without two blocks (" +
                                   describe(next.classification) + ")");
  }

  if (pt == ConfigTag::kChain && nt == ConfigTag::kBlocks) {
    const auto& tb = std::get<TwoBlocks>(next.classification);
    const auto gap = first_gap(tb.non_chain_block, n);
    if (gap != 1) add(CheckId::kL5HeadGapOne, "head gap " + std::to_string(gap) + " after spread");
    for (auto g : block_gaps(tb.non_chain_block, n, 1)) {
      if (g != k) add(CheckId::kL5HeadGapOne, "non-chain block gap " + std::to_string(g));
    }
    for (auto g : block_gaps(tb.chain_block, n, 0)) {
      if (g != k) add(CheckId::kL5HeadGapOne, "chain block gap " + std::to_string(g));
    }
  }

  if (pt == ConfigTag::kBlocks && nt == ConfigTag::kBlocks) {
    const auto d0 = first_gap(std::get<TwoBlocks>(prev.classification).non_chain_block, n);
    const auto d1 = first_gap(std::get<TwoBlocks>(next.classification).non_chain_block, n);
    if (d1 != d0 + 1) {
      add(CheckId::kLGapIncrement,
          "head gap went " + std::to_string(d0) + " -> " + std::to_string(d1));
    }
  }

  auto oracle_check = [&](const Snapshot& s) {
    const auto expected = classify_by_definition(s.state.occupancy, s.state.topology.missing_edge, k);
    if (!same_verdict(expected, s.classification)) {
      add(CheckId::kClassificationOracle,
          "classifier says '" + describe(s.classification) + "', definitions say '" +
              describe(expected) + "'");
    }
  };
  oracle_check(prev);
  // Target states end a run and never appear as `prev`.
  if (nt == ConfigTag::kTarget) oracle_check(next);
  return out;
}

std::vector<Violation> check_reconstruct_span(const Trace& trace, std::uint32_t k) {
  std::vector<Violation> out;
  std::uint64_t run = 0;
  for (const auto& r : trace.records) {
    if (r.classification != ConfigTag::kBlocks) {
      run = 0;
      continue;
    }
    if (++run == std::uint64_t{k}) {
      out.push_back({r.round, CheckId::kL6ReconstructBound,
                     "reconstruct phase reached " + std::to_string(run) +
                         " rounds (limit " + std::to_string(k - 1) + ")"});
    }
  }
  return out;
}

bool target_conditions_hold(const Occupancy& occ, std::uint32_t k) {
  const auto n = occ.size();
  std::vector<Node> nodes;
  for (Node v = 0; v < n; ++v) {
    if (occ[v] > 1) return false;
    if (occ[v] == 1) nodes.push_back(v);
  }
  bool exact = false;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      const auto cw = nodes[j] - nodes[i];
      const auto d = std::min(cw, n - cw);
      if (d < k) return false;
      exact |= (d == k);
    }
  }
  return exact;
}

std::vector<Violation> check_trace(const Trace& trace) {
  if (trace.scheduler != Scheduler::kFsync) {
    throw Error(ErrorCode::kInvalidArgument, "check_trace needs an FSYNC trace");
  }
  const auto& p = trace.params;
  std::vector<Violation> out;
  WorldState state = make_rooted_state(p.n, p.l, p.initial_node);

  for (const auto& rec : trace.records) {
    const std::vector<std::uint32_t> now(state.occupancy.counts().begin(),
                                         state.occupancy.counts().end());
    if (rec.occupancy_before != now) {
      out.push_back({rec.round, CheckId::kConservation, "trace diverges from replay"});
      return out;
    }
    StepResult res;
    try {
      res = step_fsync(state, rec.missing_edge, p.k);
    } catch (const Error& e) {
      out.push_back({rec.round, CheckId::kProtocolFault, e.what()});
      return out;
    }
    if (res.record.moves != rec.moves) {
      out.push_back({rec.round, CheckId::kProtocolFault,
                     "recorded moves differ from the protocol's decisions"});
    }
    WorldState prev = state;
    prev.topology = RingTopology(p.n, rec.missing_edge);
    auto vs = check_transition(snapshot(prev, p.k), snapshot(res.next, p.k), p.k);
    out.insert(out.end(), vs.begin(), vs.end());
    state = std::move(res.next);
  }

  auto span = check_reconstruct_span(trace, p.k);
  out.insert(out.end(), span.begin(), span.end());

  if (trace.outcome.kind == OutcomeKind::kTerminated) {
    if (!is_target(state.occupancy, p.k)) {
      out.push_back({state.round, CheckId::kTargetConditions,
                     "terminated outside a target configuration"});
    } else if (p.l >= 2 && !target_conditions_hold(state.occupancy, p.k)) {
      out.push_back({state.round, CheckId::kTargetConditions,
                     "final configuration " + counts_text(state.occupancy) +
                         " misses a dispersion condition"});
    }
    if (trace.outcome.rounds > p.round_bound()) {
      out.push_back({state.round, CheckId::kT5RoundBound,
                     "terminated after " + std::to_string(trace.outcome.rounds) +
                         " rounds, bound " + std::to_string(p.round_bound())});
    }
  } else if (trace.outcome.kind == OutcomeKind::kBoundExceeded) {
    out.push_back({state.round, CheckId::kT5RoundBound, "round limit reached before target"});
  }
  return out;
}

std::size_t CanonicalKeyHash::operator()(const CanonicalKey& key) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (auto c : key.counts) mix(c);
  mix(key.missing_edge ? *key.missing_edge + 1ull : 0ull);
  return static_cast<std::size_t>(h);
}

CanonicalForm canonical_rotation(const Occupancy& occ, std::optional<EdgeIndex> missing) {
  const auto n = occ.size();
  CanonicalForm best;
  CanonicalKey cand;
  cand.counts.resize(n);
  for (std::uint32_t r = 0; r < n; ++r) {
    for (std::uint32_t i = 0; i < n; ++i) cand.counts[i] = occ[(i + r) % n];
    cand.missing_edge = missing ? std::optional<EdgeIndex>((*missing + n - r) % n) : std::nullopt;
    if (r == 0 || cand < best.key) {
      best.key = cand;
      best.offset = r;
    }
  }
  return best;
}

CanonicalKey canonicalize(const Occupancy& occ, std::optional<EdgeIndex> missing) {
  return canonical_rotation(occ, missing).key;
}

VerificationReport exhaustive_verify(std::uint32_t n, std::uint32_t k, std::uint32_t l,
                                     const VerifyOptions& options) {
  if (k < 2 || l < 2 || n < 2 || l > n / k) {
    throw Error(ErrorCode::kInvalidArgument,
                "exhaustive verification needs k >= 2 and 2 <= l <= floor(n/k)");
  }
  if (n > options.max_n) {
    throw Error(ErrorCode::kCapExceeded, "instance too large: n=" + std::to_string(n) +
                                             " exceeds the cap of " +
                                             std::to_string(options.max_n));
  }

  RunParams params;
  params.n = n;
  params.k = k;
  params.l = l;

  VerificationReport report;
  report.n = n;
  report.k = k;
  report.l = l;
  report.bound = options.claimed_bound.value_or(params.round_bound());

  struct Entry {
    CanonicalKey key;
    std::uint32_t blocks_run;  // consecutive blocks rounds ending here
    std::size_t parent;
    std::optional<EdgeIndex> edge;  // in the parent's canonical frame
  };
  std::vector<std::vector<Entry>> layers;
  std::unordered_set<CanonicalKey, CanonicalKeyHash> seen;

  const auto root = canonicalize(make_rooted_state(n, l).occupancy, std::nullopt);
  layers.push_back({Entry{root, 0, 0, std::nullopt}});
  seen.insert(root);
  std::optional<std::uint64_t> best;

  // Replays the canonical path to layers[depth][idx], then `extra`, on a
  // concrete rooted run.
  auto build_counterexample = [&](std::size_t depth, std::size_t idx,
                                  std::optional<std::optional<EdgeIndex>> extra) {
    std::vector<std::optional<EdgeIndex>> path;
    for (std::size_t d = depth, i = idx; d > 0; --d) {
      path.push_back(layers[d][i].edge);
      i = layers[d][i].parent;
    }
    std::reverse(path.begin(), path.end());
    if (extra) path.push_back(*extra);

    FsyncRun run(params, "counterexample");
    for (const auto& e : path) {
      if (run.finished()) break;
      const auto frame = canonical_rotation(run.state().occupancy, std::nullopt);
      const std::optional<EdgeIndex> actual =
          e ? std::optional<EdgeIndex>((*e + frame.offset) % n) : std::nullopt;
      try {
        run.step(actual);
      } catch (const Error&) {
        break;
      }
    }
    return run.trace();
  };

  auto fail = [&](Violation v, std::size_t depth, std::size_t idx,
                  std::optional<std::optional<EdgeIndex>> extra) {
    report.violations.push_back(std::move(v));
    report.counterexample = build_counterexample(depth, idx, extra);
    report.states_explored = seen.size();
    report.certified = false;
    return report;
  };

  for (std::size_t depth = 0; !layers[depth].empty(); ++depth) {
    std::vector<Entry> next_layer;
    std::map<std::pair<CanonicalKey, std::uint32_t>, std::size_t> index;

    for (std::size_t idx = 0; idx < layers[depth].size(); ++idx) {
      const Entry& entry = layers[depth][idx];
      WorldState rep = make_state(Occupancy(entry.key.counts));
      rep.round = depth;
      if (depth >= report.bound) {
        return fail({depth, CheckId::kT5RoundBound,
                     "no target after " + std::to_string(depth) + " rounds in " +
                         render_ring(rep.occupancy, std::nullopt)},
                    depth, idx, std::nullopt);
      }

      for (std::int64_t c = -1; c < static_cast<std::int64_t>(n); ++c) {
        const auto choice = c < 0 ? std::nullopt : std::optional<EdgeIndex>(c);
        ++report.transitions_checked;

        StepResult res;
        try {
          res = step_fsync(rep, choice, k);
        } catch (const Error& e) {
          const auto id = e.code() == ErrorCode::kProtocolCannotAct ? CheckId::kL4TwoBlocks
                                                                    : CheckId::kProtocolFault;
          return fail({depth, id, e.what()}, depth, idx, choice);
        }
        WorldState prev = rep;
        prev.topology = RingTopology(n, choice);
        const auto next_snap = snapshot(res.next, k);
        auto vs = check_transition(snapshot(prev, k), next_snap, k);

        const bool next_blocks = tag_of(next_snap.classification) == ConfigTag::kBlocks;
        const std::uint32_t run = next_blocks ? entry.blocks_run + 1 : 0;
        if (run > k - 1) {
          vs.push_back({depth, CheckId::kL6ReconstructBound,
                        "reconstruct phase reached " + std::to_string(run) + " rounds"});
        }
        if (res.next.halted && !target_conditions_hold(res.next.occupancy, k)) {
          vs.push_back({depth + 1, CheckId::kTargetConditions,
                        "final configuration " + render_ring(res.next.occupancy, std::nullopt) +
                            " misses a dispersion condition"});
        }
        if (!vs.empty()) return fail(std::move(vs.front()), depth, idx, choice);

        auto key = canonicalize(res.next.occupancy, std::nullopt);
        if (seen.insert(key).second && seen.size() > options.max_states) {
          throw Error(ErrorCode::kCapExceeded,
                      "instance too large: " + std::to_string(seen.size()) +
                          " canonical states by depth " + std::to_string(depth + 1) +
                          " (cap " + std::to_string(options.max_states) + ", " +
                          std::to_string(report.transitions_checked) + " transitions checked)");
        }
        if (res.next.halted) {
          report.worst_case_rounds = std::max<std::uint64_t>(report.worst_case_rounds, depth + 1);
          best = std::min<std::uint64_t>(best.value_or(depth + 1), depth + 1);
          continue;
        }
        auto [it, inserted] = index.try_emplace({key, run}, next_layer.size());
        if (inserted) next_layer.push_back(Entry{std::move(key), run, idx, choice});
      }
    }
    layers.push_back(std::move(next_layer));
  }

  report.states_explored = seen.size();
  report.best_case_rounds = best.value_or(0);
  report.certified = report.worst_case_rounds <= report.bound;
  if (options.collect_states) {
    report.reached_states.assign(seen.begin(), seen.end());
    std::sort(report.reached_states.begin(), report.reached_states.end());
  }
  return report;
}

}  // namespace dkd
