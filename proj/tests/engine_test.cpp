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

#include <random>

#include "core/engine.hpp"
#include "core/error.hpp"
#include "doctest.h"

using namespace dkd;

namespace {

RunParams params(std::uint32_t n, std::uint32_t k, std::uint32_t l) {
  RunParams p;
  p.n = n;
  p.k = k;
  p.l = l;
  return p;
}

std::vector<std::uint32_t> counts(const Occupancy& occ) {
  return {occ.counts().begin(), occ.counts().end()};
}

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(validate_params(params(1, 1, 1)), Error);
  CHECK_THROWS_AS(validate_params(params(8, 0, 2)), Error);
  CHECK_THROWS_AS(validate_params(params(8, 2, 0)), Error);
  CHECK_THROWS_AS(validate_params(params(13, 3, 5)), Error);
  auto p = params(8, 2, 3);
  p.initial_node = 8;
  CHECK_THROWS_AS(validate_params(p), Error);
  p.initial_node = 0;
  p.round_limit = 3;  // below (l-1)k = 4
  CHECK_THROWS_AS(validate_params(p), Error);
  CHECK(validate_params(params(13, 3, 4)).empty());
  CHECK(validate_params(params(8, 1, 3)).size() == 1);
  CHECK(validate_params(params(8, 2, 1)).size() == 1);
}

TEST_CASE("step_fsync from the rooted configuration") {
  const auto s = make_rooted_state(13, 4);
  const auto r = step_fsync(s, std::nullopt, 3);
  CHECK(r.next.registry.at(1) == 12);
  CHECK(r.next.occupancy[0] == 3);
  CHECK(r.next.round == 1);
  CHECK(r.record.round == 0);
  CHECK(r.record.classification == ConfigTag::kChain);
  CHECK(r.record.phase == Phase::kSpread);
  CHECK(r.record.occupancy_before == counts(s.occupancy));
  CHECK(r.record.moves.front() == std::pair{RobotId{1}, MoveDecision::move(Direction::kCcw)});

  CHECK(step_fsync(s, EdgeIndex{12}, 3).next.registry.at(1) == 1);
  CHECK(step_fsync(s, EdgeIndex{0}, 3).next.registry.at(1) == 12);
}

TEST_CASE("a target state is a fixed point") {
  const auto s = make_state(Occupancy({1, 0, 0, 1, 0, 0, 1, 0, 0}));
  for (std::int64_t e = -1; e < 9; ++e) {
    const auto r = step_fsync(s, e < 0 ? std::nullopt : std::optional<EdgeIndex>(e), 3);
    CHECK(r.next.occupancy == s.occupancy);
    CHECK(r.record.phase == Phase::kHalt);
    CHECK(r.next.halted);
  }
}

TEST_CASE("run_fsync with no removal") {
  NoRemoval none;
  const auto a = run_fsync(params(6, 2, 3), none);
  CHECK(a.outcome == Outcome{OutcomeKind::kTerminated, 4});
  const auto b = run_fsync(params(13, 3, 4), none);
  CHECK(b.outcome == Outcome{OutcomeKind::kTerminated, 9});
  CHECK(b.records.size() == 9);
  CHECK(b.adversary == "none");
}

TEST_CASE("a lone robot is done at round 0") {
  NoRemoval none;
  const auto t = run_fsync(params(7, 2, 1), none);
  CHECK(t.outcome == Outcome{OutcomeKind::kTerminated, 0});
  CHECK(t.warnings.size() == 1);
}

TEST_CASE("every strategy terminates within (l-1)k on the small grid") {
  for (std::uint32_t n = 4; n <= 16; ++n) {
    for (std::uint32_t k = 2; k <= 4; ++k) {
      for (std::uint32_t l = 2; l <= n / k; ++l) {
        const auto p = params(n, k, l);
        TargetGoodChain good(k);
        RandomEdge rnd(n * 1000 + k * 10 + l);
        for (FsyncStrategy* s : std::initializer_list<FsyncStrategy*>{&good, &rnd}) {
          const auto t = run_fsync(p, *s);
          REQUIRE(t.outcome.kind == OutcomeKind::kTerminated);
          REQUIRE(t.outcome.rounds <= p.round_bound());
        }
      }
    }
  }
}

TEST_CASE("reconstruct rounds keep the number of occupied nodes") {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    auto p = params(12, 3, 4);
    RandomEdge rnd(seed);
    FsyncRun run(p, rnd.describe());
    while (!run.finished()) {
      const auto before = run.state().occupancy.occupied_nodes().size();
      run.step(rnd.choose_fsync(run.state().round, run.state()));
      const auto& rec = run.trace().records.back();
      if (rec.phase == Phase::kReconstruct) {
        REQUIRE(run.state().occupancy.occupied_nodes().size() == before);
      }
    }
  }
}

TEST_CASE("runs are deterministic") {
  RandomEdge a(7), b(7);
  CHECK(run_fsync(params(9, 3, 3), a) == run_fsync(params(9, 3, 3), b));
}

TEST_CASE("stepping by hand matches a scripted run") {
  std::mt19937_64 rng(3);
  std::vector<std::optional<EdgeIndex>> script;
  for (int i = 0; i < 12; ++i) {
    const auto x = rng() % 13;
    script.push_back(x == 12 ? std::nullopt : std::optional<EdgeIndex>(x));
  }
  Scripted s(script);
  const auto p = params(12, 3, 4);
  const auto whole = run_fsync(p, s);
  FsyncRun run(p, s.describe());
  for (std::size_t i = 0; !run.finished(); ++i) run.step(i < script.size() ? script[i] : std::nullopt);
  CHECK(run.trace() == whole);
  CHECK_THROWS_AS(run.step(std::nullopt), Error);
}

TEST_CASE("the hostile semi-synchronous scheduler freezes the multiplicity") {
  auto p = params(13, 3, 4);
  const auto t = run_ssync_demo(p, 100);
  CHECK(t.outcome == Outcome{OutcomeKind::kFrozen, 100});
  REQUIRE(t.records.size() == 100);
  std::vector<std::uint32_t> rooted(13, 0);
  rooted[0] = 4;
  for (const auto& r : t.records) {
    REQUIRE(r.occupancy_before == rooted);
    REQUIRE(r.activated.size() == 1);
    const auto& [id, move] = r.moves.front();
    CHECK(id == r.activated.front());
    if (!move.is_stay()) CHECK(r.missing_edge == edge_towards(13, 0, move.direction()));
  }
  CHECK(t.scheduler == Scheduler::kSsync);

  const auto empty = run_ssync_demo(p, 0);
  CHECK(empty.outcome == Outcome{OutcomeKind::kFrozen, 0});
  CHECK(empty.records.empty());

  CHECK_THROWS_AS(run_ssync_demo(params(13, 3, 1), 5), Error);
}

TEST_CASE("ring rendering") {
  CHECK(render_ring(Occupancy({4, 0, 0, 0, 0}), std::nullopt) == "4-.-.-.-.-");
  CHECK(render_ring(Occupancy({4, 0, 0, 0, 0}), EdgeIndex{4}) == "4-.-.-.-.x");
  CHECK(render_ring(Occupancy({1, 12, 0}), EdgeIndex{0}) == "ox9-.-");
}
