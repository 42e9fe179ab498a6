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

#include <fstream>
#include <sstream>

#include "core/error.hpp"
#include "core/trace_io.hpp"
#include "doctest.h"
#include "reference/reference_sim.hpp"

using namespace dkd;

namespace {

RunParams params(std::uint32_t n, std::uint32_t k, std::uint32_t l) {
  RunParams p;
  p.n = n;
  p.k = k;
  p.l = l;
  return p;
}

Trace round_trip(const Trace& t) {
  std::istringstream in(serialize_trace(t));
  return read_trace(in);
}

}  // namespace

TEST_CASE("fsync traces survive a round trip") {
  RandomEdge rnd(42);
  auto p = params(12, 3, 4);
  p.round_limit = 20;
  const auto t = run_fsync(p, rnd);
  CHECK(round_trip(t) == t);
  CHECK(serialize_trace(round_trip(t)) == serialize_trace(t));
}

TEST_CASE("ssync traces keep the activated robots") {
  const auto t = run_ssync_demo(params(9, 3, 3), 7);
  const auto back = round_trip(t);
  CHECK(back == t);
  CHECK(back.records[0].activated == std::vector<RobotId>{1});
}

TEST_CASE("warnings are carried in the header") {
  NoRemoval none;
  const auto t = run_fsync(params(6, 1, 3), none);
  REQUIRE(t.warnings.size() == 1);
  CHECK(round_trip(t).warnings == t.warnings);
}

TEST_CASE("malformed traces are rejected") {
  for (const char* text : {"", "not json\n", "{\"trace\":\"other\"}\n",
                           "{\"trace\":\"dkd\",\"scheduler\":\"fsync\"}\n"}) {
    std::istringstream in(text);
    CHECK_THROWS_AS(read_trace(in), Error);
  }
}

TEST_CASE("golden trace for n=13 k=3 l=4 without removals") {
  std::ifstream in(DKD_GOLDEN_DIR "/run_n13_k3_l4_none.jsonl", std::ios::binary);
  REQUIRE(in);
  std::stringstream golden;
  golden << in.rdbuf();

  NoRemoval none;
  const auto t = run_fsync(params(13, 3, 4), none);
  CHECK(serialize_trace(t) == golden.str());

  // The golden occupancies also match the independent reference simulator.
  std::vector<std::vector<int>> expected;
  REQUIRE(ref::run_script(13, 3, 4, {}, 13, &expected) == 9);
  REQUIRE(t.records.size() + 1 == expected.size());
  for (std::size_t i = 0; i < t.records.size(); ++i) {
    const auto& got = t.records[i].occupancy_before;
    CHECK(std::vector<int>(got.begin(), got.end()) == expected[i]);
  }
}
