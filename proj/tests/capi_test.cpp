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

// Exercises the shared library through its C header only.

#include <cstring>
#include <string>
#include <vector>

#include "dkd/dkd.h"
#include "doctest.h"

namespace {

template <typename F>
std::string read(F&& fill) {
  size_t need = 0;
  const dkd_status first = fill(nullptr, 0, &need);
  REQUIRE((first == DKD_OK || first == DKD_BUFFER_TOO_SMALL));
  std::string buf(need, '\0');
  REQUIRE(fill(buf.data(), buf.size(), &need) == DKD_OK);
  buf.resize(need ? need - 1 : 0);
  return buf;
}

dkd_trace* run(uint32_t n, uint32_t k, uint32_t l, dkd_adversary adv) {
  dkd_params p{n, k, l, 0, 0};
  dkd_trace* t = nullptr;
  REQUIRE(dkd_run_fsync(&p, &adv, &t) == DKD_OK);
  return t;
}

std::string serialize(const dkd_trace* t) {
  return read([&](char* b, size_t c, size_t* nd) { return dkd_trace_serialize(t, b, c, nd); });
}

}  // namespace

TEST_CASE("capi: names and versions") {
  CHECK(std::string(dkd_version()) == "0.1.0");
  CHECK(std::string(dkd_status_string(DKD_OK)) != "");
  CHECK(std::string(dkd_classification_name(DKD_CLASS_BLOCKS)) == "blocks");
  CHECK(std::string(dkd_move_name(DKD_MOVE_CCW)) == "ccw");
}

TEST_CASE("capi: parameter validation") {
  dkd_params bad{12, 3, 5, 0, 0};
  size_t need = 0;
  CHECK(dkd_validate_params(&bad, nullptr, 0, &need) == DKD_INVALID_ARGUMENT);
  CHECK(std::string(dkd_last_error()).find("floor(n/k)") != std::string::npos);
  CHECK(dkd_validate_params(nullptr, nullptr, 0, &need) == DKD_INVALID_ARGUMENT);

  dkd_params one{9, 3, 1, 0, 0};
  const auto warn = read([&](char* b, size_t c, size_t* nd) { return dkd_validate_params(&one, b, c, nd); });
  CHECK(warn.find("l=1") != std::string::npos);

  dkd_params ok{12, 3, 4, 0, 0};
  CHECK(read([&](char* b, size_t c, size_t* nd) { return dkd_validate_params(&ok, b, c, nd); }).empty());

  dkd_trace* t = nullptr;
  dkd_adversary none{DKD_ADV_NONE, 0, nullptr, 0};
  CHECK(dkd_run_fsync(&bad, &none, &t) == DKD_INVALID_ARGUMENT);
  CHECK(t == nullptr);
}

TEST_CASE("capi: edge choices") {
  int64_t e = 0;
  CHECK(dkd_parse_edge_choice("none", 13, &e) == DKD_OK);
  CHECK(e == DKD_NO_EDGE);
  CHECK(dkd_parse_edge_choice(" 12 ", 13, &e) == DKD_OK);
  CHECK(e == 12);
  CHECK(dkd_parse_edge_choice("13", 13, &e) == DKD_INVALID_ARGUMENT);
  CHECK(dkd_parse_edge_choice("x", 13, &e) == DKD_INVALID_ARGUMENT);
}

TEST_CASE("capi: fsync run, records and checks") {
  dkd_trace* t = run(13, 3, 4, {DKD_ADV_NONE, 0, nullptr, 0});
  const auto out = dkd_trace_outcome(t);
  CHECK(out.kind == DKD_OUTCOME_TERMINATED);
  CHECK(out.rounds == 9);
  CHECK(dkd_trace_record_count(t) == 9);

  dkd_round_info r{};
  REQUIRE(dkd_trace_record(t, 0, &r) == DKD_OK);
  CHECK(r.round == 0);
  CHECK(r.missing_edge == DKD_NO_EDGE);
  CHECK(r.classification == DKD_CLASS_CHAIN);
  CHECK(r.phase == DKD_PHASE_SPREAD);
  CHECK(dkd_trace_record(t, 9, &r) == DKD_INVALID_ARGUMENT);

  size_t need = 0;
  CHECK(dkd_trace_record_occupancy(t, 0, nullptr, 0, &need) == DKD_OK);
  REQUIRE(need == 13);
  std::vector<uint32_t> occ(need);
  CHECK(dkd_trace_record_occupancy(t, 0, occ.data(), 3, &need) == DKD_BUFFER_TOO_SMALL);
  REQUIRE(dkd_trace_record_occupancy(t, 0, occ.data(), occ.size(), &need) == DKD_OK);
  CHECK(occ[0] == 4);

  size_t violations = 99;
  const auto text = read([&](char* b, size_t c, size_t* nd) {
    return dkd_trace_check(t, &violations, b, c, nd);
  });
  CHECK(violations == 0);
  CHECK(text.empty());
  dkd_trace_free(t);
}

TEST_CASE("capi: scripted and random adversaries are reproducible") {
  const int64_t script[] = {12, 0, DKD_NO_EDGE, 5, 3};
  dkd_trace* a = run(13, 3, 4, {DKD_ADV_SCRIPTED, 0, script, 5});
  dkd_trace* b = run(13, 3, 4, {DKD_ADV_SCRIPTED, 0, script, 5});
  CHECK(serialize(a) == serialize(b));
  dkd_round_info r{};
  REQUIRE(dkd_trace_record(a, 0, &r) == DKD_OK);
  CHECK(r.missing_edge == 12);
  dkd_trace_free(a);
  dkd_trace_free(b);

  dkd_trace* x = run(12, 2, 6, {DKD_ADV_RANDOM, 7, nullptr, 0});
  dkd_trace* y = run(12, 2, 6, {DKD_ADV_RANDOM, 7, nullptr, 0});
  CHECK(serialize(x) == serialize(y));
  CHECK(dkd_trace_outcome(x).rounds == 10);
  dkd_trace_free(x);
  dkd_trace_free(y);

  dkd_params p{13, 3, 4, 0, 0};
  dkd_adversary broken{DKD_ADV_SCRIPTED, 0, nullptr, 3};
  dkd_trace* t = nullptr;
  CHECK(dkd_run_fsync(&p, &broken, &t) == DKD_INVALID_ARGUMENT);
  const int64_t out_of_range[] = {13};
  dkd_adversary oor{DKD_ADV_SCRIPTED, 0, out_of_range, 1};
  CHECK(dkd_run_fsync(&p, &oor, &t) == DKD_INVALID_ARGUMENT);
}

TEST_CASE("capi: serialization round trip and file output") {
  dkd_trace* t = run(9, 3, 3, {DKD_ADV_GOOD_CHAIN, 0, nullptr, 0});
  const auto text = serialize(t);
  CHECK(text.find("\"good-chain\"") != std::string::npos);

  dkd_trace* back = nullptr;
  REQUIRE(dkd_trace_parse(text.data(), text.size(), &back) == DKD_OK);
  CHECK(serialize(back) == text);
  CHECK(dkd_trace_parse("{", 1, &back) == DKD_INVALID_ARGUMENT);

  char small[4];
  size_t need = 0;
  CHECK(dkd_trace_serialize(t, small, sizeof small, &need) == DKD_BUFFER_TOO_SMALL);
  CHECK(need == text.size() + 1);

  CHECK(dkd_trace_write_file(t, "/nonexistent-dir/trace.jsonl") == DKD_IO);
  dkd_trace_free(t);
  dkd_trace_free(back);
}

TEST_CASE("capi: ssync demo freezes") {
  dkd_params p{13, 3, 4, 0, 0};
  dkd_trace* t = nullptr;
  REQUIRE(dkd_run_ssync_demo(&p, 50, &t) == DKD_OK);
  CHECK(dkd_trace_outcome(t).kind == DKD_OUTCOME_FROZEN);
  REQUIRE(dkd_trace_record_count(t) == 50);
  std::vector<uint32_t> first(13), occ(13);
  size_t need = 0;
  REQUIRE(dkd_trace_record_occupancy(t, 0, first.data(), 13, &need) == DKD_OK);
  for (size_t i = 0; i < 50; ++i) {
    dkd_round_info r{};
    REQUIRE(dkd_trace_record(t, i, &r) == DKD_OK);
    CHECK(r.activated_robot == 1 + i % 4);
    REQUIRE(dkd_trace_record_occupancy(t, i, occ.data(), 13, &need) == DKD_OK);
    CHECK(occ == first);
  }
  size_t violations = 0;
  CHECK(dkd_trace_check(t, &violations, nullptr, 0, &need) == DKD_INVALID_ARGUMENT);
  dkd_trace_free(t);

  dkd_params lone{13, 3, 1, 0, 0};
  CHECK(dkd_run_ssync_demo(&lone, 5, &t) != DKD_OK);
}

TEST_CASE("capi: a session driven edge by edge matches the batch run") {
  dkd_params p{13, 3, 4, 0, 0};
  dkd_session* s = nullptr;
  REQUIRE(dkd_session_create(&p, "none", &s) == DKD_OK);
  CHECK(dkd_session_classification(s) == DKD_CLASS_CHAIN);
  CHECK(read([&](char* b, size_t c, size_t* nd) { return dkd_session_render(s, 12, b, c, nd); }) ==
        "4-.-.-.-.-.-.-.-.-.-.-.-.x");
  CHECK(dkd_session_step(s, 13) == DKD_INVALID_ARGUMENT);
  while (!dkd_session_finished(s)) REQUIRE(dkd_session_step(s, DKD_NO_EDGE) == DKD_OK);
  CHECK(dkd_session_round(s) == 9);
  CHECK(dkd_session_classification(s) == DKD_CLASS_TARGET);
  CHECK(dkd_session_step(s, DKD_NO_EDGE) != DKD_OK);

  dkd_trace* from_session = nullptr;
  REQUIRE(dkd_session_trace(s, &from_session) == DKD_OK);
  dkd_trace* batch = run(13, 3, 4, {DKD_ADV_NONE, 0, nullptr, 0});
  CHECK(serialize(from_session) == serialize(batch));
  dkd_trace_free(from_session);
  dkd_trace_free(batch);
  dkd_session_free(s);
}

TEST_CASE("capi: verification") {
  dkd_report* r = nullptr;
  REQUIRE(dkd_verify(9, 3, 3, nullptr, &r) == DKD_OK);
  dkd_report_info info{};
  REQUIRE(dkd_report_info_get(r, &info) == DKD_OK);
  CHECK(info.certified == 1);
  CHECK(info.worst_case_rounds == 6);
  CHECK(info.bound == 6);
  CHECK(info.violation_count == 0);
  CHECK(info.has_counterexample == 0);
  dkd_trace* ce = nullptr;
  CHECK(dkd_report_counterexample(r, &ce) == DKD_INAPPLICABLE);
  const auto json =
      read([&](char* b, size_t c, size_t* nd) { return dkd_report_serialize(r, b, c, nd); });
  CHECK(json.find("\"certified\":true") != std::string::npos);
  dkd_report_free(r);

  r = nullptr;
  CHECK(dkd_verify(40, 3, 13, nullptr, &r) == DKD_CAP_EXCEEDED);
  CHECK(r == nullptr);
  CHECK(std::string(dkd_last_error()).find("instance too large") != std::string::npos);

  dkd_verify_options tiny{12, 2};
  CHECK(dkd_verify(12, 2, 6, &tiny, &r) == DKD_CAP_EXCEEDED);
  CHECK(dkd_verify(9, 3, 4, nullptr, &r) == DKD_INVALID_ARGUMENT);
}

TEST_CASE("capi: null handles are rejected") {
  CHECK(dkd_trace_record_count(nullptr) == 0);
  dkd_round_info r{};
  CHECK(dkd_trace_record(nullptr, 0, &r) == DKD_INVALID_ARGUMENT);
  CHECK(dkd_report_info_get(nullptr, nullptr) == DKD_INVALID_ARGUMENT);
  dkd_trace_free(nullptr);
  dkd_report_free(nullptr);
  dkd_session_free(nullptr);
}
