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

#ifndef DKD_CORE_TRACE_IO_HPP_
#define DKD_CORE_TRACE_IO_HPP_

// Line-delimited JSON traces. Line one is a header with the run parameters,
// scheduler, adversary, warnings and outcome; every following line is one
// round record:
//
//   {"round":0,"missing_edge":null,"classification":"chain",
//    "occupancy":[4,0,...],"moves":[[1,"ccw"],[2,"stay"],...],"phase":"spread"}
//
// SSYNC records carry an extra "activated" id list. Output is compact with a
// fixed key order, so identical traces serialize to identical bytes.

#include <iosfwd>
#include <string>

#include "core/engine.hpp"

namespace dkd {

void write_trace(const Trace& trace, std::ostream& os);
std::string serialize_trace(const Trace& trace);

/// Inverse of write_trace. Throws kInvalidArgument on malformed input.
Trace read_trace(std::istream& is);

}  // namespace dkd

#endif  // DKD_CORE_TRACE_IO_HPP_
