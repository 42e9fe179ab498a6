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

#ifndef DKD_CORE_DEFINITION_ORACLE_HPP_
#define DKD_CORE_DEFINITION_ORACLE_HPP_

// Brute-force classification that tests every definition clause directly
// over all arcs of the ring. Slow (cubic in n) and deliberately shares no code
// with classifier.cpp or the arc helpers in ring.cpp, so the verifier can use
// it as an independent second opinion.

#include <cstdint>
#include <optional>

#include "core/classifier.hpp"

namespace dkd {

ClassifiedConfiguration classify_by_definition(const Occupancy& occ,
                                               std::optional<EdgeIndex> missing,
                                               std::uint32_t k);

}  // namespace dkd

#endif  // DKD_CORE_DEFINITION_ORACLE_HPP_
