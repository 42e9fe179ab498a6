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

#ifndef DKD_CORE_ERROR_HPP_
#define DKD_CORE_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace dkd {

enum class ErrorCode {
  kInvalidArgument,
  kNoRobots,
  kIllegalTraversal,
  kNotChainClassifiable,
  kHeadUndefined,
  kProtocolCannotAct,
  kInapplicable,
  kCapExceeded,
  kIo,
};

const char* error_code_name(ErrorCode code);

/**
 * Single exception type thrown by the core library. The code survives the
 * trip through the C API as a status value; the message is kept verbatim.
 */
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dkd

#endif  // DKD_CORE_ERROR_HPP_
