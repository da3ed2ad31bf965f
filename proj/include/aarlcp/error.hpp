// Copyright 2026 The aarlcp Authors
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

#ifndef AARLCP_ERROR_HPP_
#define AARLCP_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace aarlcp {

enum class ErrorCode {
  kDimensionMismatch,
  kInvalidArgument,
  kParse,
  kEmptyUncertaintySet,
  kNotCompact,
  kRelintViolation,
  kNumericalFailure,
  kNodeLimitExceeded,
  kOracleLimitExceeded,
};

const char* to_string(ErrorCode code);

// All library failures are reported through this one exception type; the
// code says which contract was broken.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

  // Input problems (bad shapes, malformed files, violated standing
  // assumptions) as opposed to solver-side failures.
  bool is_input_error() const noexcept {
    return code_ != ErrorCode::kNumericalFailure &&
           code_ != ErrorCode::kNodeLimitExceeded;
  }

 private:
  ErrorCode code_;
};

}  // namespace aarlcp

#endif  // AARLCP_ERROR_HPP_
