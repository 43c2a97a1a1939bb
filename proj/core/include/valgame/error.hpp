// Copyright 2026 The valgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef VALGAME_ERROR_HPP_
#define VALGAME_ERROR_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace valgame {

enum class ErrorCode {
  kInvalidArgument,
  kInvalidGroundSet,
  kEnumerationTooLarge,
  kRange,
  kParse,
  kIo,
  kUndefinedMetric,
  kGuard,
  kInfeasible,
  kBudgetTooSmall,
  kIncompleteSamples,
  kWrongVariant,
  kConfig,
};

std::string_view ErrorCodeName(ErrorCode code);

// Every failure raised by the library carries one of the codes above so the
// command-line front end can map it to an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void Fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

inline void Require(bool condition, ErrorCode code, const std::string& message) {
  if (!condition) Fail(code, message);
}

}  // namespace valgame

#endif  // VALGAME_ERROR_HPP_
