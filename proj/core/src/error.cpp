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

#include "valgame/error.hpp"

namespace valgame {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kInvalidGroundSet: return "invalid-ground-set";
    case ErrorCode::kEnumerationTooLarge: return "enumeration-too-large";
    case ErrorCode::kRange: return "range";
    case ErrorCode::kParse: return "parse";
    case ErrorCode::kIo: return "io";
    case ErrorCode::kUndefinedMetric: return "undefined-metric";
    case ErrorCode::kGuard: return "guard";
    case ErrorCode::kInfeasible: return "infeasible";
    case ErrorCode::kBudgetTooSmall: return "budget-too-small";
    case ErrorCode::kIncompleteSamples: return "incomplete-samples";
    case ErrorCode::kWrongVariant: return "wrong-variant";
    case ErrorCode::kConfig: return "config";
  }
  return "unknown";
}

}  // namespace valgame
