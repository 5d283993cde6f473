// Copyright 2026 The Compromise Authors
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

#include "core/error.hpp"

namespace compromise {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kDomain: return "domain error";
    case ErrorCode::kConfig: return "config error";
    case ErrorCode::kNotFound: return "not found";
    case ErrorCode::kCapacity: return "capacity exceeded";
    case ErrorCode::kNumeric: return "numeric failure";
    case ErrorCode::kNotMonotone: return "not monotone";
    case ErrorCode::kNonRegular: return "non-regular problem";
  }
  return "unknown error";
}

}  // namespace compromise
