/*
 * Copyright 2026 The lincap Authors
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

#include "lincap/error.hpp"

namespace lincap {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Overflow: return "overflow";
    case ErrorCode::DimensionCap: return "dimension-cap-exceeded";
    case ErrorCode::InvalidModeSplit: return "invalid-mode-split";
    case ErrorCode::ModeCountMismatch: return "mode-count-mismatch";
    case ErrorCode::BasisMismatch: return "basis-mismatch";
    case ErrorCode::SizeCap: return "size-cap-exceeded";
    case ErrorCode::NonConvergence: return "non-convergence";
    case ErrorCode::TraceViolation: return "trace-violation";
    case ErrorCode::Inconclusive: return "inconclusive-gap";
    case ErrorCode::IndexOutOfRange: return "index-out-of-range";
    case ErrorCode::SolverFailure: return "solver-failure";
    case ErrorCode::Parse: return "parse-error";
    case ErrorCode::Io: return "io-error";
  }
  return "unknown";
}

}  // namespace lincap
