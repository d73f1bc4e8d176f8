// Copyright 2026 The dhdcert Authors
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

#include "dhdcert/error.hpp"

namespace dhdcert {

std::string_view error_code_name(ErrorCode code) {
    switch (code) {
        case ErrorCode::kConfig:
            return "config";
        case ErrorCode::kDomain:
            return "domain";
        case ErrorCode::kCutoff:
            return "cutoff";
        case ErrorCode::kUndefinedSubtraction:
            return "undefined_subtraction";
        case ErrorCode::kEnvelopeViolation:
            return "envelope_violation";
        case ErrorCode::kInfeasiblePrecision:
            return "infeasible_precision";
        case ErrorCode::kUnsupported:
            return "unsupported";
        case ErrorCode::kOptimizerFailure:
            return "optimizer_failure";
        case ErrorCode::kUsage:
            return "usage";
        case ErrorCode::kIo:
            return "io";
    }
    return "unknown";
}

}  // namespace dhdcert
