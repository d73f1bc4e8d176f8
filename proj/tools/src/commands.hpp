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

#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "dhdcert/error.hpp"

namespace dhdcert::cli {

/// Failures that only exist at the command-line layer.
class CliError : public std::runtime_error {
   public:
    CliError(std::string code, int exit_code, const std::string &message)
        : std::runtime_error(message), code_(std::move(code)), exit_code_(exit_code) {
    }
    const std::string &code() const noexcept {
        return code_;
    }
    int exit_code() const noexcept {
        return exit_code_;
    }

   private:
    std::string code_;
    int exit_code_;
};

inline constexpr int kExitInsufficientSamples = 12;
inline constexpr int kExitReplayMismatch = 13;
inline constexpr int kExitInternal = 70;

/// Distinct, stable exit status per library error code (usage = 2).
int exit_code_for(ErrorCode code);

/// Runs the tool on argv (argv[0] is the program name). Results go to `out`;
/// errors are reported on `err` as {"error":{"code":..,"message":..}}.
int run(const std::vector<std::string> &argv, std::ostream &out, std::ostream &err);

}  // namespace dhdcert::cli
