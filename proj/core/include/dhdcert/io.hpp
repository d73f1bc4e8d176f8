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
#include <string>

#include "dhdcert/fockspace.hpp"

namespace dhdcert {

/// Writes {"dim", "re", "im", "trace_deficit"} with row-major matrices.
/// Doubles are printed with enough digits to round-trip exactly.
void write_state_json(const TruncatedState &state, std::ostream &out);

/// Inverse of write_state_json. Throws kIo on malformed input and propagates
/// the state validation errors.
TruncatedState read_state_json(std::istream &in);

TruncatedState load_state(const std::string &path);
void save_state(const TruncatedState &state, const std::string &path);

}  // namespace dhdcert
