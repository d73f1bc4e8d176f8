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

#include <optional>
#include <string>
#include <string_view>

#include <nlohmann/json.hpp>

#include "dhdcert/fockspace.hpp"

namespace dhdcert::cli {

/// Builds a state from a constructor object or a pipeline array.
///
/// Constructors: fock{n,dim}, lossy_fock{n,eta,dim},
/// squeezed_thermal{r|db,theta,purity,dim}, core{coeffs,frame?,dim}.
/// Transforms (pipeline stages after the first): photon_subtract{},
/// photon_add{}, gaussian{r,theta,re_beta,im_beta,dim?}.
/// Schema errors are kUsage and name the offending JSON pointer.
TruncatedState build_state(const nlohmann::json &spec);

/// Parsed `--target` argument.
///
///   fock:N           |N><N|
///   witness:n=N      sum_{k<N} |2k+1><2k+1|   (also witness:N)
///   element:K,L      |K><L|
///   core:[c0,c1,..]  |C><C|, entries real or [re,im]
///   core:{"coeffs":[..],"frame":{..}}  framed core (profiles only)
struct TargetSpec {
    std::string text;
    std::optional<TargetOperator> op;
    std::optional<CoreState> core;
    std::optional<int> fock_n;
    std::optional<int> witness_n;
};

TargetSpec parse_target(std::string_view text);

/// "re,im" or "re" into a complex number; kUsage on failure.
cplx parse_complex(std::string_view text);

GaussianUnitaryParams parse_frame(const nlohmann::json &frame, const std::string &pointer);

}  // namespace dhdcert::cli
