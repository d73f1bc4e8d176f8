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

#include <array>
#include <functional>

namespace dhdcert {

/// Result of one Nelder-Mead run on a 4-dimensional problem.
struct NelderMeadResult {
    std::array<double, 4> x{};
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;
};

struct NelderMeadOptions {
    double initial_step = 0.3;
    /// Stop when the spread of simplex values and the simplex diameter are
    /// both below these thresholds.
    double f_tolerance = 1e-14;
    double x_tolerance = 1e-9;
    int max_evaluations = 6000;
    /// Number of times the simplex is rebuilt around the incumbent after
    /// convergence, to guard against premature collapse.
    int rebuilds = 2;
};

/// Minimises f with the classic simplex method (reflection 1, expansion 2,
/// contraction 1/2, shrink 1/2).
NelderMeadResult nelder_mead(const std::function<double(const std::array<double, 4> &)> &f,
                             std::array<double, 4> start, const NelderMeadOptions &options = {});

}  // namespace dhdcert
