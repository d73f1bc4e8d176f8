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

#include "dhdcert/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace dhdcert {
namespace {

constexpr int kDim = 4;
using Point = std::array<double, kDim>;

struct Simplex {
    std::array<Point, kDim + 1> x;
    std::array<double, kDim + 1> f;
};

Point lerp(const Point &a, const Point &b, double t) {
    Point out;
    for (int i = 0; i < kDim; ++i) {
        out[i] = a[i] + t * (b[i] - a[i]);
    }
    return out;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Point &)> &f, Point start,
                             const NelderMeadOptions &options) {
    NelderMeadResult result;
    auto eval = [&](const Point &p) {
        ++result.evaluations;
        double v = f(p);
        return std::isfinite(v) ? v : std::numeric_limits<double>::max();
    };

    Point best = start;
    double best_f = eval(start);
    for (int round = 0; round <= options.rebuilds; ++round) {
        Simplex s;
        s.x[0] = best;
        s.f[0] = best_f;
        for (int i = 0; i < kDim; ++i) {
            s.x[i + 1] = best;
            s.x[i + 1][i] += options.initial_step;
            s.f[i + 1] = eval(s.x[i + 1]);
        }
        bool converged = false;
        while (result.evaluations < options.max_evaluations) {
            std::array<int, kDim + 1> order;
            std::iota(order.begin(), order.end(), 0);
            std::sort(order.begin(), order.end(), [&](int a, int b) { return s.f[a] < s.f[b]; });
            Simplex sorted;
            for (int i = 0; i <= kDim; ++i) {
                sorted.x[i] = s.x[order[i]];
                sorted.f[i] = s.f[order[i]];
            }
            s = sorted;

            double diameter = 0.0;
            for (int i = 1; i <= kDim; ++i) {
                for (int d = 0; d < kDim; ++d) {
                    diameter = std::max(diameter, std::abs(s.x[i][d] - s.x[0][d]));
                }
            }
            if (s.f[kDim] - s.f[0] <= options.f_tolerance && diameter <= options.x_tolerance) {
                converged = true;
                break;
            }

            Point centroid{};
            for (int i = 0; i < kDim; ++i) {
                for (int d = 0; d < kDim; ++d) {
                    centroid[d] += s.x[i][d] / kDim;
                }
            }
            Point reflected = lerp(centroid, s.x[kDim], -1.0);
            double fr = eval(reflected);
            if (fr < s.f[0]) {
                Point expanded = lerp(centroid, s.x[kDim], -2.0);
                double fe = eval(expanded);
                if (fe < fr) {
                    s.x[kDim] = expanded;
                    s.f[kDim] = fe;
                } else {
                    s.x[kDim] = reflected;
                    s.f[kDim] = fr;
                }
            } else if (fr < s.f[kDim - 1]) {
                s.x[kDim] = reflected;
                s.f[kDim] = fr;
            } else {
                bool outside = fr < s.f[kDim];
                Point contracted = outside ? lerp(centroid, reflected, 0.5)
                                           : lerp(centroid, s.x[kDim], 0.5);
                double fc = eval(contracted);
                if (fc < std::min(fr, s.f[kDim])) {
                    s.x[kDim] = contracted;
                    s.f[kDim] = fc;
                } else {
                    for (int i = 1; i <= kDim; ++i) {
                        s.x[i] = lerp(s.x[0], s.x[i], 0.5);
                        s.f[i] = eval(s.x[i]);
                    }
                }
            }
        }
        int arg = static_cast<int>(std::min_element(s.f.begin(), s.f.end()) - s.f.begin());
        best = s.x[arg];
        best_f = s.f[arg];
        result.converged = converged;
        if (!converged) {
            break;
        }
    }
    result.x = best;
    result.value = best_f;
    return result;
}

}  // namespace dhdcert
