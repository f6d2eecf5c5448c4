// Copyright 2026 The somdms Authors
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

#include "somdms/optimize.hpp"

#include <algorithm>
#include <cmath>

namespace somdms {

namespace {

constexpr double kReflect = 1.0;
constexpr double kExpand = 2.0;
constexpr double kContract = 0.5;
constexpr double kShrink = 0.5;

Point2 along(const Point2& from, const Point2& to, double scale) {
    return {from[0] + scale * (to[0] - from[0]), from[1] + scale * (to[1] - from[1])};
}

double distance(const Point2& a, const Point2& b) { return std::hypot(a[0] - b[0], a[1] - b[1]); }

}  // namespace

SimplexResult nelder_mead_2d(const std::function<double(const Point2&)>& objective, const Point2& start,
                             const Point2& step, const SimplexOptions& options) {
    std::array<Point2, 3> x = {start, Point2{start[0] + step[0], start[1]}, Point2{start[0], start[1] + step[1]}};
    std::array<double, 3> fx{};
    int evaluations = 0;
    auto eval = [&](const Point2& p) {
        ++evaluations;
        return objective(p);
    };
    for (int i = 0; i < 3; ++i) fx[i] = eval(x[i]);

    auto diameter = [&] { return std::max({distance(x[0], x[1]), distance(x[0], x[2]), distance(x[1], x[2])}); };

    bool converged = false;
    while (true) {
        // Order best -> worst. Ties keep the earlier vertex first so the start
        // point is never displaced by an equal value.
        std::array<int, 3> idx = {0, 1, 2};
        std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) { return fx[a] < fx[b]; });
        x = {x[idx[0]], x[idx[1]], x[idx[2]]};
        fx = {fx[idx[0]], fx[idx[1]], fx[idx[2]]};

        if (diameter() < options.diameter_tolerance) {
            converged = true;
            break;
        }
        if (evaluations >= options.max_evaluations) break;

        const Point2 centroid = {0.5 * (x[0][0] + x[1][0]), 0.5 * (x[0][1] + x[1][1])};
        const Point2 reflected = along(centroid, x[2], -kReflect);
        const double fr = eval(reflected);

        if (fr < fx[0]) {
            const Point2 expanded = along(centroid, x[2], -kExpand);
            const double fe = eval(expanded);
            if (fe < fr) {
                x[2] = expanded;
                fx[2] = fe;
            } else {
                x[2] = reflected;
                fx[2] = fr;
            }
            continue;
        }
        if (fr < fx[1]) {
            x[2] = reflected;
            fx[2] = fr;
            continue;
        }
        const bool outside = fr < fx[2];
        const Point2 contracted = outside ? along(centroid, reflected, kContract) : along(centroid, x[2], kContract);
        const double fc = eval(contracted);
        if (fc <= (outside ? fr : fx[2])) {
            x[2] = contracted;
            fx[2] = fc;
            continue;
        }
        for (int i = 1; i < 3; ++i) {
            x[i] = along(x[0], x[i], kShrink);
            fx[i] = eval(x[i]);
        }
    }
    return {x[0], fx[0], evaluations, converged};
}

}  // namespace somdms
