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

#ifndef SOMDMS_OPTIMIZE_HPP
#define SOMDMS_OPTIMIZE_HPP

#include <array>
#include <functional>

namespace somdms {

using Point2 = std::array<double, 2>;

struct SimplexOptions {
    double diameter_tolerance = 1e-6;
    int max_evaluations = 500;
};

struct SimplexResult {
    Point2 best{};
    double value = 0.0;
    int evaluations = 0;
    bool converged = false;  // simplex diameter fell below tolerance
};

/// Nelder-Mead on a 2-D objective, starting from `start` with axis-aligned
/// initial edges of length `step`. The returned value never exceeds f(start).
SimplexResult nelder_mead_2d(const std::function<double(const Point2&)>& objective, const Point2& start,
                             const Point2& step, const SimplexOptions& options = {});

}  // namespace somdms

#endif  // SOMDMS_OPTIMIZE_HPP
