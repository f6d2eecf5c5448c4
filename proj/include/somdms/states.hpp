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

#ifndef SOMDMS_STATES_HPP
#define SOMDMS_STATES_HPP

#include <array>

#include "somdms/qmath.hpp"

namespace somdms {

/// Four amplitudes over {Hh, Hv, Vh, Vv} == {|00>, |01>, |10>, |11>}.
using Amplitudes = std::array<Complex, 4>;

/// Parameters of the maximally discordant family
///   eps |Phi+(p)><Phi+(p)| + (1 - eps) [m |01><01| + (1 - m) |10><10|].
struct StateParams {
    double p = 0.5;        // Bell imbalance
    double m = 1.0;        // weight of |01> inside the product part
    double epsilon = 0.0;  // weight of the coherent part
};

/// sqrt(p)|00> + sqrt(1-p)|11>, real non-negative amplitudes.
Amplitudes partial_bell(double p);

DensityMatrix4 mdms(const StateParams& params);
/// mdms with m = 1: rank <= 2.
DensityMatrix4 rank2(double p, double epsilon);
/// mdms with p = 1/2: rank <= 3.
DensityMatrix4 rank3(double m, double epsilon);

}  // namespace somdms

#endif  // SOMDMS_STATES_HPP
