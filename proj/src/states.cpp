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

#include "somdms/states.hpp"

#include <cmath>
#include <string>

namespace somdms {

namespace {

void require_probability(double value, const char* name) {
    if (!(value >= 0.0 && value <= 1.0)) {
        throw std::invalid_argument(std::string(name) + " must lie in [0, 1], got " + std::to_string(value));
    }
}

}  // namespace

Amplitudes partial_bell(double p) {
    require_probability(p, "p");
    return {std::sqrt(p), 0.0, 0.0, std::sqrt(1.0 - p)};
}

DensityMatrix4 mdms(const StateParams& params) {
    require_probability(params.p, "p");
    require_probability(params.m, "m");
    require_probability(params.epsilon, "epsilon");
    const Amplitudes bell = partial_bell(params.p);
    ComplexMatrix rho = ComplexMatrix::projector(bell) * Complex(params.epsilon);
    const double mixed = 1.0 - params.epsilon;
    rho(1, 1) += mixed * params.m;
    rho(2, 2) += mixed * (1.0 - params.m);
    return DensityMatrix4(std::move(rho));
}

DensityMatrix4 rank2(double p, double epsilon) { return mdms({.p = p, .m = 1.0, .epsilon = epsilon}); }

DensityMatrix4 rank3(double m, double epsilon) { return mdms({.p = 0.5, .m = m, .epsilon = epsilon}); }

}  // namespace somdms
