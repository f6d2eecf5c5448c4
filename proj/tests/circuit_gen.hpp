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


// Random acyclic circuits for round-trip checks.

#ifndef SOMDMS_TESTS_CIRCUIT_GEN_HPP
#define SOMDMS_TESTS_CIRCUIT_GEN_HPP

#include <cmath>
#include <random>
#include <string>

#include "somdms/circuitfile.hpp"
#include "somdms/optics.hpp"

namespace somdms::testing {

inline double micro_degrees(std::mt19937_64& rng) {
    std::uniform_int_distribution<long> d(-360'000'000, 360'000'000);
    return degrees_to_radians(static_cast<double>(d(rng)) / 1e6);
}

// Acyclic by construction: routes only go to later paths.
inline Circuit random_circuit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::uniform_int_distribution<int> npaths(2, 8);
    Circuit c;
    const int n = npaths(rng);
    for (int i = 0; i < n; ++i) c.declare_path("p" + std::to_string(i));
    std::uniform_int_distribution<int> nsources(1, 3);
    const int ns = nsources(rng);
    for (int i = 0; i < ns; ++i) {
        c.sources.push_back({c.paths[rng() % n], u(rng), rng() % 2 ? Polarization::H : Polarization::V,
                             rng() % 2 ? Mode::h : Mode::v});
    }
    std::uniform_int_distribution<int> nelements(0, 12);
    const int ne = nelements(rng);
    for (int i = 0; i < ne; ++i) {
        const int at = static_cast<int>(rng() % (n - 1));
        const std::string& path = c.paths[at];
        const auto later = [&] { return c.paths[at + 1 + rng() % (n - 1 - at)]; };
        Element e{Block{}, path, {}};
        switch (rng() % 10) {
            case 0:
                e.spec = HalfWavePlate{micro_degrees(rng)};
                break;
            case 1:
                e.spec = DovePrism{micro_degrees(rng)};
                break;
            case 2:
                e.spec = PhaseShift{micro_degrees(rng)};
                break;
            case 3: {
                const double r = u(rng);
                e.spec = BeamSplitter{r, u(rng) * std::sqrt(1 - r * r)};
                break;
            }
            case 4:
                e.spec = NeutralFilter{u(rng)};
                break;
            case 5:
                e.spec = ModeMask{rng() % 2 ? Mode::h : Mode::v};
                break;
            case 6:
                e.spec = PolarizationPrep{rng() % 2 ? Polarization::H : Polarization::V};
                break;
            case 7:
                e.spec = PolarizingBeamSplitter{};
                break;
            case 8:
                e.spec = Mirror{};
                break;
            default:
                e.spec = Block{};
        }
        if (is_splitter(e.spec)) {
            std::string t = later();
            std::string r = later();
            if (t == r) {
                if (at + 2 >= n) {
                    e.spec = Mirror{};
                    c.elements.push_back(e);
                    continue;
                }
                r = t == c.paths[n - 1] ? c.paths[n - 2] : c.paths[n - 1];
                if (r == path) r = c.paths[n - 1];
            }
            e.routes = Routes{t, r};
        }
        c.elements.push_back(e);
    }
    c.sinks.push_back(c.paths[n - 1]);
    if (rng() % 2 && n > 2) c.sinks.push_back(c.paths[n - 2]);
    return c;
}

}  // namespace somdms::testing

#endif  // SOMDMS_TESTS_CIRCUIT_GEN_HPP
