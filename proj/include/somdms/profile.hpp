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

// Transverse detection-probability maps of spin-orbit states, using
// waist-plane first-order Hermite-Gaussian modes (h = HG01, v = HG10).

#ifndef SOMDMS_PROFILE_HPP
#define SOMDMS_PROFILE_HPP

#include <string>
#include <vector>

#include "somdms/optics.hpp"
#include "somdms/qmath.hpp"

namespace somdms {

struct GridConfig {
    double half_width = 4.0;  // in units of the waist
    int samples = 256;        // per axis
    double waist = 1.0;
};

void validate(const GridConfig& grid);

struct IntensityMap {
    GridConfig grid;
    std::vector<double> values;  // values[iy * samples + ix], both axes ascending

    double step() const { return 2.0 * grid.half_width * grid.waist / grid.samples; }
    /// Cell-center coordinate of sample k along either axis.
    double coordinate(int k) const;
    double at(int ix, int iy) const { return values[static_cast<std::size_t>(iy) * grid.samples + ix]; }
    /// Riemann sum over cells.
    double integral() const;
};

/// Unit-L2-norm mode function; HG10 = sqrt(8/pi) (x/w^2) exp(-(x^2+y^2)/w^2).
double hg_amplitude(Mode mode, double x, double y, double waist = 1.0);

IntensityMap intensity_map(const DensityMatrix4& rho, const GridConfig& grid = {});

struct ModeFractions {
    double h = 0.0;
    double v = 0.0;
};

/// Share of intensity in each mode, from second moments of the map:
/// h = 1/2 + (<y^2> - <x^2>) / w^2.
ModeFractions mode_fractions(const IntensityMap& map);

/// Plain PGM (P2), top row is the largest y, peak scaled to 65535.
std::string to_pgm(const IntensityMap& map);
/// Columns x,y,intensity.
std::string to_csv(const IntensityMap& map);

}  // namespace somdms

#endif  // SOMDMS_PROFILE_HPP
