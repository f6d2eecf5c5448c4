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

#include "somdms/profile.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "somdms/format.hpp"

namespace somdms {

void validate(const GridConfig& grid) {
    if (grid.samples < 16) throw std::invalid_argument("grid needs at least 16 samples per axis");
    if (!(grid.half_width > 0.0)) throw std::invalid_argument("grid half_width must be positive");
    if (!(grid.waist > 0.0)) throw std::invalid_argument("waist must be positive");
}

double IntensityMap::coordinate(int k) const { return -grid.half_width * grid.waist + (k + 0.5) * step(); }

double IntensityMap::integral() const {
    double total = 0.0;
    for (double v : values) total += v;
    return total * step() * step();
}

double hg_amplitude(Mode mode, double x, double y, double waist) {
    const double w2 = waist * waist;
    const double lobe = mode == Mode::v ? x : y;
    return std::sqrt(8.0 / M_PI) * (lobe / w2) * std::exp(-(x * x + y * y) / w2);
}

IntensityMap intensity_map(const DensityMatrix4& rho, const GridConfig& grid) {
    validate(grid);
    IntensityMap map{grid, {}};
    const int n = grid.samples;
    map.values.assign(static_cast<std::size_t>(n) * n, 0.0);

    const EigenSystem es = hermitian_eigensystem(rho.matrix());
    for (std::size_t k = 0; k < 4; ++k) {
        const double lambda = es.values[k];
        if (lambda <= 0.0) continue;
        const Complex a_hh = es.vectors(0, k);
        const Complex a_hv = es.vectors(1, k);
        const Complex a_vh = es.vectors(2, k);
        const Complex a_vv = es.vectors(3, k);
        for (int iy = 0; iy < n; ++iy) {
            const double y = map.coordinate(iy);
            for (int ix = 0; ix < n; ++ix) {
                const double x = map.coordinate(ix);
                const double uh = hg_amplitude(Mode::h, x, y, grid.waist);
                const double uv = hg_amplitude(Mode::v, x, y, grid.waist);
                map.values[static_cast<std::size_t>(iy) * n + ix] +=
                    lambda * (std::norm(a_hh * uh + a_hv * uv) + std::norm(a_vh * uh + a_vv * uv));
            }
        }
    }
    return map;
}

ModeFractions mode_fractions(const IntensityMap& map) {
    const int n = map.grid.samples;
    double total = 0.0;
    double xx = 0.0;
    double yy = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double y = map.coordinate(iy);
        for (int ix = 0; ix < n; ++ix) {
            const double x = map.coordinate(ix);
            const double v = map.at(ix, iy);
            total += v;
            xx += v * x * x;
            yy += v * y * y;
        }
    }
    if (!(total > 0.0)) throw std::invalid_argument("empty intensity map");
    const double w2 = map.grid.waist * map.grid.waist;
    const double h = 0.5 + (yy - xx) / total / w2;
    return {h, 1.0 - h};
}

std::string to_pgm(const IntensityMap& map) {
    const int n = map.grid.samples;
    const double peak = *std::max_element(map.values.begin(), map.values.end());
    std::ostringstream out;
    out << "P2\n" << n << ' ' << n << "\n65535\n";
    for (int iy = n - 1; iy >= 0; --iy) {
        for (int ix = 0; ix < n; ++ix) {
            const long level = peak > 0.0 ? std::lround(map.at(ix, iy) / peak * 65535.0) : 0;
            out << level << (ix + 1 < n ? ' ' : '\n');
        }
    }
    return out.str();
}

std::string to_csv(const IntensityMap& map) {
    const int n = map.grid.samples;
    std::string out = "x,y,intensity\n";
    for (int iy = 0; iy < n; ++iy) {
        const std::string y = format_real(map.coordinate(iy));
        for (int ix = 0; ix < n; ++ix) {
            out += format_real(map.coordinate(ix));
            out += ',';
            out += y;
            out += ',';
            out += format_real(map.at(ix, iy));
            out += '\n';
        }
    }
    return out;
}

}  // namespace somdms
