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

#include "somdms/optics.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <set>

namespace somdms {

namespace {

constexpr Complex kI{0.0, 1.0};

std::size_t index_of(Polarization pol, Mode mode) {
    return 2 * static_cast<std::size_t>(pol) + static_cast<std::size_t>(mode);
}

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

// Applies a 2x2 Jones matrix to the polarization qubit (A) or the mode qubit (B).
SpinOrbitKet apply_on(const ComplexMatrix& j, const SpinOrbitKet& k, bool polarization) {
    SpinOrbitKet out;
    for (std::size_t a = 0; a < 2; ++a) {
        for (std::size_t b = 0; b < 2; ++b) {
            Complex acc = 0.0;
            for (std::size_t x = 0; x < 2; ++x) {
                acc += polarization ? j(a, x) * k[2 * x + b] : j(b, x) * k[2 * a + x];
            }
            out[2 * a + b] = acc;
        }
    }
    return out;
}

// Product kets only: the masks and preparers are ideal re-preparations of one
// qubit, which is undefined on an entangled input.
void require_product(const SpinOrbitKet& k, const char* what) {
    const double det = std::abs(k[0] * k[3] - k[1] * k[2]);
    if (det > 1e-12) {
        throw std::invalid_argument(std::string(what) + " requires a product spin-orbit input");
    }
}

SpinOrbitKet set_mode(const SpinOrbitKet& k, Mode mode) {
    require_product(k, "MASK");
    const double n0 = std::norm(k[0]) + std::norm(k[2]);
    const double n1 = std::norm(k[1]) + std::norm(k[3]);
    const std::size_t col = n0 >= n1 ? 0 : 1;
    const double col_norm = std::sqrt(std::max(n0, n1));
    SpinOrbitKet out;
    if (col_norm == 0.0) return out;
    const double scale = std::sqrt(k.norm2()) / col_norm;
    const std::size_t m = static_cast<std::size_t>(mode);
    out[m] = k[col] * scale;
    out[2 + m] = k[2 + col] * scale;
    return out;
}

SpinOrbitKet set_polarization(const SpinOrbitKet& k, Polarization pol) {
    require_product(k, "POLPREP");
    const double n0 = std::norm(k[0]) + std::norm(k[1]);
    const double n1 = std::norm(k[2]) + std::norm(k[3]);
    const std::size_t row = n0 >= n1 ? 0 : 1;
    const double row_norm = std::sqrt(std::max(n0, n1));
    SpinOrbitKet out;
    if (row_norm == 0.0) return out;
    const double scale = std::sqrt(k.norm2()) / row_norm;
    const std::size_t p = static_cast<std::size_t>(pol);
    out[2 * p] = k[2 * row] * scale;
    out[2 * p + 1] = k[2 * row + 1] * scale;
    return out;
}

void validate_element(const Element& e) {
    if (is_splitter(e.spec)) {
        if (!e.routes) throw std::invalid_argument(kind_name(e.spec) + " on '" + e.path + "' has no routes");
        if (e.routes->transmitted == e.routes->reflected) {
            throw std::invalid_argument(kind_name(e.spec) + " on '" + e.path + "' routes both ports to one path");
        }
    } else if (e.routes) {
        throw std::invalid_argument(kind_name(e.spec) + " does not route");
    }
    std::visit(overloaded{
                   [](const BeamSplitter& bs) {
                       if (bs.r < 0.0 || bs.t < 0.0 || bs.r * bs.r + bs.t * bs.t > 1.0 + 1e-12) {
                           throw std::invalid_argument("BS requires r, t >= 0 and r^2 + t^2 <= 1");
                       }
                   },
                   [](const NeutralFilter& nf) {
                       if (!(nf.t >= 0.0 && nf.t <= 1.0)) throw std::invalid_argument("NF requires t in [0, 1]");
                   },
                   [](const auto&) {},
               },
               e.spec);
}

void require_declared(const Circuit& c, const std::string& name, const char* role) {
    if (!c.has_path(name)) throw std::invalid_argument(std::string(role) + " refers to undeclared path '" + name + "'");
}

void check_acyclic(const Circuit& c) {
    std::map<std::string, std::set<std::string>> edges;
    for (const Element& e : c.elements) {
        if (e.routes) {
            edges[e.path].insert(e.routes->transmitted);
            edges[e.path].insert(e.routes->reflected);
        }
    }
    // 0 = unvisited, 1 = on stack, 2 = done.
    std::map<std::string, int> state;
    std::function<void(const std::string&)> visit = [&](const std::string& node) {
        state[node] = 1;
        for (const std::string& next : edges[node]) {
            if (state[next] == 1) throw std::invalid_argument("cyclic routing through path '" + next + "'");
            if (state[next] == 0) visit(next);
        }
        state[node] = 2;
    };
    for (const auto& [node, unused] : edges) {
        if (state[node] == 0) visit(node);
    }
}

// Coherent merge of branches sharing (source, path), first-appearance order.
std::vector<Branch> merge(std::vector<Branch> branches) {
    std::vector<Branch> out;
    for (Branch& b : branches) {
        auto it = std::find_if(out.begin(), out.end(),
                               [&](const Branch& o) { return o.source == b.source && o.path == b.path; });
        if (it == out.end()) {
            out.push_back(std::move(b));
        } else {
            it->ket += b.ket;
        }
    }
    std::erase_if(out, [](const Branch& b) { return b.ket.norm2() == 0.0; });
    return out;
}

}  // namespace

SpinOrbitKet SpinOrbitKet::basis(Polarization pol, Mode mode) {
    SpinOrbitKet k;
    k[index_of(pol, mode)] = 1.0;
    return k;
}

double SpinOrbitKet::norm2() const {
    double s = 0.0;
    for (const Complex& a : a_) s += std::norm(a);
    return s;
}

SpinOrbitKet& SpinOrbitKet::operator+=(const SpinOrbitKet& other) {
    for (std::size_t i = 0; i < 4; ++i) a_[i] += other.a_[i];
    return *this;
}

SpinOrbitKet& SpinOrbitKet::operator*=(Complex s) {
    for (Complex& a : a_) a *= s;
    return *this;
}

bool is_splitter(const ElementSpec& spec) {
    return std::holds_alternative<PolarizingBeamSplitter>(spec) || std::holds_alternative<BeamSplitter>(spec);
}

std::string kind_name(const ElementSpec& spec) {
    return std::visit(overloaded{
                          [](const HalfWavePlate&) { return "HWP"; },
                          [](const DovePrism&) { return "DP"; },
                          [](const PolarizingBeamSplitter&) { return "PBS"; },
                          [](const BeamSplitter&) { return "BS"; },
                          [](const NeutralFilter&) { return "NF"; },
                          [](const PhaseShift&) { return "PHASE"; },
                          [](const ModeMask&) { return "MASK"; },
                          [](const PolarizationPrep&) { return "POLPREP"; },
                          [](const Block&) { return "BLOCK"; },
                          [](const Mirror&) { return "MIRROR"; },
                      },
                      spec);
}

double Ensemble::detection_probability() const {
    double total = 0.0;
    for (const Branch& b : branches) total += b.weight * b.ket.norm2();
    return total;
}

bool Circuit::has_path(const std::string& name) const {
    return std::find(paths.begin(), paths.end(), name) != paths.end();
}

void Circuit::declare_path(const std::string& name) {
    if (!has_path(name)) paths.push_back(name);
}

ComplexMatrix half_wave_plate_matrix(double theta) {
    const double c = std::cos(2 * theta);
    const double s = std::sin(2 * theta);
    return ComplexMatrix(2, {c, s, s, -c});
}

std::vector<Branch> apply_element(const Element& element, const Branch& branch) {
    if (branch.path != element.path) {
        throw std::invalid_argument("branch on path '" + branch.path + "' does not reach " + kind_name(element.spec) +
                                    " on '" + element.path + "'");
    }
    validate_element(element);
    const auto single = [&](SpinOrbitKet k) {
        Branch out = branch;
        out.ket = k;
        return std::vector<Branch>{out};
    };
    const auto split = [&](SpinOrbitKet transmitted, SpinOrbitKet reflected) {
        Branch t = branch;
        Branch r = branch;
        t.path = element.routes->transmitted;
        t.ket = transmitted;
        r.path = element.routes->reflected;
        r.ket = reflected;
        return std::vector<Branch>{t, r};
    };
    const SpinOrbitKet& k = branch.ket;
    return std::visit(
        overloaded{
            [&](const HalfWavePlate& e) { return single(apply_on(half_wave_plate_matrix(e.theta), k, true)); },
            [&](const DovePrism& e) { return single(apply_on(half_wave_plate_matrix(e.alpha), k, false)); },
            [&](const PolarizingBeamSplitter&) {
                SpinOrbitKet t;
                SpinOrbitKet r;
                t[0] = k[0];
                t[1] = k[1];
                r[2] = kI * k[2];
                r[3] = kI * k[3];
                return split(t, r);
            },
            [&](const BeamSplitter& e) { return split(Complex(e.t) * k, kI * e.r * k); },
            [&](const NeutralFilter& e) { return single(Complex(e.t) * k); },
            [&](const PhaseShift& e) { return single(std::polar(1.0, e.phi) * k); },
            [&](const ModeMask& e) { return single(set_mode(k, e.mode)); },
            [&](const PolarizationPrep& e) { return single(set_polarization(k, e.pol)); },
            [&](const Block&) { return std::vector<Branch>{}; },
            [&](const Mirror&) { return single(Complex(-1.0) * k); },
        },
        element.spec);
}

Ensemble run_circuit(const Circuit& circuit) {
    for (const Source& s : circuit.sources) {
        require_declared(circuit, s.path, "source");
        if (!(s.weight >= 0.0 && s.weight <= 1.0)) throw std::invalid_argument("source weight must lie in [0, 1]");
    }
    for (const Element& e : circuit.elements) {
        require_declared(circuit, e.path, "element");
        validate_element(e);
        if (e.routes) {
            require_declared(circuit, e.routes->transmitted, "route");
            require_declared(circuit, e.routes->reflected, "route");
        }
    }
    for (const std::string& sink : circuit.sinks) require_declared(circuit, sink, "sink");
    check_acyclic(circuit);

    std::vector<Branch> branches;
    for (std::size_t i = 0; i < circuit.sources.size(); ++i) {
        const Source& s = circuit.sources[i];
        branches.push_back({s.weight, s.path, SpinOrbitKet::basis(s.pol, s.mode), i});
    }
    for (const Element& e : circuit.elements) {
        std::vector<Branch> next;
        for (const Branch& b : branches) {
            if (b.path != e.path) {
                next.push_back(b);
                continue;
            }
            for (Branch& out : apply_element(e, b)) next.push_back(std::move(out));
        }
        branches = merge(std::move(next));
    }

    Ensemble out;
    for (Branch& b : branches) {
        if (std::find(circuit.sinks.begin(), circuit.sinks.end(), b.path) != circuit.sinks.end()) {
            out.branches.push_back(std::move(b));
        }
    }
    return out;
}

DensityMatrix4 ensemble_density(const Ensemble& ensemble) {
    const double total = ensemble.detection_probability();
    if (!(total > 1e-12)) throw DegenerateStateError("ensemble has zero detection probability");
    ComplexMatrix rho(4);
    for (const Branch& b : ensemble.branches) {
        rho = rho + ComplexMatrix::projector(b.ket.amplitudes()) * Complex(b.weight / total);
    }
    // Restore exact Hermiticity lost to rounding in the sum.
    return DensityMatrix4((rho + rho.adjoint()) * Complex(0.5));
}

Circuit mz_circuit(double theta, double phi, Mode slm_mode) {
    Circuit c;
    for (const char* p : {"in", "arm_h", "arm_v", "mz_out", "mz_dump"}) c.declare_path(p);
    c.sources.push_back({"in", 1.0, Polarization::H, slm_mode});
    c.elements = {
        {ModeMask{slm_mode}, "in", {}},
        {HalfWavePlate{theta}, "in", {}},
        {PolarizingBeamSplitter{}, "in", Routes{"arm_h", "arm_v"}},
        {DovePrism{M_PI / 4}, "arm_v", {}},
        // The V arm picks up i from each PBS reflection; the piezo is set to
        // cancel that -1 so phi is the net phase between the arms.
        {PhaseShift{phi + M_PI}, "arm_v", {}},
        {PolarizingBeamSplitter{}, "arm_h", Routes{"mz_out", "mz_dump"}},
        {PolarizingBeamSplitter{}, "arm_v", Routes{"mz_dump", "mz_out"}},
    };
    c.sinks = {"mz_out"};
    return c;
}

Circuit mdms_circuit(double theta, double phi, double m, double epsilon, const SourceProbabilities& sources) {
    const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
    if (!in_unit(m) || !in_unit(epsilon)) throw std::invalid_argument("m and epsilon must lie in [0, 1]");
    if (!in_unit(sources.first) || !in_unit(sources.second) || !in_unit(sources.third)) {
        throw std::invalid_argument("source probabilities must lie in [0, 1]");
    }
    if (!std::isfinite(theta) || !std::isfinite(phi)) throw std::invalid_argument("angles must be finite");

    Circuit c = mz_circuit(theta, phi, Mode::h);
    // Rename the first source path so the three inputs read s1, s2, s3.
    c.paths[0] = "s1";
    c.sources[0].path = "s1";
    c.sources[0].weight = sources.first;
    for (Element& e : c.elements) {
        if (e.path == "in") e.path = "s1";
    }
    for (const char* p : {"s2", "s3", "p23", "pbs3_dump", "out", "bb"}) c.declare_path(p);
    c.sources.push_back({"s2", sources.second, Polarization::H, Mode::v});
    c.sources.push_back({"s3", sources.third, Polarization::V, Mode::h});

    const BeamSplitter mix{M_SQRT1_2, M_SQRT1_2};
    const std::vector<Element> tail = {
        {NeutralFilter{std::sqrt(epsilon)}, "mz_out", {}},
        {mix, "mz_out", Routes{"bb", "out"}},
        {ModeMask{Mode::v}, "s2", {}},
        {PolarizationPrep{Polarization::H}, "s2", {}},
        {NeutralFilter{std::sqrt(m)}, "s2", {}},
        {ModeMask{Mode::h}, "s3", {}},
        {PolarizationPrep{Polarization::V}, "s3", {}},
        {NeutralFilter{std::sqrt(1.0 - m)}, "s3", {}},
        {PolarizingBeamSplitter{}, "s2", Routes{"p23", "pbs3_dump"}},
        {PolarizingBeamSplitter{}, "s3", Routes{"pbs3_dump", "p23"}},
        {NeutralFilter{std::sqrt(1.0 - epsilon)}, "p23", {}},
        {mix, "p23", Routes{"out", "bb"}},
        {Block{}, "bb", {}},
    };
    c.elements.insert(c.elements.end(), tail.begin(), tail.end());
    c.sinks = {"out"};
    return c;
}

}  // namespace somdms
