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

// Jones-calculus propagation of single-photon spin-orbit states.
//
// A photon lives on a named path and carries a two-qubit ket over
// polarization (H, V) and first-order transverse mode (h = HG01, v = HG10).
// Sources emit independently, so branches from different sources are never
// added coherently; they only meet as an incoherent mixture when the output
// density matrix is formed.
//
// Phase conventions: reflection off a BS or PBS multiplies by i, a mirror by
// -1.

#ifndef SOMDMS_OPTICS_HPP
#define SOMDMS_OPTICS_HPP

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "somdms/qmath.hpp"

namespace somdms {

enum class Polarization { H, V };
enum class Mode { h, v };

class SpinOrbitKet {
   public:
    SpinOrbitKet() = default;
    explicit SpinOrbitKet(std::array<Complex, 4> amplitudes) : a_(amplitudes) {}
    static SpinOrbitKet basis(Polarization pol, Mode mode);

    Complex& operator[](std::size_t i) { return a_[i]; }
    const Complex& operator[](std::size_t i) const { return a_[i]; }
    const std::array<Complex, 4>& amplitudes() const { return a_; }

    /// Survival probability of the branch.
    double norm2() const;

    SpinOrbitKet& operator+=(const SpinOrbitKet& other);
    SpinOrbitKet& operator*=(Complex s);
    friend SpinOrbitKet operator*(Complex s, SpinOrbitKet k) { return k *= s; }
    friend bool operator==(const SpinOrbitKet&, const SpinOrbitKet&) = default;

   private:
    std::array<Complex, 4> a_{};
};

/// Half-wave plate, fast axis at `theta` from horizontal.
struct HalfWavePlate {
    double theta = 0.0;
    friend bool operator==(const HalfWavePlate&, const HalfWavePlate&) = default;
};
/// Dove prism at `alpha`; on {h, v} it has the half-wave-plate matrix.
struct DovePrism {
    double alpha = 0.0;
    friend bool operator==(const DovePrism&, const DovePrism&) = default;
};
/// Routes H to `transmitted` and V to `reflected` (times i).
struct PolarizingBeamSplitter {
    friend bool operator==(const PolarizingBeamSplitter&, const PolarizingBeamSplitter&) = default;
};
/// Amplitude t to `transmitted`, i r to `reflected`; r^2 + t^2 <= 1.
struct BeamSplitter {
    double r = M_SQRT1_2;
    double t = M_SQRT1_2;
    friend bool operator==(const BeamSplitter&, const BeamSplitter&) = default;
};
/// Neutral filter with amplitude transmission t in [0, 1].
struct NeutralFilter {
    double t = 1.0;
    friend bool operator==(const NeutralFilter&, const NeutralFilter&) = default;
};
/// Path-length phase e^{i phi}, e.g. a piezo-mounted mirror.
struct PhaseShift {
    double phi = 0.0;
    friend bool operator==(const PhaseShift&, const PhaseShift&) = default;
};
/// Ideal SLM / holographic mask: sets the transverse qubit to `mode`.
struct ModeMask {
    Mode mode = Mode::h;
    friend bool operator==(const ModeMask&, const ModeMask&) = default;
};
/// Ideal polarization preparer: sets the polarization qubit to `pol`.
struct PolarizationPrep {
    Polarization pol = Polarization::H;
    friend bool operator==(const PolarizationPrep&, const PolarizationPrep&) = default;
};
/// Beam block: whatever reaches it is absorbed.
struct Block {
    friend bool operator==(const Block&, const Block&) = default;
};
struct Mirror {
    friend bool operator==(const Mirror&, const Mirror&) = default;
};

using ElementSpec = std::variant<HalfWavePlate, DovePrism, PolarizingBeamSplitter, BeamSplitter, NeutralFilter,
                                 PhaseShift, ModeMask, PolarizationPrep, Block, Mirror>;

struct Routes {
    std::string transmitted;
    std::string reflected;
    friend bool operator==(const Routes&, const Routes&) = default;
};

struct Element {
    ElementSpec spec;
    std::string path;              // the input path it sits on
    std::optional<Routes> routes;  // splitters only
    friend bool operator==(const Element&, const Element&) = default;
};

/// Whether the element kind splits a branch onto two output paths.
bool is_splitter(const ElementSpec& spec);
/// Catalog name, e.g. "HWP".
std::string kind_name(const ElementSpec& spec);

struct Branch {
    double weight = 1.0;  // incoherent statistical weight
    std::string path;
    SpinOrbitKet ket;
    std::size_t source = 0;  // index into Circuit::sources
};

struct Ensemble {
    std::vector<Branch> branches;
    /// sum weight * |ket|^2
    double detection_probability() const;
};

struct Source {
    std::string path;
    double weight = 1.0;
    Polarization pol = Polarization::H;
    Mode mode = Mode::h;
    friend bool operator==(const Source&, const Source&) = default;
};

struct Circuit {
    std::vector<std::string> paths;  // declaration order
    std::vector<Source> sources;
    std::vector<Element> elements;
    std::vector<std::string> sinks;

    bool has_path(const std::string& name) const;
    /// No-op when already declared.
    void declare_path(const std::string& name);

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

class DegenerateStateError : public std::runtime_error {
   public:
    using std::runtime_error::runtime_error;
};

/// Jones matrices on a single qubit.
ComplexMatrix half_wave_plate_matrix(double theta);

/// Propagates one branch through one element. Throws std::invalid_argument
/// when the branch is not on the element's path or the element is malformed.
std::vector<Branch> apply_element(const Element& element, const Branch& branch);

/// Runs every source through the element list in order. Branches from the
/// same source that land on the same path add coherently. Only branches on
/// sink paths are returned.
Ensemble run_circuit(const Circuit& circuit);

/// Incoherent mixture of the branches, renormalized to unit trace.
DensityMatrix4 ensemble_density(const Ensemble& ensemble);

struct SourceProbabilities {
    double first = 1.0;
    double second = 1.0;
    double third = 1.0;
};

/// Polarization / mode interferometer alone: SLM mode, HWP(theta), PBS,
/// Dove prism at 45 degrees on the V arm, piezo phase, recombining PBS.
/// Output ket on path "mz_out" is cos2t |H s> + e^{i phi} sin2t |V s'>,
/// with s the SLM mode and s' its partner.
Circuit mz_circuit(double theta, double phi, Mode slm_mode = Mode::h);

/// The full three-source preparation circuit; output on path "out".
/// With equal source probabilities the normalized output is
/// mdms(cos^2 2theta, m, epsilon) for phi = 0.
Circuit mdms_circuit(double theta, double phi, double m, double epsilon, const SourceProbabilities& sources = {});

}  // namespace somdms

#endif  // SOMDMS_OPTICS_HPP
