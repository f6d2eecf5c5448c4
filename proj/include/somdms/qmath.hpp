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

#ifndef SOMDMS_QMATH_HPP
#define SOMDMS_QMATH_HPP

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace somdms {

using Complex = std::complex<double>;

/// Dense square complex matrix, row-major. Sized for qubit work (2, 4, and
/// the occasional 8x8 dilation); nothing here is tuned for large dims.
class ComplexMatrix {
   public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(std::size_t dim);
    ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major);

    static ComplexMatrix identity(std::size_t dim);
    static ComplexMatrix diagonal(std::initializer_list<double> diag);
    static ComplexMatrix diagonal(std::span<const double> diag);
    /// |ket><ket|
    static ComplexMatrix projector(std::span<const Complex> ket);

    std::size_t dim() const { return dim_; }
    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }
    std::span<const Complex> entries() const { return data_; }

    ComplexMatrix adjoint() const;
    ComplexMatrix conjugate() const;
    Complex trace() const;

    ComplexMatrix& operator+=(const ComplexMatrix& other);
    ComplexMatrix& operator-=(const ComplexMatrix& other);
    ComplexMatrix& operator*=(Complex scale);

    friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
    friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
    friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
    friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
    friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
    friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

   private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Largest absolute entrywise difference. Dimensions must agree.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
double frobenius_norm(const ComplexMatrix& m);

/// Kronecker product a (x) b of two single-qubit operators. `a` acts on the
/// polarization qubit, `b` on the transverse-mode qubit, so the result is
/// indexed in the order {Hh, Hv, Vh, Vv}.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

struct EigenSystem {
    std::vector<double> values;  // descending
    ComplexMatrix vectors;       // column i pairs with values[i]
};

/// Cyclic complex Jacobi. Throws std::invalid_argument when the input is not
/// Hermitian to within 1e-9.
EigenSystem hermitian_eigensystem(const ComplexMatrix& m);
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m);

/// Principal square root of a PSD matrix. Eigenvalues at or below `floor`
/// are treated as zero.
ComplexMatrix psd_sqrt(const ComplexMatrix& m, double floor = 1e-14);

/// Singular values, descending, read off the Hermitian dilation
/// [[0, M], [M^dagger, 0]] so small values keep absolute accuracy.
std::vector<double> singular_values(const ComplexMatrix& m);

/// Eigenvalues at or below this are taken as exactly zero in entropies.
inline constexpr double kEntropyEigenFloor = 1e-12;

/// -sum p log2 p over entries above kEntropyEigenFloor.
double shannon_entropy_bits(std::span<const double> probabilities);

struct DensityCheck {
    bool ok = true;
    std::string diagnostic;  // names the first violated property
    explicit operator bool() const { return ok; }
};

/// Hermitian, unit trace and PSD, each to within `tol`.
DensityCheck validate_density(const ComplexMatrix& m, double tol);

class InvalidDensityMatrix : public std::invalid_argument {
   public:
    using std::invalid_argument::invalid_argument;
};

/// A validated density operator on `Dim` levels.
template <std::size_t Dim>
class DensityMatrix {
   public:
    static_assert(Dim == 2 || Dim == 4);
    static constexpr std::size_t dimension = Dim;

    /// Hermitian and trace to 1e-12, eigenvalues >= -1e-10.
    explicit DensityMatrix(ComplexMatrix m);

    static DensityMatrix maximally_mixed() { return DensityMatrix(ComplexMatrix::identity(Dim) * Complex(1.0 / Dim)); }
    static DensityMatrix pure(std::span<const Complex> ket);

    const ComplexMatrix& matrix() const { return m_; }
    const Complex& operator()(std::size_t r, std::size_t c) const { return m_(r, c); }

   private:
    ComplexMatrix m_;
};

using DensityMatrix2 = DensityMatrix<2>;
using DensityMatrix4 = DensityMatrix<4>;

extern template class DensityMatrix<2>;
extern template class DensityMatrix<4>;

enum class Subsystem { A, B };

/// A is polarization (left tensor factor), B is the transverse mode.
DensityMatrix2 partial_trace(const DensityMatrix4& rho, Subsystem keep);

double von_neumann_entropy(const DensityMatrix2& rho);
double von_neumann_entropy(const DensityMatrix4& rho);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
}  // namespace pauli

}  // namespace somdms

#endif  // SOMDMS_QMATH_HPP
