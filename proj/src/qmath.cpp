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

#include "somdms/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace somdms {

namespace {

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
    if (a.dim() != b.dim()) {
        std::ostringstream os;
        os << what << ": dimension mismatch (" << a.dim() << " vs " << b.dim() << ")";
        throw std::invalid_argument(os.str());
    }
}

double hermiticity_defect(const ComplexMatrix& m) {
    double worst = 0.0;
    for (std::size_t r = 0; r < m.dim(); ++r) {
        for (std::size_t c = r; c < m.dim(); ++c) {
            worst = std::max(worst, std::abs(m(r, c) - std::conj(m(c, r))));
        }
    }
    return worst;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {
    if (dim == 0) throw std::invalid_argument("ComplexMatrix: dimension must be positive");
}

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<Complex> row_major) : ComplexMatrix(dim) {
    if (row_major.size() != dim * dim) {
        throw std::invalid_argument("ComplexMatrix: expected " + std::to_string(dim * dim) + " entries, got " +
                                    std::to_string(row_major.size()));
    }
    std::copy(row_major.begin(), row_major.end(), data_.begin());
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
    ComplexMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<double> diag) {
    return diagonal(std::span<const double>(diag.begin(), diag.size()));
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> diag) {
    ComplexMatrix m(diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = diag[i];
    return m;
}

ComplexMatrix ComplexMatrix::projector(std::span<const Complex> ket) {
    ComplexMatrix m(ket.size());
    for (std::size_t r = 0; r < ket.size(); ++r) {
        for (std::size_t c = 0; c < ket.size(); ++c) m(r, c) = ket[r] * std::conj(ket[c]);
    }
    return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix out(dim_);
    for (std::size_t r = 0; r < dim_; ++r) {
        for (std::size_t c = 0; c < dim_; ++c) out(c, r) = std::conj((*this)(r, c));
    }
    return out;
}

ComplexMatrix ComplexMatrix::conjugate() const {
    ComplexMatrix out = *this;
    for (auto& z : out.data_) z = std::conj(z);
    return out;
}

Complex ComplexMatrix::trace() const {
    Complex t = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) t += (*this)(i, i);
    return t;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator+");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& other) {
    require_same_dim(*this, other, "operator-");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex scale) {
    for (auto& z : data_) z *= scale;
    return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "operator*");
    const std::size_t n = a.dim();
    ComplexMatrix out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex ark = a(r, k);
            if (ark == Complex(0.0)) continue;
            for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
        }
    }
    return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    require_same_dim(a, b, "max_abs_diff");
    double worst = 0.0;
    for (std::size_t i = 0; i < a.entries().size(); ++i) {
        worst = std::max(worst, std::abs(a.entries()[i] - b.entries()[i]));
    }
    return worst;
}

double frobenius_norm(const ComplexMatrix& m) {
    double sum = 0.0;
    for (const auto& z : m.entries()) sum += std::norm(z);
    return std::sqrt(sum);
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != 2 || b.dim() != 2) {
        throw std::invalid_argument("tensor_product: both factors must be 2x2, got " + std::to_string(a.dim()) + " and " +
                                    std::to_string(b.dim()));
    }
    ComplexMatrix out(4);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j)
            for (std::size_t k = 0; k < 2; ++k)
                for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
    return out;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& m) {
    if (m.dim() == 0) throw std::invalid_argument("hermitian_eigensystem: empty matrix");
    const double defect = hermiticity_defect(m);
    if (defect > 1e-9) {
        std::ostringstream os;
        os << "hermitian_eigensystem: matrix is not Hermitian (max |M - M^dagger| = " << defect << ")";
        throw std::invalid_argument(os.str());
    }
    const std::size_t n = m.dim();
    // Work on the Hermitian part so the tolerated defect does not leak into
    // the rotations.
    ComplexMatrix a(n);
    for (std::size_t r = 0; r < n; ++r) {
        a(r, r) = m(r, r).real();
        for (std::size_t c = r + 1; c < n; ++c) {
            a(r, c) = 0.5 * (m(r, c) + std::conj(m(c, r)));
            a(c, r) = std::conj(a(r, c));
        }
    }
    ComplexMatrix v = ComplexMatrix::identity(n);

    constexpr int kMaxSweeps = 64;
    for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
        double off = 0.0;
        double diag = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
            diag += std::norm(a(r, r));
            for (std::size_t c = r + 1; c < n; ++c) off += std::norm(a(r, c));
        }
        if (off == 0.0 || off < 1e-34 * std::max(diag, 1e-300)) break;

        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                // Phase out a_pq, then a real symmetric Jacobi rotation.
                const Complex phase = apq / mag;  // e^{i alpha}
                const double theta = (aqq - app) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex u00 = c;
                const Complex u01 = s;
                const Complex u10 = -s * std::conj(phase);
                const Complex u11 = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = akp * u00 + akq * u10;
                    a(k, q) = akp * u01 + akq * u11;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = std::conj(u00) * apk + std::conj(u10) * aqk;
                    a(q, k) = std::conj(u01) * apk + std::conj(u11) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = vkp * u00 + vkq * u10;
                    v(k, q) = vkp * u01 + vkq * u11;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return a(i, i).real() > a(j, j).real(); });
    EigenSystem out{std::vector<double>(n), ComplexMatrix(n)};
    for (std::size_t i = 0; i < n; ++i) {
        out.values[i] = a(order[i], order[i]).real();
        for (std::size_t k = 0; k < n; ++k) out.vectors(k, i) = v(k, order[i]);
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& m) { return hermitian_eigensystem(m).values; }

ComplexMatrix psd_sqrt(const ComplexMatrix& m, double floor) {
    const EigenSystem es = hermitian_eigensystem(m);
    const std::size_t n = m.dim();
    ComplexMatrix out(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (es.values[i] <= floor) continue;
        const double root = std::sqrt(es.values[i]);
        for (std::size_t r = 0; r < n; ++r) {
            const Complex vr = es.vectors(r, i) * root;
            for (std::size_t c = 0; c < n; ++c) out(r, c) += vr * std::conj(es.vectors(c, i));
        }
    }
    return out;
}

std::vector<double> singular_values(const ComplexMatrix& m) {
    const std::size_t n = m.dim();
    ComplexMatrix dilation(2 * n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            dilation(r, n + c) = m(r, c);
            dilation(n + c, r) = std::conj(m(r, c));
        }
    }
    // Spectrum is {+s_i} U {-s_i}; the top half is the answer.
    std::vector<double> values = hermitian_eigenvalues(dilation);
    values.resize(n);
    for (auto& s : values) s = std::max(s, 0.0);
    return values;
}

double shannon_entropy_bits(std::span<const double> probabilities) {
    double h = 0.0;
    for (double p : probabilities) {
        if (p > kEntropyEigenFloor) h -= p * std::log2(p);
    }
    // Rounding on near-pure or near-uniform spectra can overshoot the range.
    return std::clamp(h, 0.0, std::log2(static_cast<double>(probabilities.size())));
}

DensityCheck validate_density(const ComplexMatrix& m, double tol) {
    std::ostringstream os;
    const double defect = hermiticity_defect(m);
    if (defect > tol) {
        os << "not Hermitian: max |M - M^dagger| = " << defect;
        return {false, os.str()};
    }
    const Complex tr = m.trace();
    if (std::abs(tr.imag()) > tol || std::abs(tr.real() - 1.0) > tol) {
        os << "trace is " << tr.real() << (tr.imag() < 0 ? "-" : "+") << std::abs(tr.imag()) << "i, expected 1";
        return {false, os.str()};
    }
    const double smallest = hermitian_eigenvalues(m).back();
    if (smallest < -tol) {
        os << "not positive semidefinite: smallest eigenvalue " << smallest;
        return {false, os.str()};
    }
    return {};
}

template <std::size_t Dim>
DensityMatrix<Dim>::DensityMatrix(ComplexMatrix m) : m_(std::move(m)) {
    if (m_.dim() != Dim) {
        throw InvalidDensityMatrix("density matrix: expected dimension " + std::to_string(Dim) + ", got " +
                                   std::to_string(m_.dim()));
    }
    std::ostringstream os;
    if (const double defect = hermiticity_defect(m_); defect > 1e-12) {
        os << "density matrix: not Hermitian (max |M - M^dagger| = " << defect << ")";
        throw InvalidDensityMatrix(os.str());
    }
    if (const Complex tr = m_.trace(); std::abs(tr - 1.0) > 1e-12) {
        os << "density matrix: trace " << tr.real() << " differs from 1";
        throw InvalidDensityMatrix(os.str());
    }
    if (const double smallest = hermitian_eigenvalues(m_).back(); smallest < -1e-10) {
        os << "density matrix: not positive semidefinite (eigenvalue " << smallest << ")";
        throw InvalidDensityMatrix(os.str());
    }
}

template <std::size_t Dim>
DensityMatrix<Dim> DensityMatrix<Dim>::pure(std::span<const Complex> ket) {
    if (ket.size() != Dim) throw std::invalid_argument("pure state: wrong ket length");
    double norm2 = 0.0;
    for (const auto& a : ket) norm2 += std::norm(a);
    if (norm2 <= 0.0) throw std::invalid_argument("pure state: zero ket");
    return DensityMatrix(ComplexMatrix::projector(ket) * Complex(1.0 / norm2));
}

template class DensityMatrix<2>;
template class DensityMatrix<4>;

DensityMatrix2 partial_trace(const DensityMatrix4& rho, Subsystem keep) {
    ComplexMatrix out(2);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            Complex sum = 0.0;
            for (std::size_t k = 0; k < 2; ++k) {
                sum += keep == Subsystem::A ? rho(2 * i + k, 2 * j + k) : rho(2 * k + i, 2 * k + j);
            }
            out(i, j) = sum;
        }
    }
    return DensityMatrix2(std::move(out));
}

double von_neumann_entropy(const DensityMatrix2& rho) { return shannon_entropy_bits(hermitian_eigenvalues(rho.matrix())); }

double von_neumann_entropy(const DensityMatrix4& rho) { return shannon_entropy_bits(hermitian_eigenvalues(rho.matrix())); }

namespace pauli {
ComplexMatrix I() { return ComplexMatrix::identity(2); }
ComplexMatrix X() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix Y() { return ComplexMatrix(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
ComplexMatrix Z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
}  // namespace pauli

}  // namespace somdms
