// Copyright 2026 The ltqmdd Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <vector>

#include "ltqmdd/complex_table.hpp"

namespace ltqmdd {

using DenseVector = std::vector<Complex>;

/// Square row-major complex matrix. Only used for small dimensions
/// (verification, gate definitions, matrix input).
class DenseMatrix {
  public:
    DenseMatrix() = default;
    explicit DenseMatrix(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    DenseMatrix(std::initializer_list<std::initializer_list<Complex>> rows) : dim_(rows.size()) {
        data_.reserve(dim_ * dim_);
        for (const auto& row : rows) {
            if (row.size() != dim_) {
                throw std::invalid_argument("DenseMatrix: rows must form a square matrix");
            }
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    static DenseMatrix identity(std::size_t dim) {
        DenseMatrix m(dim);
        for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
        return m;
    }

    std::size_t dim() const { return dim_; }

    Complex& operator()(std::size_t row, std::size_t col) { return data_[row * dim_ + col]; }
    const Complex& operator()(std::size_t row, std::size_t col) const { return data_[row * dim_ + col]; }

    const std::vector<Complex>& data() const { return data_; }

    friend bool operator==(const DenseMatrix&, const DenseMatrix&) = default;

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

/// Number of index bits of a power-of-two dimension; throws otherwise.
inline int log2_dim(std::size_t dim) {
    if (dim == 0 || (dim & (dim - 1)) != 0) {
        throw std::invalid_argument("dimension must be a power of two");
    }
    int bits = 0;
    while ((std::size_t{1} << bits) < dim) ++bits;
    return bits;
}

inline DenseMatrix operator*(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix product: dimension mismatch");
    const std::size_t n = a.dim();
    DenseMatrix r(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < n; ++j) r(i, j) += aik * b(k, j);
        }
    }
    return r;
}

inline DenseMatrix operator+(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix sum: dimension mismatch");
    DenseMatrix r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) + b(i, j);
    return r;
}

inline DenseMatrix scaled(const DenseMatrix& a, Complex s) {
    DenseMatrix r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) r(i, j) = a(i, j) * s;
    return r;
}

inline DenseMatrix kron(const DenseMatrix& a, const DenseMatrix& b) {
    const std::size_t n = a.dim() * b.dim();
    DenseMatrix r(n);
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j)
            for (std::size_t k = 0; k < b.dim(); ++k)
                for (std::size_t l = 0; l < b.dim(); ++l)
                    r(i * b.dim() + k, j * b.dim() + l) = a(i, j) * b(k, l);
    return r;
}

inline DenseMatrix adjoint(const DenseMatrix& a) {
    DenseMatrix r(a.dim());
    for (std::size_t i = 0; i < a.dim(); ++i)
        for (std::size_t j = 0; j < a.dim(); ++j) r(j, i) = std::conj(a(i, j));
    return r;
}

/// Largest entrywise component difference; infinity on dimension mismatch.
inline double max_abs_diff(const DenseMatrix& a, const DenseMatrix& b) {
    if (a.dim() != b.dim()) return INFINITY;
    double worst = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) {
        const Complex d = a.data()[i] - b.data()[i];
        worst = std::max({worst, std::abs(d.real()), std::abs(d.imag())});
    }
    return worst;
}

inline bool approx_equal(const DenseMatrix& a, const DenseMatrix& b, double tol) {
    return max_abs_diff(a, b) <= tol;
}

}  // namespace ltqmdd
