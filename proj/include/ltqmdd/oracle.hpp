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

// Dense reference implementations for small qubit counts. Nothing here goes
// through the DD operations; DDs are only read by walking single paths.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ltqmdd/dense.hpp"
#include "ltqmdd/exchange.hpp"
#include "ltqmdd/linear_transform.hpp"
#include "ltqmdd/package.hpp"
#include "ltqmdd/qasm.hpp"

namespace ltqmdd::oracle {

inline constexpr int kMaxDenseQubits = 8;
inline constexpr int kMaxEnumerationQubits = 4;

inline void guard_dense(int n) {
    if (n < 1 || n > kMaxDenseQubits) {
        throw std::length_error("oracle: " + std::to_string(n) + " qubits exceeds the dense limit of " +
                                std::to_string(kMaxDenseQubits));
    }
}

/// Dense 2^n operator of one gate, from the entry-wise definition: the entry
/// is non-zero only if row and column agree on every non-target qubit; it is
/// the base-matrix entry when all controls are 1, otherwise the identity.
inline DenseMatrix embed_gate(const Gate& g, int n) {
    guard_dense(n);
    validate_gate(g, n);
    const DenseMatrix base = gate_matrix(g);
    const std::size_t dim = std::size_t{1} << n;
    auto bit = [n](std::size_t index, int q) { return (index >> (n - 1 - q)) & 1U; };
    std::size_t target_mask = 0;
    for (int q : g.targets) target_mask |= std::size_t{1} << (n - 1 - q);
    const int t = static_cast<int>(g.targets.size());

    DenseMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r) {
        bool controls_on = true;
        for (int q : g.controls) controls_on = controls_on && bit(r, q) == 1;
        std::size_t tr = 0;
        for (int k = 0; k < t; ++k) tr |= bit(r, g.targets[static_cast<std::size_t>(k)]) << (t - 1 - k);
        for (std::size_t c = 0; c < dim; ++c) {
            if ((r & ~target_mask) != (c & ~target_mask)) continue;
            std::size_t tc = 0;
            for (int k = 0; k < t; ++k) tc |= bit(c, g.targets[static_cast<std::size_t>(k)]) << (t - 1 - k);
            m(r, c) = controls_on ? base(tr, tc) : (tr == tc ? Complex{1.0, 0.0} : Complex{});
        }
    }
    return m;
}

/// Product of all embedded gates, later gates on the left.
inline DenseMatrix dense_compile(const Circuit& c) {
    guard_dense(c.qubits);
    DenseMatrix u = DenseMatrix::identity(std::size_t{1} << c.qubits);
    for (const auto& g : c.gates) u = embed_gate(g, c.qubits) * u;
    return u;
}

/// Matrix entry (row, col) of the DD, as the product of the edge weights on
/// the path selected by the index bits. Skipped levels consume a bit pair
/// without moving.
inline Complex dd_entry(const Package& pkg, const Edge& root, std::size_t row, std::size_t col) {
    const int n = pkg.qubits();
    Complex acc = pkg.weight(root);
    Edge e = root;
    for (int level = 0; level < n && acc != Complex{}; ++level) {
        if (e.is_zero()) return Complex{};
        const Node& node = pkg.node(e.node);
        if (node.level != level) continue;
        const std::size_t k = 2 * ((row >> (n - 1 - level)) & 1U) + ((col >> (n - 1 - level)) & 1U);
        e = node.edges[k];
        acc *= pkg.weight(e);
    }
    return e.is_zero() ? Complex{} : acc;
}

inline DenseMatrix dd_to_dense(const Package& pkg, const Edge& root) {
    guard_dense(pkg.qubits());
    const std::size_t dim = std::size_t{1} << pkg.qubits();
    DenseMatrix m(dim);
    for (std::size_t r = 0; r < dim; ++r)
        for (std::size_t c = 0; c < dim; ++c) m(r, c) = dd_entry(pkg, root, r, c);
    return m;
}

/// The matrix an LTQMDD respecting `lt` must store for operation `u`:
/// entry (pi(i), pi(j)) holds u(i, j).
inline DenseMatrix stored_matrix(const DenseMatrix& u, const LinearTransform& lt) {
    const std::size_t dim = u.dim();
    if (dim != (std::size_t{1} << lt.variables())) throw std::invalid_argument("stored_matrix: size mismatch");
    std::vector<std::size_t> image(dim);
    for (std::size_t i = 0; i < dim; ++i) image[i] = static_cast<std::size_t>(lt.apply(i));
    DenseMatrix m(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) m(image[i], image[j]) = u(i, j);
    return m;
}

/// True iff the DD `e` respecting `lt` denotes `u` within `tol`.
inline bool check_ltqmdd(const Package& pkg, const Edge& e, const LinearTransform& lt, const DenseMatrix& u,
                         double tol) {
    guard_dense(pkg.qubits());
    if (lt.variables() != pkg.qubits() || u.dim() != (std::size_t{1} << pkg.qubits())) return false;
    return approx_equal(dd_to_dense(pkg, e), stored_matrix(u, lt), tol);
}

/// prod_{i<n} (2^n - 2^i).
inline std::uint64_t full_rank_count_formula(int n) {
    std::uint64_t count = 1;
    for (int i = 0; i < n; ++i) count *= (std::uint64_t{1} << n) - (std::uint64_t{1} << i);
    return count;
}

/// Every invertible n x n GF(2) matrix, found by enumerating all 2^(n*n)
/// matrices and keeping those whose index map is a bijection.
inline std::vector<LinearTransform> enumerate_full_rank(int n) {
    if (n < 1 || n > kMaxEnumerationQubits) {
        throw std::length_error("enumerate_full_rank: n must be in [1, " + std::to_string(kMaxEnumerationQubits) + "]");
    }
    std::vector<LinearTransform> out;
    const std::uint64_t row_mask = (std::uint64_t{1} << n) - 1;
    const std::uint64_t total = std::uint64_t{1} << (n * n);
    const std::size_t dim = std::size_t{1} << n;
    for (std::uint64_t bits = 0; bits < total; ++bits) {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = (bits >> (i * n)) & row_mask;
        LinearTransform lt = LinearTransform::from_rows(n, rows);
        std::vector<bool> hit(dim, false);
        bool bijective = true;
        for (std::size_t v = 0; v < dim && bijective; ++v) {
            const auto image = static_cast<std::size_t>(lt.apply(v));
            bijective = !hit[image];
            hit[image] = true;
        }
        if (bijective) out.push_back(std::move(lt));
    }
    return out;
}

/// Direct build of the stored matrix versus the build from `u` followed by
/// exchanges realizing `lt`; true iff both give the same root.
inline bool canonicity_check(Package& pkg, const DenseMatrix& u, const LinearTransform& lt) {
    if (pkg.qubits() > kMaxEnumerationQubits) throw std::length_error("canonicity_check: too many qubits");
    const Edge direct = pkg.from_dense(stored_matrix(u, lt));
    const Ltqmdd realized = realize_transform(pkg, pkg.from_dense(u), lt);
    return realized.transform == lt && realized.root == direct;
}

struct TransformSize {
    LinearTransform transform;
    std::size_t size;
};

/// DD size of `u` under every full-rank transformation.
inline std::vector<TransformSize> exhaustive_sizes(Package& pkg, const DenseMatrix& u) {
    std::vector<TransformSize> out;
    for (auto& lt : enumerate_full_rank(pkg.qubits())) {
        const std::size_t s = pkg.size(pkg.from_dense(stored_matrix(u, lt)));
        out.push_back({std::move(lt), s});
    }
    return out;
}

}  // namespace ltqmdd::oracle
