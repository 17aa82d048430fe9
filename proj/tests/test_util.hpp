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


// Shared generators for the test suites and the acceptance binary.

#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ltqmdd/ltqmdd.hpp"

namespace ltqmdd::testing {

inline constexpr std::uint64_t kSeed = 20260415;

/// Matrix with entries drawn from {0, p1, p2, p3}. Sub-blocks repeat often
/// enough that exchanges and transformations change the DD size.
inline DenseMatrix structured_matrix(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    std::vector<Complex> palette{Complex{}, {val(rng), val(rng)}, {val(rng), val(rng)}, {val(rng), val(rng)}};
    std::uniform_int_distribution<std::size_t> pick(0, palette.size() - 1);
    DenseMatrix m(std::size_t{1} << n);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) m(i, j) = palette[pick(rng)];
    return m;
}

/// Matrix with independent uniform entries in the unit square.
inline DenseMatrix generic_matrix(int n, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> val(-1.0, 1.0);
    DenseMatrix m(std::size_t{1} << n);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) m(i, j) = {val(rng), val(rng)};
    return m;
}

/// Uniform full-rank transformation by rejection sampling.
inline LinearTransform random_full_rank(int n, std::mt19937_64& rng) {
    std::uniform_int_distribution<std::uint64_t> row(1, (std::uint64_t{1} << n) - 1);
    for (;;) {
        std::vector<std::uint64_t> rows(static_cast<std::size_t>(n));
        for (auto& r : rows) r = row(rng);
        auto lt = LinearTransform::from_rows(n, rows);
        if (lt.is_full_rank()) return lt;
    }
}

/// Random circuit over the full supported gate set.
inline Circuit random_circuit(int n, int gates, std::mt19937_64& rng) {
    std::vector<const GateSpec*> usable;
    for (const auto& spec : kGateSpecs) {
        if (spec.controls + spec.targets <= n) usable.push_back(&spec);
    }
    std::uniform_int_distribution<std::size_t> pick(0, usable.size() - 1);
    std::uniform_real_distribution<double> angle(-3.2, 3.2);
    Circuit c;
    c.qubits = n;
    for (int k = 0; k < gates; ++k) {
        const GateSpec& spec = *usable[pick(rng)];
        std::vector<int> qubits(static_cast<std::size_t>(n));
        for (int q = 0; q < n; ++q) qubits[static_cast<std::size_t>(q)] = q;
        std::shuffle(qubits.begin(), qubits.end(), rng);
        Gate g;
        g.name = std::string(spec.name);
        for (int p = 0; p < spec.params; ++p) g.params.push_back(angle(rng));
        for (int i = 0; i < spec.controls; ++i) g.controls.push_back(qubits[static_cast<std::size_t>(i)]);
        for (int i = 0; i < spec.targets; ++i) g.targets.push_back(qubits[static_cast<std::size_t>(spec.controls + i)]);
        c.gates.push_back(std::move(g));
    }
    return c;
}

/// The 4x4 pattern a b a c / d c d c / a b a b / a c d b.
inline DenseMatrix pattern_matrix(Complex a = {1, 0}, Complex b = {2, 0}, Complex c = {3, 0}, Complex d = {4, 0}) {
    return DenseMatrix{{a, b, a, c}, {d, c, d, c}, {a, b, a, b}, {a, c, d, b}};
}

/// Node ids reachable from `e` whose level is strictly greater than `level`.
inline std::vector<NodeId> nodes_below(const Package& pkg, const Edge& e, int level) {
    std::vector<NodeId> out;
    pkg.visit(e, [&](NodeId id) {
        if (pkg.node(id).level > level) out.push_back(id);
    });
    std::sort(out.begin(), out.end());
    return out;
}

}  // namespace ltqmdd::testing
