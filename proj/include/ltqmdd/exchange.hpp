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

#include <array>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "ltqmdd/linear_transform.hpp"
#include "ltqmdd/package.hpp"

namespace ltqmdd {

/// A DD paired with the linear transformation it respects. The denoted
/// operation U satisfies U = transform_matrix(semantics(root), transform).
struct Ltqmdd {
    Edge root;
    LinearTransform transform;

    friend bool operator==(const Ltqmdd&, const Ltqmdd&) = default;
};

inline ExchangeKind invert_kind(ExchangeKind kind) {
    switch (kind) {
        case ExchangeKind::standard: return ExchangeKind::standard;
        case ExchangeKind::upper: return ExchangeKind::lower;
        case ExchangeKind::lower: return ExchangeKind::upper;
    }
    return kind;
}

/// Block permutation of an exchange on the 4x4 grid of sub-blocks spanned by
/// levels (i, i+1): new block (m, l) = old block (sigma[m], sigma[l]). Block
/// index bit 1 belongs to level i, bit 0 to level i+1.
inline std::array<std::size_t, 4> exchange_sigma(ExchangeKind kind) {
    switch (kind) {
        case ExchangeKind::standard: return {0, 2, 1, 3};
        case ExchangeKind::upper: return {0, 3, 1, 2};
        case ExchangeKind::lower: return {0, 2, 3, 1};
    }
    return {0, 1, 2, 3};
}

/// Applies one level exchange at levels (level, level + 1).
///
/// Nodes at `level` (and level+1 nodes reached directly from above) are
/// rebuilt with their sub-blocks permuted; ancestors are rebuilt only to
/// absorb the new normalization factors. Nodes below level + 1 are shared
/// unchanged.
inline Ltqmdd exchange(Package& pkg, const Ltqmdd& dd, int level, ExchangeKind kind) {
    const int n = pkg.qubits();
    if (level < 0 || level + 1 >= n) {
        throw std::out_of_range("exchange: level " + std::to_string(level) + " out of range");
    }
    if (dd.transform.variables() != n) throw std::invalid_argument("exchange: transformation size mismatch");
    const auto sigma = exchange_sigma(kind);

    // Result for each rebuilt node, with unit incoming weight.
    std::unordered_map<NodeId, Edge> remap;

    auto swap_levels = [&](NodeId id) -> Edge {
        const Edge unit{id, ComplexTable::one()};
        std::array<std::array<Edge, 4>, 4> grid;  // grid[row block][col block]
        const auto upper = pkg.expand(unit, level);
        for (std::size_t hi = 0; hi < 4; ++hi) {
            const auto lower = pkg.expand(upper[hi], level + 1);
            for (std::size_t lo = 0; lo < 4; ++lo) {
                const std::size_t row = 2 * (hi / 2) + lo / 2;
                const std::size_t col = 2 * (hi % 2) + lo % 2;
                grid[row][col] = lower[lo];
            }
        }
        std::array<Edge, 4> top;
        for (std::size_t hi = 0; hi < 4; ++hi) {
            std::array<Edge, 4> bottom;
            for (std::size_t lo = 0; lo < 4; ++lo) {
                const std::size_t row = 2 * (hi / 2) + lo / 2;
                const std::size_t col = 2 * (hi % 2) + lo % 2;
                bottom[lo] = grid[sigma[row]][sigma[col]];
            }
            top[hi] = pkg.make_edge(level + 1, bottom);
        }
        return pkg.make_edge(level, top);
    };

    auto rebuild = [&](auto&& self, const Edge& e) -> Edge {
        if (e.is_zero()) return e;
        const int l = pkg.level(e);
        if (l > level + 1) return e;
        auto it = remap.find(e.node);
        if (it == remap.end()) {
            Edge unit;
            if (l < level) {
                const Node node = pkg.node(e.node);
                std::array<Edge, 4> children;
                for (std::size_t k = 0; k < 4; ++k) children[k] = self(self, node.edges[k]);
                unit = pkg.make_edge(l, children);
            } else {
                unit = swap_levels(e.node);
            }
            it = remap.emplace(e.node, unit).first;
        }
        return pkg.scale(it->second, e.weight);
    };

    Ltqmdd out{rebuild(rebuild, dd.root), dd.transform.row_update(level, kind)};
    return out;
}

inline Ltqmdd exchange(Package& pkg, const Ltqmdd& dd, const MoveRecord& move) {
    return exchange(pkg, dd, move.level, move.kind);
}

/// Realizes `target` on a DD that currently respects the identity.
inline Ltqmdd realize_transform(Package& pkg, const Edge& root, const LinearTransform& target) {
    Ltqmdd dd{root, LinearTransform::identity(pkg.qubits())};
    for (const auto& move : moves_to_realize(target)) dd = exchange(pkg, dd, move);
    return dd;
}

}  // namespace ltqmdd
