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
#include <array>
#include <stdexcept>
#include <string>
#include <unordered_map>

#include "ltqmdd/package.hpp"

namespace ltqmdd {

/// Entrywise sum. Operands must come from the same package.
inline Edge add(Package& pkg, const Edge& a, const Edge& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    auto& nums = pkg.numbers();
    if (a.node == b.node) {
        const ComplexRef w = nums.add(a.weight, b.weight);
        return w == ComplexTable::zero() ? Package::zero_edge() : Edge{a.node, w};
    }
    // Addition is commutative; canonical operand order doubles cache hits.
    const bool swap = std::make_pair(a.node, a.weight.id) > std::make_pair(b.node, b.weight.id);
    const Edge& x = swap ? b : a;
    const Edge& y = swap ? a : b;
    auto& cache = pkg.caches().add;
    if (auto it = cache.find({x, y}); it != cache.end()) return it->second;

    const int top = std::min(pkg.level(x), pkg.level(y));
    const auto xs = pkg.expand(x, top);
    const auto ys = pkg.expand(y, top);
    std::array<Edge, 4> sums;
    for (std::size_t k = 0; k < 4; ++k) sums[k] = add(pkg, xs[k], ys[k]);
    const Edge r = pkg.make_edge(top, sums);
    cache.emplace(std::make_pair(x, y), r);
    return r;
}

namespace detail {

inline Edge multiply_at(Package& pkg, const Edge& a, const Edge& b, int level) {
    if (a.is_zero() || b.is_zero()) return Package::zero_edge();
    auto& nums = pkg.numbers();
    const ComplexRef w = nums.mul(a.weight, b.weight);
    if (level == pkg.qubits()) return w == ComplexTable::zero() ? Package::zero_edge() : Edge{kTerminal, w};

    const Package::Caches::MulKey key{a.node, b.node, level};
    auto& cache = pkg.caches().multiply;
    Edge unit;
    if (auto it = cache.find(key); it != cache.end()) {
        unit = it->second;
    } else {
        // Both operands are expanded at the same level; a skipped level is a
        // replicated block, so the product must be formed level by level.
        const auto as = pkg.expand(Edge{a.node, ComplexTable::one()}, level);
        const auto bs = pkg.expand(Edge{b.node, ComplexTable::one()}, level);
        std::array<Edge, 4> out;
        for (std::size_t r = 0; r < 2; ++r) {
            for (std::size_t c = 0; c < 2; ++c) {
                const Edge left = multiply_at(pkg, as[2 * r + 0], bs[0 + c], level + 1);
                const Edge right = multiply_at(pkg, as[2 * r + 1], bs[2 + c], level + 1);
                out[2 * r + c] = add(pkg, left, right);
            }
        }
        unit = pkg.make_edge(level, out);
        cache.emplace(key, unit);
    }
    return pkg.scale(unit, w);
}

}  // namespace detail

/// Matrix product a * b of two full-height DDs.
inline Edge multiply(Package& pkg, const Edge& a, const Edge& b) { return detail::multiply_at(pkg, a, b, 0); }

/// Kronecker product of a fragment `a` (nodes above `split`) with a fragment
/// `b` (nodes at or below `split`): every terminal edge of `a` is replaced by
/// `b`, scaled by the terminal edge weight.
inline Edge kron(Package& pkg, const Edge& a, const Edge& b, int split) {
    if (split < 0 || split > pkg.qubits()) throw std::out_of_range("kron: split level out of range");
    if (!b.is_zero() && pkg.level(b) < split) {
        throw std::invalid_argument("kron: lower operand has a node above the split level");
    }
    std::unordered_map<NodeId, Edge> memo;
    auto rec = [&](auto&& self, const Edge& e) -> Edge {
        if (e.is_zero()) return Package::zero_edge();
        if (e.is_terminal()) return pkg.scale(b, e.weight);
        auto it = memo.find(e.node);
        if (it == memo.end()) {
            const Node n = pkg.node(e.node);
            if (n.level >= split) {
                throw std::invalid_argument("kron: upper operand has a node at level " + std::to_string(n.level) +
                                            " at or below the split level");
            }
            std::array<Edge, 4> children;
            for (std::size_t k = 0; k < 4; ++k) children[k] = self(self, n.edges[k]);
            it = memo.emplace(e.node, pkg.make_edge(n.level, children)).first;
        }
        return pkg.scale(it->second, e.weight);
    };
    return rec(rec, a);
}

}  // namespace ltqmdd
