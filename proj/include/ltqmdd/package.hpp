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
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "ltqmdd/complex_table.hpp"
#include "ltqmdd/dense.hpp"

namespace ltqmdd {

using NodeId = std::uint32_t;

inline constexpr NodeId kTerminal = 0;

/// Largest number of levels `semantics` will expand into a dense matrix.
inline constexpr int kMaxDenseLevels = 8;

/// A (node, weight) pair. The zero edge always targets the terminal.
struct Edge {
    NodeId node = kTerminal;
    ComplexRef weight = ComplexTable::zero();

    bool is_zero() const { return weight == ComplexTable::zero(); }
    bool is_terminal() const { return node == kTerminal; }

    friend bool operator==(const Edge&, const Edge&) = default;
};

/// Internal 4-ary node. Edge k covers row bit k/2 and column bit k%2 of the
/// node's level. The terminal is stored as node 0 with level n.
struct Node {
    int level = 0;
    std::array<Edge, 4> edges{};
};

struct EdgeHash {
    std::size_t operator()(const Edge& e) const noexcept {
        return (static_cast<std::size_t>(e.node) * 0x9e3779b97f4a7c15ULL) ^ e.weight.id;
    }
};

/// Owns the complex table, the node store with its unique table, and the
/// compute caches used by the DD operations.
///
/// Nodes are never freed; node ids stay valid for the lifetime of the
/// package. Not thread-safe: all mutation goes through one owner.
class Package {
  public:
    explicit Package(int qubits, double tolerance = kDefaultTolerance) : qubits_(qubits), numbers_(tolerance) {
        if (qubits < 1 || qubits > 62) throw std::invalid_argument("Package: qubit count must be in [1, 62]");
        nodes_.push_back(Node{qubits, {}});
    }

    Package(const Package&) = delete;
    Package& operator=(const Package&) = delete;

    int qubits() const { return qubits_; }
    ComplexTable& numbers() { return numbers_; }
    const ComplexTable& numbers() const { return numbers_; }

    const Node& node(NodeId id) const { return nodes_.at(id); }
    std::size_t stored_nodes() const { return nodes_.size() - 1; }

    int level(const Edge& e) const { return nodes_[e.node].level; }

    static Edge zero_edge() { return Edge{kTerminal, ComplexTable::zero()}; }
    Edge terminal(ComplexRef w) const { return Edge{kTerminal, w}; }
    Edge terminal(Complex w) { return Edge{kTerminal, numbers_.intern(w)}; }

    Complex weight(const Edge& e) const { return numbers_.value(e.weight); }

    /// Edge with its weight multiplied by `factor`.
    Edge scale(const Edge& e, ComplexRef factor) {
        const ComplexRef w = numbers_.mul(e.weight, factor);
        return w == ComplexTable::zero() ? zero_edge() : Edge{e.node, w};
    }

    /// Normalized, reduced edge for a node at `level` with the given children.
    Edge make_edge(int level, std::array<Edge, 4> children) {
        if (level < 0 || level >= qubits_) {
            throw std::out_of_range("make_edge: level " + std::to_string(level) + " out of range");
        }
        for (auto& c : children) {
            if (c.is_zero()) {
                c = zero_edge();
            } else if (nodes_[c.node].level <= level) {
                throw std::invalid_argument("make_edge: child at level " + std::to_string(nodes_[c.node].level) +
                                            " is not below level " + std::to_string(level));
            }
        }
        if (children[0] == children[1] && children[0] == children[2] && children[0] == children[3]) {
            return children[0];
        }

        double max_mag = 0.0;
        for (const auto& c : children) {
            if (!c.is_zero()) max_mag = std::max(max_mag, numbers_.magnitude(c.weight));
        }
        const double threshold = max_mag * (1.0 - numbers_.tolerance());
        std::size_t pivot = 0;
        for (std::size_t k = 0; k < 4; ++k) {
            if (!children[k].is_zero() && numbers_.magnitude(children[k].weight) >= threshold) {
                pivot = k;
                break;
            }
        }
        const ComplexRef factor = children[pivot].weight;
        Node n{level, {}};
        for (std::size_t k = 0; k < 4; ++k) {
            if (k == pivot) {
                n.edges[k] = Edge{children[k].node, ComplexTable::one()};
            } else if (children[k].is_zero()) {
                n.edges[k] = zero_edge();
            } else {
                const ComplexRef w = numbers_.div(children[k].weight, factor);
                n.edges[k] = w == ComplexTable::zero() ? zero_edge() : Edge{children[k].node, w};
            }
        }
        return Edge{lookup(n), factor};
    }

    /// The 2^n identity: one node per level.
    Edge identity() { return identity_from(0); }

    /// Identity over levels [top, n).
    Edge identity_from(int top) {
        Edge e = terminal(ComplexTable::one());
        for (int l = qubits_ - 1; l >= top; --l) e = make_edge(l, {e, zero_edge(), zero_edge(), e});
        return e;
    }

    /// Builds the DD of a 2^n x 2^n matrix by quadrant decomposition.
    Edge from_dense(const DenseMatrix& u) {
        if (log2_dim(u.dim()) != qubits_) {
            throw std::invalid_argument("from_dense: matrix dimension does not match qubit count");
        }
        return build_block(u, 0);
    }

    /// Builds a DD fragment whose nodes occupy levels [top, top + log2(dim))
    /// and whose leaves are terminal edges. Used for Kronecker operands.
    Edge build_block(const DenseMatrix& u, int top) {
        const int k = log2_dim(u.dim());
        if (top < 0 || top + k > qubits_) throw std::out_of_range("build_block: levels exceed qubit count");
        return build_rec(u, 0, 0, u.dim(), top);
    }

    /// Number of distinct internal nodes reachable from `e`.
    std::size_t size(const Edge& e) const {
        std::size_t count = 0;
        visit(e, [&](NodeId) { ++count; });
        return count;
    }

    /// Reachable internal node count per level.
    std::vector<std::size_t> level_counts(const Edge& e) const {
        std::vector<std::size_t> counts(static_cast<std::size_t>(qubits_), 0);
        visit(e, [&](NodeId id) { ++counts[static_cast<std::size_t>(nodes_[id].level)]; });
        return counts;
    }

    /// Calls `f` once for every distinct internal node reachable from `e`.
    template <typename F>
    void visit(const Edge& e, F&& f) const {
        if (e.is_zero() || e.is_terminal()) return;
        std::unordered_set<NodeId> seen;
        std::vector<NodeId> stack{e.node};
        seen.insert(e.node);
        while (!stack.empty()) {
            const NodeId id = stack.back();
            stack.pop_back();
            f(id);
            for (const auto& c : nodes_[id].edges) {
                if (!c.is_zero() && !c.is_terminal() && seen.insert(c.node).second) stack.push_back(c.node);
            }
        }
    }

    /// Dense matrix denoted by `e` over levels [from_level, n). Skipped levels
    /// replicate their sub-block.
    DenseMatrix semantics(const Edge& e, int from_level = 0) const {
        if (from_level < 0 || from_level > qubits_) throw std::out_of_range("semantics: level out of range");
        if (qubits_ - from_level > kMaxDenseLevels) {
            throw std::length_error("semantics: dimension 2^" + std::to_string(qubits_ - from_level) +
                                    " exceeds the dense guard");
        }
        if (!e.is_zero() && nodes_[e.node].level < from_level) {
            throw std::invalid_argument("semantics: edge target lies above from_level");
        }
        DenseMatrix m(std::size_t{1} << (qubits_ - from_level));
        fill(e, from_level, Complex{1.0, 0.0}, m, 0, 0);
        return m;
    }

    /// Graphviz rendering: one vertex per node labelled with its level, one
    /// arc per non-zero edge labelled with its weight.
    std::string to_dot(const Edge& root) const {
        std::ostringstream out;
        out << "digraph ltqmdd {\n";
        out << "  root [shape=point];\n";
        out << "  t [shape=box,label=\"1\"];\n";
        auto name = [](NodeId id) { return id == kTerminal ? std::string("t") : "n" + std::to_string(id); };
        auto label = [&](ComplexRef w) {
            const Complex v = numbers_.value(w);
            char buf[64];
            if (v.imag() == 0.0) {
                std::snprintf(buf, sizeof buf, "%.6g", v.real());
            } else {
                std::snprintf(buf, sizeof buf, "%.6g%+.6gi", v.real(), v.imag());
            }
            return std::string(buf);
        };
        out << "  root -> " << name(root.node) << " [label=\"" << label(root.weight) << "\"];\n";
        visit(root, [&](NodeId id) {
            const Node& n = nodes_[id];
            out << "  " << name(id) << " [shape=circle,label=\"" << n.level << "\"];\n";
            for (std::size_t k = 0; k < 4; ++k) {
                if (n.edges[k].is_zero()) continue;
                out << "  " << name(id) << " -> " << name(n.edges[k].node) << " [label=\"" << k << ": "
                    << label(n.edges[k].weight) << "\"];\n";
            }
        });
        out << "}\n";
        return out.str();
    }

    /// Children of `e` viewed at `level`: the node's own edges scaled by the
    /// edge weight, or four copies of `e` when the edge skips the level.
    std::array<Edge, 4> expand(const Edge& e, int level) {
        if (e.is_zero()) return {zero_edge(), zero_edge(), zero_edge(), zero_edge()};
        const Node& n = nodes_[e.node];
        if (n.level != level) return {e, e, e, e};
        std::array<Edge, 4> out;
        const std::array<Edge, 4> edges = n.edges;
        for (std::size_t k = 0; k < 4; ++k) out[k] = scale(edges[k], e.weight);
        return out;
    }

    /// Compute tables for add / multiply / kron.
    struct Caches {
        struct PairHash {
            std::size_t operator()(const std::pair<Edge, Edge>& p) const noexcept {
                return EdgeHash{}(p.first) * 31 + EdgeHash{}(p.second);
            }
        };
        struct MulKey {
            NodeId a;
            NodeId b;
            int level;
            bool operator==(const MulKey&) const = default;
        };
        struct MulHash {
            std::size_t operator()(const MulKey& k) const noexcept {
                return (static_cast<std::size_t>(k.a) * 0x9e3779b97f4a7c15ULL) ^ (static_cast<std::size_t>(k.b) << 20) ^
                       static_cast<std::size_t>(k.level);
            }
        };
        std::unordered_map<std::pair<Edge, Edge>, Edge, PairHash> add;
        std::unordered_map<MulKey, Edge, MulHash> multiply;

        void clear() {
            add.clear();
            multiply.clear();
        }
    };

    Caches& caches() { return caches_; }

    /// Walks every stored node; returns false if any violates normalization
    /// or reduction.
    bool check_invariants() const {
        for (NodeId id = 1; id < nodes_.size(); ++id) {
            const Node& n = nodes_[id];
            const auto& e = n.edges;
            if (e[0] == e[1] && e[0] == e[2] && e[0] == e[3]) return false;
            double max_mag = 0.0;
            for (const auto& c : e) {
                if (c.is_zero() && c.node != kTerminal) return false;
                if (!c.is_zero()) {
                    if (nodes_[c.node].level <= n.level) return false;
                    max_mag = std::max(max_mag, numbers_.magnitude(c.weight));
                }
            }
            if (std::abs(max_mag - 1.0) > 2 * numbers_.tolerance()) return false;
            const double threshold = max_mag * (1.0 - numbers_.tolerance());
            for (const auto& c : e) {
                if (!c.is_zero() && numbers_.magnitude(c.weight) >= threshold) {
                    if (c.weight != ComplexTable::one()) return false;
                    break;
                }
            }
        }
        return true;
    }

  private:
    struct NodeKey {
        int level;
        std::array<Edge, 4> edges;
        bool operator==(const NodeKey&) const = default;
    };
    struct NodeKeyHash {
        std::size_t operator()(const NodeKey& k) const noexcept {
            std::size_t h = static_cast<std::size_t>(k.level);
            for (const auto& e : k.edges) h = h * 0x100000001b3ULL ^ EdgeHash{}(e);
            return h;
        }
    };

    NodeId lookup(const Node& n) {
        const NodeKey key{n.level, n.edges};
        auto [it, inserted] = unique_.try_emplace(key, static_cast<NodeId>(nodes_.size()));
        if (inserted) nodes_.push_back(n);
        return it->second;
    }

    Edge build_rec(const DenseMatrix& u, std::size_t row, std::size_t col, std::size_t dim, int level) {
        if (dim == 1) {
            const ComplexRef w = numbers_.intern(u(row, col));
            return w == ComplexTable::zero() ? zero_edge() : terminal(w);
        }
        const std::size_t half = dim / 2;
        std::array<Edge, 4> children;
        for (std::size_t k = 0; k < 4; ++k) {
            children[k] = build_rec(u, row + (k / 2) * half, col + (k % 2) * half, half, level + 1);
        }
        return make_edge(level, children);
    }

    void fill(const Edge& e, int level, Complex acc, DenseMatrix& m, std::size_t row, std::size_t col) const {
        const std::size_t dim = std::size_t{1} << (qubits_ - level);
        if (e.is_zero()) return;
        const Complex w = acc * numbers_.value(e.weight);
        if (level == qubits_) {
            m(row, col) = w;
            return;
        }
        const Node& n = nodes_[e.node];
        const std::size_t half = dim / 2;
        for (std::size_t k = 0; k < 4; ++k) {
            const std::size_t r = row + (k / 2) * half;
            const std::size_t c = col + (k % 2) * half;
            if (n.level == level) {
                fill(n.edges[k], level + 1, w, m, r, c);
            } else {
                fill(Edge{e.node, ComplexTable::one()}, level + 1, w, m, r, c);
            }
        }
    }

    int qubits_;
    ComplexTable numbers_;
    std::vector<Node> nodes_;
    std::unordered_map<NodeKey, NodeId, NodeKeyHash> unique_;
    Caches caches_;
};

}  // namespace ltqmdd
