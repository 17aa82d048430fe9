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


#include <random>
#include <string>

#include <gtest/gtest.h>

#include "ltqmdd/ltqmdd.hpp"
#include "test_util.hpp"

namespace ltqmdd {
namespace {

using testing::pattern_matrix;

TEST(MakeEdge, EqualChildrenCollapse) {
    Package pkg(2);
    const Edge a = pkg.terminal(Complex{0.5, 0.25});
    const Edge e = pkg.make_edge(1, {a, a, a, a});
    EXPECT_EQ(e, a);
    EXPECT_EQ(pkg.stored_nodes(), 0u);
}

TEST(MakeEdge, NormalizesByLeftmostMaximalWeight) {
    Package pkg(1);
    auto& num = pkg.numbers();
    const Edge e = pkg.make_edge(0, {pkg.terminal(Complex{0.5, 0}), pkg.terminal(Complex{0, -2}),
                                     pkg.terminal(Complex{-1, 0}), pkg.terminal(Complex{2, 0})});
    EXPECT_EQ(num.value(e.weight), Complex(0, -2));
    const Node& n = pkg.node(e.node);
    EXPECT_EQ(n.edges[1].weight, ComplexTable::one());
    EXPECT_NEAR(std::abs(num.value(n.edges[0].weight) - Complex(0, 0.25)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(num.value(n.edges[3].weight) - Complex(0, 1)), 0.0, 1e-15);
    EXPECT_TRUE(pkg.check_invariants());
}

TEST(MakeEdge, PivotIsLeftmostAmongTies) {
    Package pkg(1);
    const Edge e = pkg.make_edge(0, {Package::zero_edge(), pkg.terminal(Complex{0, 1}), pkg.terminal(Complex{-1, 0}),
                                     pkg.terminal(Complex{0.5, 0})});
    EXPECT_EQ(pkg.node(e.node).edges[1].weight, ComplexTable::one());
    EXPECT_NE(pkg.node(e.node).edges[2].weight, ComplexTable::one());
}

TEST(MakeEdge, IsHashConsed) {
    Package pkg(2);
    const Edge x = pkg.terminal(Complex{3, 0});
    const Edge y = pkg.terminal(Complex{1, 1});
    const Edge a = pkg.make_edge(1, {x, y, Package::zero_edge(), x});
    const std::size_t nodes = pkg.stored_nodes();
    const Edge b = pkg.make_edge(1, {x, y, Package::zero_edge(), x});
    EXPECT_EQ(a, b);
    EXPECT_EQ(pkg.stored_nodes(), nodes);
    // Scaled children give the same node with a scaled weight.
    const Edge c = pkg.make_edge(1, {pkg.scale(x, y.weight), pkg.scale(y, y.weight), Package::zero_edge(),
                                     pkg.scale(x, y.weight)});
    EXPECT_EQ(c.node, a.node);
}

TEST(MakeEdge, RejectsBadLevels) {
    Package pkg(2);
    const Edge t = pkg.terminal(ComplexTable::one());
    EXPECT_THROW(pkg.make_edge(-1, {t, t, t, t}), std::out_of_range);
    EXPECT_THROW(pkg.make_edge(2, {t, t, t, t}), std::out_of_range);
    const Edge lower = pkg.make_edge(1, {t, Package::zero_edge(), Package::zero_edge(), t});
    EXPECT_THROW(pkg.make_edge(1, {lower, t, t, t}), std::invalid_argument);
}

TEST(Package, RejectsBadQubitCounts) {
    EXPECT_THROW(Package(0), std::invalid_argument);
    EXPECT_THROW(Package(63), std::invalid_argument);
    EXPECT_NO_THROW(Package(62));
}

TEST(Size, TerminalAndZeroEdgesHaveSizeZero) {
    Package pkg(3);
    EXPECT_EQ(pkg.size(pkg.terminal(ComplexTable::one())), 0u);
    EXPECT_EQ(pkg.size(Package::zero_edge()), 0u);
}

TEST(Size, PatternStandardOrderHasSizeFive) {
    Package pkg(2);
    EXPECT_EQ(pkg.size(pkg.from_dense(pattern_matrix())), 5u);
}

TEST(Size, PatternSwappedOrderHasSizeFour) {
    // Rows 1 and 2 exchanged, then columns 1 and 2.
    const DenseMatrix u = pattern_matrix();
    const std::size_t p[4] = {0, 2, 1, 3};
    DenseMatrix b(4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) b(i, j) = u(p[i], p[j]);
    Package pkg(2);
    EXPECT_EQ(pkg.size(pkg.from_dense(b)), 4u);
}

TEST(Size, LevelCountsSumToSize) {
    Package pkg(3);
    std::mt19937_64 rng(testing::kSeed);
    for (int k = 0; k < 20; ++k) {
        const Edge e = pkg.from_dense(testing::structured_matrix(3, rng));
        const auto counts = pkg.level_counts(e);
        ASSERT_EQ(counts.size(), 3u);
        EXPECT_EQ(counts[0] + counts[1] + counts[2], pkg.size(e));
        EXPECT_LE(counts[0], 1u);
    }
}

TEST(Size, BoundedByFullTree) {
    std::mt19937_64 rng(testing::kSeed + 1);
    for (int n = 1; n <= 4; ++n) {
        Package pkg(n);
        const Edge e = pkg.from_dense(testing::generic_matrix(n, rng));
        std::size_t bound = 0;
        for (int l = 0; l < n; ++l) bound += std::size_t{1} << (2 * l);
        EXPECT_LE(pkg.size(e), bound);
        EXPECT_EQ(pkg.size(e), bound) << "generic entries leave nothing to share";
    }
}

TEST(Semantics, TerminalEdgeIsAConstantBlock) {
    Package pkg(1);
    const Complex a{0.5, -1.5};
    const DenseMatrix m = pkg.semantics(pkg.terminal(a), 0);
    EXPECT_EQ(m, (DenseMatrix{{a, a}, {a, a}}));
    EXPECT_EQ(pkg.semantics(pkg.terminal(a), 1), (DenseMatrix{{a}}));
}

TEST(Semantics, InvertsFromDense) {
    std::mt19937_64 rng(testing::kSeed + 2);
    for (int n = 1; n <= 5; ++n) {
        Package pkg(n);
        for (int k = 0; k < 5; ++k) {
            const DenseMatrix u = k % 2 == 0 ? testing::structured_matrix(n, rng) : testing::generic_matrix(n, rng);
            EXPECT_TRUE(approx_equal(pkg.semantics(pkg.from_dense(u)), u, 4 * n * kDefaultTolerance));
        }
    }
    Package pkg(2);
    EXPECT_TRUE(approx_equal(pkg.semantics(pkg.from_dense(pattern_matrix())), pattern_matrix(), 1e-9));
}

TEST(Semantics, SubBlockFromLevel) {
    Package pkg(2);
    const Edge e = pkg.from_dense(pattern_matrix());
    const Node& top = pkg.node(e.node);
    const DenseMatrix block = scaled(pkg.semantics(top.edges[1], 1), pkg.weight(e));
    EXPECT_TRUE(approx_equal(block, (DenseMatrix{{1, 3}, {4, 3}}), 1e-9));
}

TEST(Semantics, Guards) {
    Package pkg(9);
    EXPECT_THROW(pkg.semantics(pkg.identity()), std::length_error);
    EXPECT_EQ(pkg.semantics(pkg.identity_from(1), 1), DenseMatrix::identity(256));
    EXPECT_THROW(pkg.semantics(pkg.identity(), 10), std::out_of_range);
    EXPECT_THROW(pkg.semantics(pkg.identity(), 2), std::invalid_argument);
}

TEST(Identity, OneNodePerLevel) {
    for (int n = 1; n <= 6; ++n) {
        Package pkg(n);
        EXPECT_EQ(pkg.size(pkg.identity()), static_cast<std::size_t>(n));
    }
    Package one(1);
    const Edge e = one.identity();
    const Node& n = one.node(e.node);
    EXPECT_EQ(e.weight, ComplexTable::one());
    EXPECT_EQ(n.edges[0], one.terminal(ComplexTable::one()));
    EXPECT_TRUE(n.edges[1].is_zero());
    EXPECT_TRUE(n.edges[2].is_zero());
    EXPECT_EQ(n.edges[3], one.terminal(ComplexTable::one()));
}

TEST(Identity, SemanticsIsIdentity) {
    Package pkg(3);
    EXPECT_EQ(pkg.semantics(pkg.identity()), DenseMatrix::identity(8));
    Package two(2);
    EXPECT_EQ(two.semantics(two.identity()), DenseMatrix::identity(4));
    EXPECT_EQ(two.from_dense(DenseMatrix::identity(4)), two.identity());
}

TEST(Normalization, PathProductsReproduceEntries) {
    std::mt19937_64 rng(testing::kSeed + 3);
    Package pkg(3);
    for (int k = 0; k < 10; ++k) {
        const DenseMatrix u = testing::structured_matrix(3, rng);
        const Edge e = pkg.from_dense(u);
        EXPECT_TRUE(approx_equal(oracle::dd_to_dense(pkg, e), u, 1e-9));
    }
    EXPECT_TRUE(pkg.check_invariants());
}

TEST(Canonicity, EqualMatricesGiveEqualEdges) {
    std::mt19937_64 rng(testing::kSeed + 4);
    Package pkg(3);
    for (int k = 0; k < 10; ++k) {
        const DenseMatrix u = testing::structured_matrix(3, rng);
        const Edge a = pkg.from_dense(u);
        const Edge b = pkg.from_dense(scaled(u, Complex{1.0 + 1e-12, 0}));
        EXPECT_EQ(a, b);
        const Edge c = pkg.from_dense(scaled(u, Complex{0, 2}));
        EXPECT_EQ(a.node, c.node);
    }
}

TEST(Dot, ListsNodesAndNonZeroEdges) {
    Package pkg(1);
    const std::string dot = pkg.to_dot(pkg.identity());
    EXPECT_NE(dot.find("digraph"), std::string::npos);
    EXPECT_NE(dot.find("0: 1"), std::string::npos);
    EXPECT_NE(dot.find("3: 1"), std::string::npos);
    EXPECT_EQ(dot.find("1: "), std::string::npos);
    EXPECT_EQ(dot.find("2: "), std::string::npos);
}

TEST(Expand, SkippedLevelReplicates) {
    Package pkg(2);
    const Edge lower = pkg.identity_from(1);
    const auto kids = pkg.expand(pkg.scale(lower, pkg.numbers().intern(2.0, 0.0)), 0);
    for (const auto& k : kids) EXPECT_EQ(k.node, lower.node);
    const auto zeros = pkg.expand(Package::zero_edge(), 0);
    for (const auto& k : zeros) EXPECT_TRUE(k.is_zero());
}

}  // namespace
}  // namespace ltqmdd
