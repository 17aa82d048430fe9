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


#include <cmath>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "ltqmdd/ltqmdd.hpp"
#include "test_util.hpp"

namespace ltqmdd {
namespace {

const double kTol = 1e-9;

ParseError::Kind parse_error_kind(const std::string& src) {
    try {
        parse_qasm(src);
    } catch (const ParseError& e) {
        return e.kind();
    }
    ADD_FAILURE() << "no error for: " << src;
    return ParseError::Kind::syntax;
}

TEST(Parse, BellCircuit) {
    const Circuit c = parse_qasm("qreg q[2]; h q[0]; cx q[0],q[1];");
    EXPECT_EQ(c.qubits, 2);
    ASSERT_EQ(c.gates.size(), 2u);
    EXPECT_EQ(c.gates[0], (Gate{"h", {}, {}, {0}}));
    EXPECT_EQ(c.gates[1], (Gate{"cx", {}, {0}, {1}}));
}

TEST(Parse, HeaderIncludeAndNoOps) {
    std::vector<std::string> warnings;
    const Circuit c = parse_qasm(R"(OPENQASM 2.0;
include "qelib1.inc";
// comment
qreg a[2];
qreg b[1];
creg c[3];
barrier a, b;
/* block
   comment */
x b[0];
measure a[0] -> c[0];
reset a[0];
)",
                                 &warnings);
    EXPECT_EQ(c.qubits, 3);
    ASSERT_EQ(c.gates.size(), 1u);
    EXPECT_EQ(c.gates[0].targets, std::vector<int>{2});
    ASSERT_EQ(warnings.size(), 1u);
    EXPECT_NE(warnings[0].find("reset"), std::string::npos);
}

TEST(Parse, ParameterExpressions) {
    const Circuit c = parse_qasm("qreg q[1]; rz(pi/2) q[0]; u3(-pi, 2*(1+0.5), 1e-3) q[0]; U(0,0,pi) q[0];");
    ASSERT_EQ(c.gates.size(), 3u);
    EXPECT_DOUBLE_EQ(c.gates[0].params[0], std::numbers::pi / 2);
    EXPECT_DOUBLE_EQ(c.gates[1].params[0], -std::numbers::pi);
    EXPECT_DOUBLE_EQ(c.gates[1].params[1], 3.0);
    EXPECT_DOUBLE_EQ(c.gates[1].params[2], 1e-3);
    EXPECT_EQ(c.gates[2].name, "u3");
}

TEST(Parse, RegisterBroadcast) {
    const Circuit c = parse_qasm("qreg a[3]; qreg b[3]; h a; cx a, b; CX a[0], b;");
    ASSERT_EQ(c.gates.size(), 9u);
    EXPECT_EQ(c.gates[3], (Gate{"cx", {}, {0}, {3}}));
    EXPECT_EQ(c.gates[5], (Gate{"cx", {}, {2}, {5}}));
    EXPECT_EQ(c.gates[8], (Gate{"cx", {}, {0}, {5}}));
}

TEST(Parse, CustomGateDefinitionIsSkippedWithWarning) {
    std::vector<std::string> warnings;
    const Circuit c = parse_qasm("qreg q[1]; gate foo a { h a; } x q[0];", &warnings);
    EXPECT_EQ(c.gates.size(), 1u);
    EXPECT_EQ(warnings.size(), 1u);
}

TEST(Parse, Errors) {
    EXPECT_EQ(parse_error_kind("qreg q[2]; h q[2];"), ParseError::Kind::index_out_of_range);
    EXPECT_EQ(parse_error_kind("qreg q[2]; foo q[0];"), ParseError::Kind::unknown_gate);
    EXPECT_EQ(parse_error_kind("OPENQASM 3.0; qreg q[1];"), ParseError::Kind::unsupported);
    EXPECT_EQ(parse_error_kind("include \"other.inc\"; qreg q[1];"), ParseError::Kind::unsupported);
    EXPECT_EQ(parse_error_kind("qreg q[2]; h q[0]"), ParseError::Kind::syntax);
    EXPECT_EQ(parse_error_kind("qreg q[2]; cx q[0],q[0];"), ParseError::Kind::syntax);
    EXPECT_EQ(parse_error_kind("qreg q[2]; rz q[0];"), ParseError::Kind::syntax);
    EXPECT_EQ(parse_error_kind("qreg q[2]; h r[0];"), ParseError::Kind::syntax);
    EXPECT_EQ(parse_error_kind("qreg q[2]; qreg q[1];"), ParseError::Kind::syntax);
    EXPECT_EQ(parse_error_kind("h q[0];"), ParseError::Kind::syntax);
    EXPECT_EQ(parse_error_kind(""), ParseError::Kind::syntax);
    EXPECT_EQ(parse_error_kind("qreg q[1]; rz(1/0) q[0];"), ParseError::Kind::syntax);
    EXPECT_EQ(parse_error_kind("qreg q[1]; rz(1.2.3) q[0];"), ParseError::Kind::syntax);
    EXPECT_EQ(parse_error_kind("qreg a[2]; qreg b[3]; cx a, b;"), ParseError::Kind::syntax);
}

TEST(Parse, ErrorCarriesPosition) {
    try {
        parse_qasm("qreg q[2];\n  h q[5];");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2);
        EXPECT_GE(e.column(), 3);
    }
}

TEST(Parse, RoundTripsThroughText) {
    std::mt19937_64 rng(testing::kSeed);
    for (int k = 0; k < 20; ++k) {
        const Circuit c = testing::random_circuit(1 + k % 4, 25, rng);
        EXPECT_EQ(parse_qasm(to_qasm(c)), c);
    }
}

TEST(GateDd, PauliX) {
    Package pkg(1);
    EXPECT_EQ(pkg.semantics(gate_dd(pkg, Gate{"x", {}, {}, {0}})), (DenseMatrix{{0, 1}, {1, 0}}));
}

TEST(GateDd, Cnot) {
    Package pkg(2);
    const DenseMatrix cnot{{1, 0, 0, 0}, {0, 1, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}};
    EXPECT_EQ(pkg.semantics(gate_dd(pkg, Gate{"cx", {}, {0}, {1}})), cnot);
    const DenseMatrix reversed{{1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 0}, {0, 1, 0, 0}};
    EXPECT_EQ(pkg.semantics(gate_dd(pkg, Gate{"cx", {}, {1}, {0}})), reversed);
}

TEST(GateDd, Rz) {
    Package pkg(1);
    const double theta = std::numbers::pi / 3;
    const Complex i{0, 1};
    const DenseMatrix expect{{std::exp(-i * theta / 2.0), 0}, {0, std::exp(i * theta / 2.0)}};
    EXPECT_TRUE(approx_equal(pkg.semantics(gate_dd(pkg, Gate{"rz", {theta}, {}, {0}})), expect, kTol));
}

TEST(GateDd, MatchesEmbeddingForEveryGate) {
    std::mt19937_64 rng(testing::kSeed + 1);
    Package pkg(4);
    for (int k = 0; k < 200; ++k) {
        const Circuit c = testing::random_circuit(4, 1, rng);
        const Gate& g = c.gates[0];
        EXPECT_TRUE(approx_equal(pkg.semantics(gate_dd(pkg, g)), oracle::embed_gate(g, 4), kTol)) << to_qasm(c);
    }
}

TEST(GateDd, RejectsInvalidGates) {
    Package pkg(2);
    EXPECT_THROW(gate_dd(pkg, Gate{"h", {}, {}, {2}}), std::out_of_range);
    EXPECT_THROW(gate_dd(pkg, Gate{"cx", {}, {1}, {1}}), std::invalid_argument);
    EXPECT_THROW(gate_dd(pkg, Gate{"rz", {}, {}, {0}}), std::invalid_argument);
    EXPECT_THROW(gate_dd(pkg, Gate{"foo", {}, {}, {0}}), std::invalid_argument);
}

TEST(Compile, HadamardTwiceIsIdentity) {
    Package pkg(1);
    EXPECT_EQ(compile(pkg, parse_qasm("qreg q[1]; h q[0]; h q[0];")), pkg.identity());
}

TEST(Compile, EmptyCircuitIsIdentity) {
    for (int n = 1; n <= 4; ++n) {
        Package pkg(n);
        const Circuit c{n, {}};
        EXPECT_EQ(compile(pkg, c), pkg.identity());
        EXPECT_EQ(pkg.size(compile(pkg, c)), static_cast<std::size_t>(n));
    }
}

TEST(Compile, GhzMatchesDenseProduct) {
    Package pkg(3);
    const Circuit c = parse_qasm("qreg q[3]; h q[0]; cx q[0],q[1]; cx q[1],q[2];");
    EXPECT_TRUE(approx_equal(pkg.semantics(compile(pkg, c)), oracle::dense_compile(c), kTol));
}

TEST(Compile, ResultIsUnitary) {
    std::mt19937_64 rng(testing::kSeed + 2);
    for (int n = 1; n <= 4; ++n) {
        Package pkg(n);
        const DenseMatrix u = pkg.semantics(compile(pkg, testing::random_circuit(n, 30, rng)));
        EXPECT_TRUE(approx_equal(u * adjoint(u), DenseMatrix::identity(u.dim()), 1e-8));
    }
}

TEST(Compile, QubitCountMustMatch) {
    Package pkg(2);
    EXPECT_THROW(compile(pkg, Circuit{3, {}}), std::invalid_argument);
}

}  // namespace
}  // namespace ltqmdd
