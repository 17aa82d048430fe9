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
#include <cctype>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "ltqmdd/dense.hpp"
#include "ltqmdd/operations.hpp"
#include "ltqmdd/package.hpp"

namespace ltqmdd {

/// A gate application. Qubit q lives at DD level q.
struct Gate {
    std::string name;
    std::vector<double> params;
    std::vector<int> controls;
    std::vector<int> targets;

    friend bool operator==(const Gate&, const Gate&) = default;
};

struct Circuit {
    int qubits = 0;
    std::vector<Gate> gates;

    friend bool operator==(const Circuit&, const Circuit&) = default;
};

/// Static description of a supported gate: parameter and operand counts.
struct GateSpec {
    std::string_view name;
    int params;
    int controls;
    int targets;
};

inline constexpr GateSpec kGateSpecs[] = {
    {"x", 0, 0, 1},   {"y", 0, 0, 1},   {"z", 0, 0, 1},  {"h", 0, 0, 1},  {"s", 0, 0, 1},
    {"sdg", 0, 0, 1}, {"t", 0, 0, 1},   {"tdg", 0, 0, 1}, {"rx", 1, 0, 1}, {"ry", 1, 0, 1},
    {"rz", 1, 0, 1},  {"u1", 1, 0, 1},  {"u2", 2, 0, 1}, {"u3", 3, 0, 1}, {"cx", 0, 1, 1},
    {"cz", 0, 1, 1},  {"swap", 0, 0, 2}, {"ccx", 0, 2, 1},
};

inline const GateSpec* find_gate_spec(std::string_view name) {
    for (const auto& spec : kGateSpecs) {
        if (spec.name == name) return &spec;
    }
    return nullptr;
}

/// Base matrix acting on the gate's targets (first target = most significant
/// bit). Controls are not included.
inline DenseMatrix gate_matrix(const Gate& g) {
    using namespace std::complex_literals;
    const double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
    const auto& p = g.params;
    auto u3 = [](double theta, double phi, double lambda) {
        const double c = std::cos(theta / 2);
        const double s = std::sin(theta / 2);
        return DenseMatrix{{c, -std::polar(1.0, lambda) * s}, {std::polar(1.0, phi) * s, std::polar(1.0, phi + lambda) * c}};
    };
    const std::string& n = g.name;
    if (n == "x" || n == "cx" || n == "ccx") return DenseMatrix{{0.0, 1.0}, {1.0, 0.0}};
    if (n == "y") return DenseMatrix{{0.0, -1i}, {1i, 0.0}};
    if (n == "z" || n == "cz") return DenseMatrix{{1.0, 0.0}, {0.0, -1.0}};
    if (n == "h") return DenseMatrix{{inv_sqrt2, inv_sqrt2}, {inv_sqrt2, -inv_sqrt2}};
    if (n == "s") return DenseMatrix{{1.0, 0.0}, {0.0, 1i}};
    if (n == "sdg") return DenseMatrix{{1.0, 0.0}, {0.0, -1i}};
    if (n == "t") return DenseMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, std::numbers::pi / 4)}};
    if (n == "tdg") return DenseMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, -std::numbers::pi / 4)}};
    if (n == "rx") {
        const double c = std::cos(p.at(0) / 2), s = std::sin(p.at(0) / 2);
        return DenseMatrix{{c, -1i * s}, {-1i * s, c}};
    }
    if (n == "ry") {
        const double c = std::cos(p.at(0) / 2), s = std::sin(p.at(0) / 2);
        return DenseMatrix{{c, -s}, {s, c}};
    }
    if (n == "rz") return DenseMatrix{{std::polar(1.0, -p.at(0) / 2), 0.0}, {0.0, std::polar(1.0, p.at(0) / 2)}};
    if (n == "u1") return DenseMatrix{{1.0, 0.0}, {0.0, std::polar(1.0, p.at(0))}};
    if (n == "u2") return u3(std::numbers::pi / 2, p.at(0), p.at(1));
    if (n == "u3") return u3(p.at(0), p.at(1), p.at(2));
    if (n == "swap") {
        return DenseMatrix{{1.0, 0.0, 0.0, 0.0}, {0.0, 0.0, 1.0, 0.0}, {0.0, 1.0, 0.0, 0.0}, {0.0, 0.0, 0.0, 1.0}};
    }
    throw std::invalid_argument("unsupported gate '" + n + "'");
}

/// Validates operand counts, ranges and disjointness against `qubits`.
inline void validate_gate(const Gate& g, int qubits) {
    const GateSpec* spec = find_gate_spec(g.name);
    if (spec == nullptr) throw std::invalid_argument("unsupported gate '" + g.name + "'");
    if (static_cast<int>(g.params.size()) != spec->params || static_cast<int>(g.controls.size()) != spec->controls ||
        static_cast<int>(g.targets.size()) != spec->targets) {
        throw std::invalid_argument("gate '" + g.name + "' has the wrong number of parameters or operands");
    }
    std::vector<int> all = g.controls;
    all.insert(all.end(), g.targets.begin(), g.targets.end());
    for (int q : all) {
        if (q < 0 || q >= qubits) throw std::out_of_range("gate '" + g.name + "' addresses qubit " + std::to_string(q));
    }
    std::sort(all.begin(), all.end());
    if (std::adjacent_find(all.begin(), all.end()) != all.end()) {
        throw std::invalid_argument("gate '" + g.name + "' uses a qubit more than once");
    }
}

// ---------------------------------------------------------------------------
// Parsing

class ParseError : public std::runtime_error {
  public:
    enum class Kind { syntax, unknown_gate, index_out_of_range, unsupported };

    ParseError(Kind kind, int line, int column, const std::string& message)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
          kind_(kind),
          line_(line),
          column_(column) {}

    Kind kind() const { return kind_; }
    int line() const { return line_; }
    int column() const { return column_; }

  private:
    Kind kind_;
    int line_;
    int column_;
};

namespace detail {

struct Token {
    enum class Type { identifier, number, string, symbol, end };
    Type type = Type::end;
    std::string text;
    double number = 0.0;
    int line = 1;
    int column = 1;
};

class Lexer {
  public:
    explicit Lexer(std::string_view src) : src_(src) {}

    std::vector<Token> tokenize() {
        std::vector<Token> out;
        while (true) {
            skip_space_and_comments();
            Token t;
            t.line = line_;
            t.column = col_;
            if (pos_ >= src_.size()) {
                out.push_back(t);
                return out;
            }
            const char c = src_[pos_];
            if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
                t.type = Token::Type::identifier;
                while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
                    t.text += advance();
                }
            } else if (std::isdigit(static_cast<unsigned char>(c)) || (c == '.' && pos_ + 1 < src_.size() &&
                                                                      std::isdigit(static_cast<unsigned char>(src_[pos_ + 1])))) {
                t.type = Token::Type::number;
                while (pos_ < src_.size() && (std::isdigit(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '.')) {
                    t.text += advance();
                }
                if (pos_ < src_.size() && (src_[pos_] == 'e' || src_[pos_] == 'E')) {
                    t.text += advance();
                    if (pos_ < src_.size() && (src_[pos_] == '+' || src_[pos_] == '-')) t.text += advance();
                    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) t.text += advance();
                }
                try {
                    std::size_t used = 0;
                    t.number = std::stod(t.text, &used);
                    if (used != t.text.size()) throw std::invalid_argument("trailing");
                } catch (const std::exception&) {
                    throw ParseError(ParseError::Kind::syntax, t.line, t.column, "malformed number '" + t.text + "'");
                }
            } else if (c == '"') {
                t.type = Token::Type::string;
                advance();
                while (pos_ < src_.size() && src_[pos_] != '"' && src_[pos_] != '\n') t.text += advance();
                if (pos_ >= src_.size() || src_[pos_] != '"') {
                    throw ParseError(ParseError::Kind::syntax, t.line, t.column, "unterminated string");
                }
                advance();
            } else {
                t.type = Token::Type::symbol;
                t.text = advance();
                if ((t.text == "-" && peek() == '>') || (t.text == "=" && peek() == '=')) t.text += advance();
            }
            out.push_back(std::move(t));
        }
    }

  private:
    char peek() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }

    char advance() {
        const char c = src_[pos_++];
        if (c == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        return c;
    }

    void skip_space_and_comments() {
        while (pos_ < src_.size()) {
            if (std::isspace(static_cast<unsigned char>(src_[pos_]))) {
                advance();
            } else if (src_.substr(pos_, 2) == "//") {
                while (pos_ < src_.size() && src_[pos_] != '\n') advance();
            } else if (src_.substr(pos_, 2) == "/*") {
                advance();
                advance();
                while (pos_ < src_.size() && src_.substr(pos_, 2) != "*/") advance();
                if (pos_ < src_.size()) {
                    advance();
                    advance();
                }
            } else {
                break;
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    int line_ = 1;
    int col_ = 1;
};

class Parser {
  public:
    Parser(std::vector<Token> tokens, std::vector<std::string>* warnings)
        : tokens_(std::move(tokens)), warnings_(warnings) {}

    Circuit parse() {
        while (peek().type != Token::Type::end) statement();
        if (circuit_.qubits == 0) {
            throw ParseError(ParseError::Kind::syntax, peek().line, peek().column, "no quantum register declared");
        }
        return circuit_;
    }

  private:
    struct Register {
        int offset;
        int size;
    };

    const Token& peek() const { return tokens_[pos_]; }
    const Token& next() { return tokens_[pos_ < tokens_.size() - 1 ? pos_++ : pos_]; }

    [[noreturn]] void fail(const Token& at, const std::string& msg, ParseError::Kind kind = ParseError::Kind::syntax) {
        throw ParseError(kind, at.line, at.column, msg);
    }

    bool is_symbol(const char* s) const { return peek().type == Token::Type::symbol && peek().text == s; }

    void expect_symbol(const char* s) {
        if (!is_symbol(s)) fail(peek(), std::string("expected '") + s + "'");
        next();
    }

    std::string expect_identifier() {
        if (peek().type != Token::Type::identifier) fail(peek(), "expected identifier");
        return next().text;
    }

    int expect_integer() {
        const Token& t = peek();
        if (t.type != Token::Type::number || t.number != std::floor(t.number) || t.number < 0) {
            fail(t, "expected non-negative integer");
        }
        next();
        return static_cast<int>(t.number);
    }

    void warn(const Token& at, const std::string& msg) {
        if (warnings_ != nullptr) {
            warnings_->push_back(std::to_string(at.line) + ":" + std::to_string(at.column) + ": " + msg);
        }
    }

    void skip_to_semicolon() {
        while (peek().type != Token::Type::end && !is_symbol(";")) next();
        expect_symbol(";");
    }

    void statement() {
        const Token& head = peek();
        if (head.type != Token::Type::identifier) fail(head, "expected statement");
        const std::string word = head.text;
        if (word == "OPENQASM") {
            next();
            const Token& v = peek();
            if (v.type != Token::Type::number) fail(v, "expected version number");
            if (v.number != 2.0) fail(v, "only OpenQASM 2.0 is supported", ParseError::Kind::unsupported);
            next();
            expect_symbol(";");
        } else if (word == "include") {
            next();
            const Token& file = peek();
            if (file.type != Token::Type::string) fail(file, "expected file name string");
            if (file.text != "qelib1.inc") {
                fail(file, "cannot include '" + file.text + "'; only qelib1.inc is built in", ParseError::Kind::unsupported);
            }
            next();
            expect_symbol(";");
        } else if (word == "qreg") {
            next();
            const Token& name_tok = peek();
            const std::string name = expect_identifier();
            expect_symbol("[");
            const int size = expect_integer();
            expect_symbol("]");
            expect_symbol(";");
            if (size == 0) fail(name_tok, "register '" + name + "' is empty");
            if (qregs_.count(name) != 0) fail(name_tok, "register '" + name + "' redeclared");
            qregs_[name] = Register{circuit_.qubits, size};
            circuit_.qubits += size;
        } else if (word == "creg" || word == "measure" || word == "barrier") {
            next();
            skip_to_semicolon();
        } else if (word == "gate") {
            warn(head, "custom gate definitions are not supported; definition skipped");
            next();
            while (peek().type != Token::Type::end && !is_symbol("{")) next();
            expect_symbol("{");
            while (peek().type != Token::Type::end && !is_symbol("}")) next();
            expect_symbol("}");
        } else if (word == "opaque" || word == "reset" || word == "if") {
            warn(head, "'" + word + "' is not supported; statement skipped");
            next();
            skip_to_semicolon();
        } else {
            gate_application();
        }
    }

    double expression() {
        double v = term();
        while (is_symbol("+") || is_symbol("-")) {
            const bool plus = next().text == "+";
            const double rhs = term();
            v = plus ? v + rhs : v - rhs;
        }
        return v;
    }

    double term() {
        double v = unary();
        while (is_symbol("*") || is_symbol("/")) {
            const Token& op = next();
            const double rhs = unary();
            if (op.text == "/") {
                if (rhs == 0.0) fail(op, "division by zero in parameter");
                v /= rhs;
            } else {
                v *= rhs;
            }
        }
        return v;
    }

    double unary() {
        if (is_symbol("-")) {
            next();
            return -unary();
        }
        if (is_symbol("+")) {
            next();
            return unary();
        }
        const Token& t = peek();
        if (t.type == Token::Type::number) {
            next();
            return t.number;
        }
        if (t.type == Token::Type::identifier && t.text == "pi") {
            next();
            return std::numbers::pi;
        }
        if (is_symbol("(")) {
            next();
            const double v = expression();
            expect_symbol(")");
            return v;
        }
        fail(t, "expected parameter expression");
    }

    std::vector<int> operand() {
        const Token& name_tok = peek();
        const std::string name = expect_identifier();
        auto it = qregs_.find(name);
        if (it == qregs_.end()) fail(name_tok, "unknown register '" + name + "'");
        const Register reg = it->second;
        if (is_symbol("[")) {
            next();
            const Token& idx_tok = peek();
            const int idx = expect_integer();
            expect_symbol("]");
            if (idx >= reg.size) {
                fail(idx_tok, "index " + std::to_string(idx) + " out of range for register '" + name + "' of size " +
                                  std::to_string(reg.size),
                     ParseError::Kind::index_out_of_range);
            }
            return {reg.offset + idx};
        }
        std::vector<int> all(static_cast<std::size_t>(reg.size));
        for (int i = 0; i < reg.size; ++i) all[static_cast<std::size_t>(i)] = reg.offset + i;
        return all;
    }

    void gate_application() {
        const Token& head = peek();
        std::string name = next().text;
        if (name == "U") name = "u3";
        if (name == "CX") name = "cx";
        const GateSpec* spec = find_gate_spec(name);
        if (spec == nullptr) fail(head, "unknown gate '" + name + "'", ParseError::Kind::unknown_gate);

        std::vector<double> params;
        if (is_symbol("(")) {
            next();
            if (!is_symbol(")")) {
                params.push_back(expression());
                while (is_symbol(",")) {
                    next();
                    params.push_back(expression());
                }
            }
            expect_symbol(")");
        }
        if (static_cast<int>(params.size()) != spec->params) {
            fail(head, "gate '" + name + "' expects " + std::to_string(spec->params) + " parameter(s)");
        }

        std::vector<std::vector<int>> args;
        args.push_back(operand());
        while (is_symbol(",")) {
            next();
            args.push_back(operand());
        }
        expect_symbol(";");
        const int arity = spec->controls + spec->targets;
        if (static_cast<int>(args.size()) != arity) {
            fail(head, "gate '" + name + "' expects " + std::to_string(arity) + " operand(s)");
        }

        // Whole-register operands broadcast; all registers must agree in size.
        std::size_t width = 1;
        for (const auto& a : args) {
            if (a.size() == 1) continue;
            if (width != 1 && a.size() != width) fail(head, "register operands differ in size");
            width = a.size();
        }
        for (std::size_t k = 0; k < width; ++k) {
            Gate g;
            g.name = name;
            g.params = params;
            for (int i = 0; i < arity; ++i) {
                const auto& a = args[static_cast<std::size_t>(i)];
                const int q = a.size() == 1 ? a[0] : a[k];
                (i < spec->controls ? g.controls : g.targets).push_back(q);
            }
            try {
                validate_gate(g, circuit_.qubits);
            } catch (const std::exception& e) {
                fail(head, e.what());
            }
            circuit_.gates.push_back(std::move(g));
        }
    }

    std::vector<Token> tokens_;
    std::size_t pos_ = 0;
    std::vector<std::string>* warnings_;
    std::map<std::string, Register> qregs_;
    Circuit circuit_;
};

}  // namespace detail

/// Parses an OpenQASM 2.0 subset. Registers are concatenated in declaration
/// order. creg/measure/barrier are no-ops; other unsupported statements are
/// skipped and reported through `warnings`.
inline Circuit parse_qasm(std::string_view source, std::vector<std::string>* warnings = nullptr) {
    return detail::Parser(detail::Lexer(source).tokenize(), warnings).parse();
}

/// Renders a circuit as OpenQASM 2.0 over a single register `q`.
inline std::string to_qasm(const Circuit& c) {
    std::string out = "OPENQASM 2.0;\ninclude \"qelib1.inc\";\nqreg q[" + std::to_string(c.qubits) + "];\n";
    for (const auto& g : c.gates) {
        out += g.name;
        if (!g.params.empty()) {
            out += '(';
            for (std::size_t i = 0; i < g.params.size(); ++i) {
                char buf[40];
                std::snprintf(buf, sizeof buf, "%.17g", g.params[i]);
                out += (i ? "," : "") + std::string(buf);
            }
            out += ')';
        }
        bool first = true;
        for (const auto* list : {&g.controls, &g.targets}) {
            for (int q : *list) {
                out += (first ? " q[" : ",q[") + std::to_string(q) + "]";
                first = false;
            }
        }
        out += ";\n";
    }
    return out;
}

// ---------------------------------------------------------------------------
// DD construction

/// Full 2^n operator of a gate, built level by level. A control level routes
/// its (0,0) block to the identity on the targets and its (1,1) block onward;
/// target levels select rows and columns of the base matrix.
inline Edge gate_dd(Package& pkg, const Gate& g) {
    const int n = pkg.qubits();
    validate_gate(g, n);
    const DenseMatrix base = gate_matrix(g);
    const int t = static_cast<int>(g.targets.size());
    std::vector<int> role(static_cast<std::size_t>(n), -2);  // -2 idle, -1 control, k target position
    for (int c : g.controls) role[static_cast<std::size_t>(c)] = -1;
    for (int k = 0; k < t; ++k) role[static_cast<std::size_t>(g.targets[static_cast<std::size_t>(k)])] = k;

    std::map<std::tuple<int, bool, std::size_t, std::size_t>, Edge> memo;
    auto rec = [&](auto&& self, int level, bool active, std::size_t row, std::size_t col) -> Edge {
        if (level == n) {
            const Complex v = active ? base(row, col) : (row == col ? Complex{1.0, 0.0} : Complex{});
            const ComplexRef w = pkg.numbers().intern(v);
            return w == ComplexTable::zero() ? Package::zero_edge() : pkg.terminal(w);
        }
        const auto key = std::make_tuple(level, active, row, col);
        if (auto it = memo.find(key); it != memo.end()) return it->second;
        const int r = role[static_cast<std::size_t>(level)];
        std::array<Edge, 4> children{Package::zero_edge(), Package::zero_edge(), Package::zero_edge(),
                                     Package::zero_edge()};
        if (r == -1) {
            children[0] = self(self, level + 1, false, row, col);
            children[3] = self(self, level + 1, active, row, col);
        } else if (r >= 0) {
            const std::size_t bit = std::size_t{1} << (t - 1 - r);
            for (std::size_t k = 0; k < 4; ++k) {
                children[k] = self(self, level + 1, active, row | ((k / 2) ? bit : 0), col | ((k % 2) ? bit : 0));
            }
        } else {
            children[0] = self(self, level + 1, active, row, col);
            children[3] = children[0];
        }
        const Edge e = pkg.make_edge(level, children);
        memo.emplace(key, e);
        return e;
    };
    return rec(rec, 0, true, 0, 0);
}

/// Operator of the whole circuit, G_k ... G_1, in the standard order.
inline Edge compile(Package& pkg, const Circuit& c) {
    if (c.qubits != pkg.qubits()) throw std::invalid_argument("compile: circuit and package qubit counts differ");
    Edge e = pkg.identity();
    for (const auto& g : c.gates) e = multiply(pkg, gate_dd(pkg, g), e);
    return e;
}

}  // namespace ltqmdd
