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

#include <bit>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ltqmdd/dense.hpp"

namespace ltqmdd {

/// The three adjacent-level exchange procedures. Each rewrites rows i and
/// i+1 of the transformation matrix:
///   standard: (r_i, r_i+1) -> (r_i+1, r_i)
///   upper:    (r_i, r_i+1) -> (r_i ^ r_i+1, r_i)
///   lower:    (r_i, r_i+1) -> (r_i+1, r_i ^ r_i+1)
enum class ExchangeKind : std::uint8_t { standard, upper, lower };

inline char kind_code(ExchangeKind k) {
    switch (k) {
        case ExchangeKind::standard: return 's';
        case ExchangeKind::upper: return 'u';
        case ExchangeKind::lower: return 'l';
    }
    return '?';
}

/// One level exchange: the procedure and the upper of the two levels it swaps.
struct MoveRecord {
    ExchangeKind kind = ExchangeKind::standard;
    int level = 0;

    friend bool operator==(const MoveRecord&, const MoveRecord&) = default;
};

/// A linear transformation over GF(2), stored as an n x n Boolean matrix.
///
/// Row i is the linear combination assigned to DD level i; bit j of a row is
/// set iff variable x_j occurs in it. Index bit 0 (x_0) is the most
/// significant bit of a basis-state index.
class LinearTransform {
  public:
    static constexpr int kMaxVariables = 63;

    LinearTransform() = default;

    static LinearTransform identity(int n) {
        check_count(n);
        LinearTransform t;
        t.n_ = n;
        t.rows_.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) t.rows_[static_cast<std::size_t>(i)] = std::uint64_t{1} << i;
        return t;
    }

    /// Builds a transformation from raw rows. Rank is not checked.
    static LinearTransform from_rows(int n, std::vector<std::uint64_t> rows) {
        check_count(n);
        if (rows.size() != static_cast<std::size_t>(n)) {
            throw std::invalid_argument("LinearTransform: expected one row per variable");
        }
        const std::uint64_t mask = (n == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
        for (auto r : rows) {
            if ((r & ~mask) != 0) throw std::invalid_argument("LinearTransform: variable index out of range");
        }
        LinearTransform t;
        t.n_ = n;
        t.rows_ = std::move(rows);
        return t;
    }

    /// Parses "[x0^x1, x1, x2]". The variable count is the number of rows.
    static LinearTransform parse(std::string_view text) {
        std::size_t pos = 0;
        auto skip_ws = [&] {
            while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
        };
        auto fail = [&](const char* what) {
            throw std::invalid_argument("cannot parse transformation \"" + std::string(text) + "\": " + what +
                                        " at offset " + std::to_string(pos));
        };
        std::vector<std::uint64_t> rows;
        skip_ws();
        if (pos >= text.size() || text[pos] != '[') fail("expected '['");
        ++pos;
        skip_ws();
        if (pos < text.size() && text[pos] == ']') fail("empty transformation");
        while (true) {
            std::uint64_t row = 0;
            while (true) {
                skip_ws();
                if (pos >= text.size() || text[pos] != 'x') fail("expected variable 'x<k>'");
                ++pos;
                const std::size_t start = pos;
                int var = 0;
                while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
                    var = var * 10 + (text[pos] - '0');
                    if (var > kMaxVariables) fail("variable index too large");
                    ++pos;
                }
                if (pos == start) fail("expected variable index");
                row ^= std::uint64_t{1} << var;
                skip_ws();
                if (pos < text.size() && text[pos] == '^') {
                    ++pos;
                    continue;
                }
                break;
            }
            if (row == 0) fail("combination cancels to zero");
            rows.push_back(row);
            if (pos < text.size() && text[pos] == ',') {
                ++pos;
                continue;
            }
            if (pos < text.size() && text[pos] == ']') {
                ++pos;
                break;
            }
            fail("expected ',' or ']'");
        }
        skip_ws();
        if (pos != text.size()) fail("trailing characters");
        const int n = static_cast<int>(rows.size());
        return from_rows(n, std::move(rows));
    }

    int variables() const { return n_; }
    std::uint64_t row(int i) const { return rows_.at(static_cast<std::size_t>(i)); }
    const std::vector<std::uint64_t>& rows() const { return rows_; }
    bool contains(int row_index, int variable) const { return ((row(row_index) >> variable) & 1U) != 0; }

    bool is_identity() const { return *this == identity(n_); }

    /// Maps a basis index v to the index whose bit i is the value of
    /// combination i under v.
    std::uint64_t apply(std::uint64_t index) const {
        std::uint64_t vars = 0;  // bit j = value of x_j
        for (int j = 0; j < n_; ++j) vars |= ((index >> (n_ - 1 - j)) & 1U) << j;
        std::uint64_t out = 0;
        for (int i = 0; i < n_; ++i) {
            const auto bit = static_cast<std::uint64_t>(std::popcount(rows_[static_cast<std::size_t>(i)] & vars) & 1);
            out |= bit << (n_ - 1 - i);
        }
        return out;
    }

    int rank() const {
        std::vector<std::uint64_t> m = rows_;
        int r = 0;
        for (int col = 0; col < n_ && r < n_; ++col) {
            const std::uint64_t bit = std::uint64_t{1} << col;
            int pivot = -1;
            for (int i = r; i < n_; ++i) {
                if ((m[static_cast<std::size_t>(i)] & bit) != 0) {
                    pivot = i;
                    break;
                }
            }
            if (pivot < 0) continue;
            std::swap(m[static_cast<std::size_t>(r)], m[static_cast<std::size_t>(pivot)]);
            for (int i = 0; i < n_; ++i) {
                if (i != r && (m[static_cast<std::size_t>(i)] & bit) != 0) {
                    m[static_cast<std::size_t>(i)] ^= m[static_cast<std::size_t>(r)];
                }
            }
            ++r;
        }
        return r;
    }

    bool is_full_rank() const { return rank() == n_; }

    /// GF(2) matrix inverse (Gauss-Jordan on [L | I]).
    LinearTransform inverse() const {
        std::vector<std::uint64_t> m = rows_;
        std::vector<std::uint64_t> inv = identity(n_).rows_;
        for (int col = 0; col < n_; ++col) {
            const std::uint64_t bit = std::uint64_t{1} << col;
            int pivot = -1;
            for (int i = col; i < n_; ++i) {
                if ((m[static_cast<std::size_t>(i)] & bit) != 0) {
                    pivot = i;
                    break;
                }
            }
            if (pivot < 0) throw std::domain_error("LinearTransform::inverse: matrix is singular");
            std::swap(m[static_cast<std::size_t>(col)], m[static_cast<std::size_t>(pivot)]);
            std::swap(inv[static_cast<std::size_t>(col)], inv[static_cast<std::size_t>(pivot)]);
            for (int i = 0; i < n_; ++i) {
                if (i != col && (m[static_cast<std::size_t>(i)] & bit) != 0) {
                    m[static_cast<std::size_t>(i)] ^= m[static_cast<std::size_t>(col)];
                    inv[static_cast<std::size_t>(i)] ^= inv[static_cast<std::size_t>(col)];
                }
            }
        }
        return from_rows(n_, std::move(inv));
    }

    /// Row update performed by an exchange procedure at levels (i, i+1).
    LinearTransform row_update(int i, ExchangeKind kind) const {
        if (i < 0 || i + 1 >= n_) {
            throw std::out_of_range("LinearTransform::row_update: level " + std::to_string(i) + " out of range");
        }
        LinearTransform t = *this;
        const std::uint64_t a = rows_[static_cast<std::size_t>(i)];
        const std::uint64_t b = rows_[static_cast<std::size_t>(i + 1)];
        auto& ri = t.rows_[static_cast<std::size_t>(i)];
        auto& rj = t.rows_[static_cast<std::size_t>(i + 1)];
        switch (kind) {
            case ExchangeKind::standard: ri = b; rj = a; break;
            case ExchangeKind::upper: ri = a ^ b; rj = a; break;
            case ExchangeKind::lower: ri = b; rj = a ^ b; break;
        }
        return t;
    }

    /// Renders as "[x0^x1, x1]".
    std::string to_string() const {
        std::string out = "[";
        for (int i = 0; i < n_; ++i) {
            if (i > 0) out += ", ";
            bool first = true;
            for (int j = 0; j < n_; ++j) {
                if (!contains(i, j)) continue;
                if (!first) out += '^';
                out += 'x' + std::to_string(j);
                first = false;
            }
            if (first) out += '0';
        }
        return out + "]";
    }

    friend bool operator==(const LinearTransform&, const LinearTransform&) = default;

  private:
    static void check_count(int n) {
        if (n < 0 || n > kMaxVariables) throw std::invalid_argument("LinearTransform: unsupported variable count");
    }

    int n_ = 0;
    std::vector<std::uint64_t> rows_;
};

/// Entry (i, j) of the result is U[apply(i), apply(j)].
inline DenseMatrix transform_matrix(const DenseMatrix& u, const LinearTransform& lt) {
    if (u.dim() != (std::size_t{1} << lt.variables())) {
        throw std::invalid_argument("transform_matrix: dimension does not match variable count");
    }
    const std::size_t dim = u.dim();
    std::vector<std::uint64_t> image(dim);
    for (std::size_t i = 0; i < dim; ++i) image[i] = lt.apply(i);
    DenseMatrix r(dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = 0; j < dim; ++j) r(i, j) = u(image[i], image[j]);
    return r;
}

/// Entry i of the result is v[apply(i)].
inline DenseVector transform_vector(const DenseVector& v, const LinearTransform& lt) {
    if (v.size() != (std::size_t{1} << lt.variables())) {
        throw std::invalid_argument("transform_vector: dimension does not match variable count");
    }
    DenseVector r(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) r[i] = v[lt.apply(i)];
    return r;
}

/// Exchange sequence that, applied to the identity via row_update in order,
/// yields `target`. Throws if `target` is singular.
inline std::vector<MoveRecord> moves_to_realize(const LinearTransform& target) {
    const int n = target.variables();
    std::vector<std::uint64_t> m = target.rows();
    // Elementary ops recorded while reducing `target` to the identity. Every
    // op is an involution, so replaying them backwards builds `target`.
    enum class Op { swap, add_down, add_up };
    std::vector<std::pair<Op, int>> ops;
    auto apply_op = [&](Op op, int i) {
        auto& a = m[static_cast<std::size_t>(i)];
        auto& b = m[static_cast<std::size_t>(i + 1)];
        switch (op) {
            case Op::swap: std::swap(a, b); break;
            case Op::add_down: b ^= a; break;
            case Op::add_up: a ^= b; break;
        }
        ops.emplace_back(op, i);
    };
    auto add_row = [&](int dst, int src) {
        if (src < dst) {
            for (int k = src; k <= dst - 2; ++k) apply_op(Op::swap, k);
            apply_op(Op::add_down, dst - 1);
            for (int k = dst - 2; k >= src; --k) apply_op(Op::swap, k);
        } else {
            for (int k = src - 1; k >= dst + 1; --k) apply_op(Op::swap, k);
            apply_op(Op::add_up, dst);
            for (int k = dst + 1; k <= src - 1; ++k) apply_op(Op::swap, k);
        }
    };
    for (int col = 0; col < n; ++col) {
        const std::uint64_t bit = std::uint64_t{1} << col;
        int pivot = -1;
        for (int i = col; i < n; ++i) {
            if ((m[static_cast<std::size_t>(i)] & bit) != 0) {
                pivot = i;
                break;
            }
        }
        if (pivot < 0) throw std::domain_error("moves_to_realize: transformation is singular");
        for (int k = pivot - 1; k >= col; --k) apply_op(Op::swap, k);
        for (int r = 0; r < n; ++r) {
            if (r != col && (m[static_cast<std::size_t>(r)] & bit) != 0) add_row(r, col);
        }
    }

    std::vector<MoveRecord> moves;
    for (auto it = ops.rbegin(); it != ops.rend(); ++it) {
        const int i = it->second;
        switch (it->first) {
            case Op::swap:
                moves.push_back({ExchangeKind::standard, i});
                break;
            case Op::add_down:
                moves.push_back({ExchangeKind::upper, i});
                moves.push_back({ExchangeKind::standard, i});
                break;
            case Op::add_up:
                moves.push_back({ExchangeKind::standard, i});
                moves.push_back({ExchangeKind::upper, i});
                break;
        }
    }
    return moves;
}

}  // namespace ltqmdd
