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

#include <cmath>
#include <complex>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace ltqmdd {

using Complex = std::complex<double>;

inline constexpr double kDefaultTolerance = 1e-10;

/// Handle into a ComplexTable. Two handles from the same table are equal iff
/// the interned values were within tolerance of each other.
struct ComplexRef {
    std::uint32_t id = 0;

    friend constexpr bool operator==(ComplexRef, ComplexRef) = default;
    friend constexpr auto operator<=>(ComplexRef, ComplexRef) = default;
};

/// Append-only table of complex values with tolerance-based uniqueness.
///
/// Each component is bucketed by round(x / tolerance); a lookup probes the
/// 3x3 neighbourhood of buckets, so any stored value within tolerance in both
/// components is found. Handle 0 is exactly zero and handle 1 is exactly one.
class ComplexTable {
  public:
    static constexpr ComplexRef zero() { return ComplexRef{0}; }
    static constexpr ComplexRef one() { return ComplexRef{1}; }

    explicit ComplexTable(double tolerance = kDefaultTolerance) : tolerance_(tolerance) {
        if (!(tolerance > 0.0) || !std::isfinite(tolerance)) {
            throw std::invalid_argument("ComplexTable: tolerance must be positive and finite");
        }
        insert(Complex{0.0, 0.0});
        insert(Complex{1.0, 0.0});
    }

    double tolerance() const { return tolerance_; }
    std::size_t size() const { return values_.size(); }

    ComplexRef intern(double re, double im) {
        if (!std::isfinite(re) || !std::isfinite(im)) {
            throw std::domain_error("ComplexTable::intern: non-finite value");
        }
        const auto kr = bucket(re);
        const auto ki = bucket(im);
        for (std::int64_t dr = -1; dr <= 1; ++dr) {
            for (std::int64_t di = -1; di <= 1; ++di) {
                auto it = buckets_.find(BucketKey{kr + dr, ki + di});
                if (it == buckets_.end()) {
                    continue;
                }
                for (std::uint32_t id : it->second) {
                    const Complex& v = values_[id];
                    if (std::abs(v.real() - re) < tolerance_ && std::abs(v.imag() - im) < tolerance_) {
                        return ComplexRef{id};
                    }
                }
            }
        }
        return insert(Complex{re, im});
    }

    ComplexRef intern(Complex c) { return intern(c.real(), c.imag()); }

    const Complex& value(ComplexRef c) const { return values_.at(c.id); }

    ComplexRef add(ComplexRef a, ComplexRef b) {
        if (a == zero()) return b;
        if (b == zero()) return a;
        return intern(value(a) + value(b));
    }

    ComplexRef sub(ComplexRef a, ComplexRef b) { return add(a, neg(b)); }

    ComplexRef mul(ComplexRef a, ComplexRef b) {
        if (a == zero() || b == zero()) return zero();
        if (a == one()) return b;
        if (b == one()) return a;
        return intern(value(a) * value(b));
    }

    ComplexRef div(ComplexRef a, ComplexRef b) {
        if (b == zero()) {
            throw std::domain_error("ComplexTable::div: division by zero");
        }
        if (a == zero()) return zero();
        if (b == one()) return a;
        if (a == b) return one();
        return intern(value(a) / value(b));
    }

    ComplexRef neg(ComplexRef a) {
        if (a == zero()) return zero();
        return intern(-value(a));
    }

    ComplexRef conj(ComplexRef a) { return intern(std::conj(value(a))); }

    double magnitude(ComplexRef c) const { return std::abs(value(c)); }

  private:
    struct BucketKey {
        std::int64_t re;
        std::int64_t im;
        bool operator==(const BucketKey&) const = default;
    };
    struct BucketHash {
        std::size_t operator()(const BucketKey& k) const noexcept {
            const auto h1 = std::hash<std::int64_t>{}(k.re);
            const auto h2 = std::hash<std::int64_t>{}(k.im);
            return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
        }
    };

    std::int64_t bucket(double x) const {
        const double scaled = std::round(x / tolerance_);
        // Saturate: values this large never sit within tolerance of a
        // neighbour in a different clamped bucket in practice.
        constexpr double kLimit = 4.0e18;
        if (scaled > kLimit) return static_cast<std::int64_t>(kLimit);
        if (scaled < -kLimit) return -static_cast<std::int64_t>(kLimit);
        return static_cast<std::int64_t>(scaled);
    }

    ComplexRef insert(Complex c) {
        const auto id = static_cast<std::uint32_t>(values_.size());
        values_.push_back(c);
        buckets_[BucketKey{bucket(c.real()), bucket(c.imag())}].push_back(id);
        return ComplexRef{id};
    }

    double tolerance_;
    std::vector<Complex> values_;
    std::unordered_map<BucketKey, std::vector<std::uint32_t>, BucketHash> buckets_;
};

}  // namespace ltqmdd
