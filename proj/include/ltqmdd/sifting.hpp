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
#include <chrono>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "ltqmdd/exchange.hpp"
#include "ltqmdd/linear_transform.hpp"
#include "ltqmdd/package.hpp"

namespace ltqmdd {

/// Move ledgers of one level's relocation. `opt` is a prefix of `init`;
/// `best_size` is the size observed right after the last move of `opt` (or
/// the starting size when `opt` is empty).
struct SiftPhase {
    std::vector<MoveRecord> init;
    std::vector<MoveRecord> opt;
    std::size_t best_size = 0;
};

/// Trace of one level's relocation.
struct SiftState {
    int pass = 0;
    int start_position = 0;
    int final_position = 0;
    std::size_t start_size = 0;
    std::size_t final_size = 0;
    SiftPhase first;
    SiftPhase second;
};

struct SiftProgress {
    int pass = 0;
    int levels_done = 0;
    std::size_t current_size = 0;
};

struct SiftOptions {
    int max_passes = 10;
    bool record_trace = false;
    std::function<void(const SiftProgress&)> on_progress;
};

struct SiftReport {
    std::size_t initial_size = 0;
    std::size_t final_size = 0;
    int passes = 0;
    bool converged = false;
    /// Level exchange procedures executed, including trials and restores.
    std::size_t moves = 0;
    double time_ms = 0.0;
    std::string transform;
    std::vector<SiftState> trace;
};

struct SiftResult {
    Ltqmdd dd;
    SiftReport report;
};

namespace detail {

class Sifter {
  public:
    Sifter(Package& pkg, Ltqmdd dd, bool linear) : pkg_(pkg), cur_(std::move(dd)), linear_(linear) {
        tags_.resize(static_cast<std::size_t>(pkg.qubits()));
        std::iota(tags_.begin(), tags_.end(), 0);
    }

    SiftResult run(const SiftOptions& options) {
        const auto t0 = std::chrono::steady_clock::now();
        SiftReport report;
        report.initial_size = size();
        while (report.passes < options.max_passes) {
            const std::size_t before = size();
            pass(report.passes, options, report);
            ++report.passes;
            if (size() >= before) {
                report.converged = true;
                break;
            }
        }
        report.final_size = size();
        report.moves = exchanges_;
        report.transform = cur_.transform.to_string();
        report.time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        return SiftResult{cur_, std::move(report)};
    }

  private:
    std::size_t size() const { return pkg_.size(cur_.root); }
    int n() const { return pkg_.qubits(); }

    void apply(const MoveRecord& m) {
        cur_ = exchange(pkg_, cur_, m);
        std::swap(tags_[static_cast<std::size_t>(m.level)], tags_[static_cast<std::size_t>(m.level + 1)]);
        ++exchanges_;
    }

    void undo(const std::vector<MoveRecord>& moves) {
        for (auto it = moves.rbegin(); it != moves.rend(); ++it) apply({invert_kind(it->kind), it->level});
    }

    void replay(const std::vector<MoveRecord>& moves) {
        for (const auto& m : moves) apply(m);
    }

    /// One elementary move at levels (level, level + 1). In linear mode the
    /// standard and upper exchanges are both tried and the strictly smaller
    /// result wins; ties keep the standard exchange.
    std::pair<MoveRecord, std::size_t> step(int level) {
        const MoveRecord standard{ExchangeKind::standard, level};
        apply(standard);
        const std::size_t s_standard = size();
        if (!linear_) return {standard, s_standard};

        apply(standard);
        const MoveRecord upper{ExchangeKind::upper, level};
        apply(upper);
        const std::size_t s_upper = size();
        if (s_standard > s_upper) return {upper, s_upper};
        apply({ExchangeKind::lower, level});
        apply(standard);
        return {standard, s_standard};
    }

    SiftPhase move_to_end(int& position, bool downward, std::size_t start_size) {
        SiftPhase phase;
        phase.best_size = start_size;
        while (downward ? position < n() - 1 : position > 0) {
            const int level = downward ? position : position - 1;
            auto [record, s] = step(level);
            phase.init.push_back(record);
            position += downward ? 1 : -1;
            if (s < phase.best_size) {
                phase.best_size = s;
                phase.opt = phase.init;
            }
        }
        return phase;
    }

    SiftState sift_level(int start) {
        SiftState st;
        st.start_position = start;
        st.start_size = size();
        const bool down_first = 2 * start > n();

        int pos = start;
        st.first = move_to_end(pos, down_first, st.start_size);
        undo(st.first.init);

        pos = start;
        st.second = move_to_end(pos, !down_first, st.start_size);
        undo(st.second.init);

        replay(st.first.best_size < st.second.best_size ? st.first.opt : st.second.opt);
        st.final_size = size();
        return st;
    }

    void pass(int pass_index, const SiftOptions& options, SiftReport& report) {
        pkg_.caches().clear();
        const auto counts = pkg_.level_counts(cur_.root);
        std::vector<int> order(static_cast<std::size_t>(n()));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return counts[static_cast<std::size_t>(a)] > counts[static_cast<std::size_t>(b)];
        });
        std::vector<int> tag_order;
        for (int p : order) tag_order.push_back(tags_[static_cast<std::size_t>(p)]);

        int done = 0;
        for (int tag : tag_order) {
            const auto it = std::find(tags_.begin(), tags_.end(), tag);
            const int position = static_cast<int>(it - tags_.begin());
            SiftState st = sift_level(position);
            st.pass = pass_index;
            st.final_position = static_cast<int>(std::find(tags_.begin(), tags_.end(), tag) - tags_.begin());
            if (options.record_trace) report.trace.push_back(std::move(st));
            ++done;
            if (options.on_progress) options.on_progress(SiftProgress{pass_index, done, size()});
        }
    }

    Package& pkg_;
    Ltqmdd cur_;
    bool linear_;
    std::vector<int> tags_;  // tags_[position] = identity of the level there
    std::size_t exchanges_ = 0;
};

}  // namespace detail

/// Rudell-style sifting using standard exchanges only.
inline SiftResult sift(Package& pkg, const Ltqmdd& dd, const SiftOptions& options = {}) {
    return detail::Sifter(pkg, dd, false).run(options);
}

/// Linear sifting: every move trials the standard and the upper exchange,
/// searching level positions and XOR combinations together.
inline SiftResult linear_sift(Package& pkg, const Ltqmdd& dd, const SiftOptions& options = {}) {
    return detail::Sifter(pkg, dd, true).run(options);
}

}  // namespace ltqmdd
