// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <unordered_map>
#include <vector>

#include "matrix.hpp"
#include "opcount.hpp"

namespace gfdft {

/// Straight-line XOR program for y = a * x over any GF(2^m): first the
/// temporaries (each the XOR of two earlier values), then each output row
/// as the XOR of its remaining terms.  Value ids < inputs refer to x,
/// ids >= inputs refer to temporaries in creation order.
struct AdditionSchedule {
    std::size_t inputs = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> temps;
    BinMatrix rows; // outputs x (inputs + temps)
    std::size_t naive_adds = 0;

    std::size_t length() const {
        std::size_t len = temps.size();
        for (std::size_t r = 0; r < rows.rows(); ++r) {
            std::size_t k = rows.row_ones(r);
            if (k > 1)
                len += k - 1;
        }
        return len;
    }

    FieldVector replay(const FieldVector& x, OpCounter* counter = nullptr) const {
        if (x.size() != inputs)
            throw LengthMismatch("schedule expects " + std::to_string(inputs) + " inputs, got " +
                                 std::to_string(x.size()));
        FieldVector vals(x);
        vals.reserve(inputs + temps.size());
        for (auto [a, b] : temps) {
            vals.push_back({vals[a].bits ^ vals[b].bits});
            if (counter)
                counter->count_add_site(AddStage::binary);
        }
        FieldVector y(rows.rows());
        for (std::size_t r = 0; r < rows.rows(); ++r) {
            std::uint32_t acc = 0;
            bool first = true;
            for (std::size_t c = 0; c < rows.cols(); ++c) {
                if (!rows.get(r, c))
                    continue;
                acc ^= vals[c].bits;
                if (!first && counter)
                    counter->count_add_site(AddStage::binary);
                first = false;
            }
            y[r] = {acc};
        }
        return y;
    }
};

/// The do-nothing schedule: one XOR per remaining term, no sharing.
inline AdditionSchedule naive_schedule(const BinMatrix& a) {
    AdditionSchedule s;
    s.inputs = a.cols();
    s.rows = a;
    s.naive_adds = a.naive_add_count();
    return s;
}

namespace detail {

/// Pair-count bookkeeping for the greedy extraction: counts keyed by the
/// packed column pair, bucketed by count so the current best pair is the
/// smallest key in the highest nonempty bucket.
class PairCounts {
  public:
    void add(std::uint64_t key, int delta) {
        int& c = counts_[key];
        int old = c;
        c += delta;
        if (old >= 2)
            buckets_[static_cast<std::size_t>(old)].erase(key);
        if (c >= 2) {
            if (buckets_.size() <= static_cast<std::size_t>(c))
                buckets_.resize(static_cast<std::size_t>(c) + 1);
            buckets_[static_cast<std::size_t>(c)].insert(key);
            curmax_ = std::max(curmax_, c);
        }
        if (c == 0)
            counts_.erase(key);
    }

    /// Smallest pair key among those with the maximal count >= 2, or 0.
    std::uint64_t best() {
        while (curmax_ >= 2 && buckets_[static_cast<std::size_t>(curmax_)].empty())
            --curmax_;
        if (curmax_ < 2)
            return 0;
        return *buckets_[static_cast<std::size_t>(curmax_)].begin();
    }

  private:
    std::unordered_map<std::uint64_t, int> counts_;
    std::vector<std::set<std::uint64_t>> buckets_{2};
    int curmax_ = 0;
};

inline std::uint64_t pair_key(std::uint32_t i, std::uint32_t j) {
    if (i > j)
        std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | j;
}

} // namespace detail

/// Greedy two-operand common-subexpression extraction: repeatedly replace
/// the column pair shared by the most rows with a fresh temporary, ties
/// broken by the lowest (i, j) pair.  Replaying the schedule equals the
/// direct product, and its length never exceeds the naive count.  Matrices
/// larger than 64x64 get the naive schedule; at DFT sizes the binary
/// stage is better served by block algorithms, which are out of scope here.
inline AdditionSchedule greedy_cse(const BinMatrix& a) {
    if (a.rows() * a.cols() > 4096)
        return naive_schedule(a);

    std::size_t n_in = a.cols();
    std::vector<std::vector<std::uint32_t>> row_cols(a.rows());
    std::vector<std::vector<std::uint32_t>> rows_with(n_in);
    detail::PairCounts pc;

    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < a.cols(); ++c)
            if (a.get(r, c)) {
                row_cols[r].push_back(static_cast<std::uint32_t>(c));
                rows_with[c].push_back(static_cast<std::uint32_t>(r));
            }
        const auto& cs = row_cols[r];
        for (std::size_t i = 0; i < cs.size(); ++i)
            for (std::size_t j = i + 1; j < cs.size(); ++j)
                pc.add(detail::pair_key(cs[i], cs[j]), 1);
    }

    AdditionSchedule s;
    s.inputs = n_in;
    s.naive_adds = a.naive_add_count();

    auto contains = [&](std::uint32_t r, std::uint32_t c) {
        const auto& v = row_cols[r];
        return std::binary_search(v.begin(), v.end(), c);
    };
    auto erase_col = [&](std::uint32_t r, std::uint32_t c) {
        auto& v = row_cols[r];
        v.erase(std::lower_bound(v.begin(), v.end(), c));
    };

    while (std::uint64_t key = pc.best()) {
        auto ca = static_cast<std::uint32_t>(key >> 32);
        auto cb = static_cast<std::uint32_t>(key & 0xffffffffu);
        auto t = static_cast<std::uint32_t>(n_in + s.temps.size());
        s.temps.emplace_back(ca, cb);
        rows_with.emplace_back();

        std::vector<std::uint32_t> affected;
        for (std::uint32_t r : rows_with[ca])
            if (contains(r, ca) && contains(r, cb))
                affected.push_back(r);

        for (std::uint32_t r : affected) {
            for (std::uint32_t c : row_cols[r]) {
                if (c == ca || c == cb)
                    continue;
                pc.add(detail::pair_key(c, ca), -1);
                pc.add(detail::pair_key(c, cb), -1);
                pc.add(detail::pair_key(c, t), 1);
            }
            pc.add(key, -1);
            erase_col(r, ca);
            erase_col(r, cb);
            row_cols[r].push_back(t); // t exceeds every existing id
            rows_with[t].push_back(r);
        }
    }

    s.rows = BinMatrix(a.rows(), n_in + s.temps.size());
    for (std::size_t r = 0; r < a.rows(); ++r)
        for (std::uint32_t c : row_cols[r])
            s.rows.set(r, c, true);
    return s;
}

} // namespace gfdft
