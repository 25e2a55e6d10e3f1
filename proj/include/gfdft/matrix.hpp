// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <bit>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gf.hpp"
#include "opcount.hpp"

namespace gfdft {

/// Matrix over GF(2) with rows packed into 64-bit words.
class BinMatrix {
  public:
    BinMatrix() = default;
    BinMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), stride_((cols + 63) / 64), w_(rows * stride_, 0) {}

    static BinMatrix identity(std::size_t n) {
        BinMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            a.set(i, i, true);
        return a;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return rows_ == 0 && cols_ == 0; }

    bool get(std::size_t r, std::size_t c) const {
        return w_[r * stride_ + c / 64] >> (c % 64) & 1u;
    }

    void set(std::size_t r, std::size_t c, bool v) {
        std::uint64_t& word = w_[r * stride_ + c / 64];
        std::uint64_t mask = std::uint64_t(1) << (c % 64);
        if (v)
            word |= mask;
        else
            word &= ~mask;
    }

    const std::uint64_t* row_ptr(std::size_t r) const { return w_.data() + r * stride_; }
    std::uint64_t* row_ptr(std::size_t r) { return w_.data() + r * stride_; }
    std::size_t stride() const { return stride_; }

    void xor_row_from(std::size_t dst, const BinMatrix& src, std::size_t src_row) {
        const std::uint64_t* s = src.row_ptr(src_row);
        std::uint64_t* d = row_ptr(dst);
        for (std::size_t k = 0; k < stride_; ++k)
            d[k] ^= s[k];
    }

    std::size_t row_ones(std::size_t r) const {
        std::size_t c = 0;
        const std::uint64_t* p = row_ptr(r);
        for (std::size_t k = 0; k < stride_; ++k)
            c += static_cast<std::size_t>(std::popcount(p[k]));
        return c;
    }

    std::size_t ones() const {
        std::size_t c = 0;
        for (std::size_t r = 0; r < rows_; ++r)
            c += row_ones(r);
        return c;
    }

    /// Sum over nonzero rows of (ones - 1): the cost of computing a*x
    /// column by column with no sharing.
    std::size_t naive_add_count() const {
        std::size_t c = 0;
        for (std::size_t r = 0; r < rows_; ++r) {
            std::size_t k = row_ones(r);
            if (k > 1)
                c += k - 1;
        }
        return c;
    }

    BinMatrix mul(const BinMatrix& other) const {
        if (cols_ != other.rows_)
            throw DimensionMismatch("bin matrix product " + dims() + " * " + other.dims());
        BinMatrix out(rows_, other.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c))
                    out.xor_row_from(r, other, c);
        return out;
    }

    BinMatrix transpose() const {
        BinMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c))
                    out.set(c, r, true);
        return out;
    }

    /// Gauss-Jordan inverse over GF(2).
    BinMatrix invert() const {
        if (rows_ != cols_)
            throw DimensionMismatch("inverse of non-square matrix " + dims());
        BinMatrix a = *this;
        BinMatrix inv = identity(rows_);
        for (std::size_t col = 0; col < cols_; ++col) {
            std::size_t pivot = rows_;
            for (std::size_t r = col; r < rows_; ++r)
                if (a.get(r, col)) {
                    pivot = r;
                    break;
                }
            if (pivot == rows_)
                throw SingularMatrix("matrix is singular over GF(2)");
            if (pivot != col) {
                a.swap_rows(pivot, col);
                inv.swap_rows(pivot, col);
            }
            for (std::size_t r = 0; r < rows_; ++r)
                if (r != col && a.get(r, col)) {
                    a.xor_row_from(r, a, col);
                    inv.xor_row_from(r, inv, col);
                }
        }
        return inv;
    }

    std::size_t rank() const {
        BinMatrix a = *this;
        std::size_t rk = 0;
        for (std::size_t col = 0; col < cols_ && rk < rows_; ++col) {
            std::size_t pivot = rows_;
            for (std::size_t r = rk; r < rows_; ++r)
                if (a.get(r, col)) {
                    pivot = r;
                    break;
                }
            if (pivot == rows_)
                continue;
            a.swap_rows(pivot, rk);
            for (std::size_t r = 0; r < rows_; ++r)
                if (r != rk && a.get(r, col))
                    a.xor_row_from(r, a, col);
            ++rk;
        }
        return rk;
    }

    static BinMatrix block_diag(const std::vector<BinMatrix>& blocks) {
        std::size_t r = 0, c = 0;
        for (const auto& b : blocks) {
            r += b.rows();
            c += b.cols();
        }
        BinMatrix out(r, c);
        std::size_t ro = 0, co = 0;
        for (const auto& b : blocks) {
            for (std::size_t i = 0; i < b.rows(); ++i)
                for (std::size_t j = 0; j < b.cols(); ++j)
                    if (b.get(i, j))
                        out.set(ro + i, co + j, true);
            ro += b.rows();
            co += b.cols();
        }
        return out;
    }

    /// y = a * x over GF(2^m) (entries act as 0/1 coefficients).  Every
    /// scheduled XOR of two generic values is one counted addition.
    FieldVector apply(const FieldVector& x, OpCounter* counter = nullptr,
                      AddStage stage = AddStage::field) const {
        if (x.size() != cols_)
            throw LengthMismatch("matrix has " + std::to_string(cols_) + " columns, vector has " +
                                 std::to_string(x.size()));
        FieldVector y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::uint32_t acc = 0;
            bool first = true;
            const std::uint64_t* p = row_ptr(r);
            for (std::size_t k = 0; k < stride_; ++k) {
                std::uint64_t word = p[k];
                while (word) {
                    std::size_t c = k * 64 + static_cast<std::size_t>(std::countr_zero(word));
                    word &= word - 1;
                    acc ^= x[c].bits;
                    if (!first && counter)
                        counter->count_add_site(stage);
                    first = false;
                }
            }
            y[r] = {acc};
        }
        return y;
    }

    std::vector<std::string> to_bit_strings() const {
        std::vector<std::string> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::string s(cols_, '0');
            for (std::size_t c = 0; c < cols_; ++c)
                if (get(r, c))
                    s[c] = '1';
            out[r] = std::move(s);
        }
        return out;
    }

    static BinMatrix from_bit_strings(const std::vector<std::string>& rows) {
        std::size_t cols = rows.empty() ? 0 : rows[0].size();
        BinMatrix out(rows.size(), cols);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (rows[r].size() != cols)
                throw ParseError("ragged bit-matrix rows");
            for (std::size_t c = 0; c < cols; ++c) {
                if (rows[r][c] != '0' && rows[r][c] != '1')
                    throw ParseError("bit-matrix rows must contain only 0/1");
                if (rows[r][c] == '1')
                    out.set(r, c, true);
            }
        }
        return out;
    }

    friend bool operator==(const BinMatrix& a, const BinMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.w_ == b.w_;
    }

  private:
    std::string dims() const { return std::to_string(rows_) + "x" + std::to_string(cols_); }

    void swap_rows(std::size_t a, std::size_t b) {
        for (std::size_t k = 0; k < stride_; ++k)
            std::swap(w_[a * stride_ + k], w_[b * stride_ + k]);
    }

    std::size_t rows_ = 0, cols_ = 0, stride_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Bijection on [0, size): output i reads input image[i].  Equivalently
/// the matrix with a single 1 per row at (i, image[i]).
class Permutation {
  public:
    Permutation() = default;

    explicit Permutation(std::vector<std::uint32_t> image) : map_(std::move(image)) {
        std::vector<bool> seen(map_.size(), false);
        for (auto v : map_) {
            if (v >= map_.size() || seen[v])
                throw Error("permutation image is not a bijection");
            seen[v] = true;
        }
    }

    static Permutation identity(std::size_t n) {
        std::vector<std::uint32_t> image(n);
        for (std::size_t i = 0; i < n; ++i)
            image[i] = static_cast<std::uint32_t>(i);
        return Permutation(std::move(image));
    }

    std::size_t size() const { return map_.size(); }
    std::uint32_t operator[](std::size_t i) const { return map_[i]; }
    const std::vector<std::uint32_t>& image() const { return map_; }

    bool is_identity() const {
        for (std::size_t i = 0; i < map_.size(); ++i)
            if (map_[i] != i)
                return false;
        return true;
    }

    template <typename T>
    std::vector<T> apply(const std::vector<T>& x) const {
        if (x.size() != map_.size())
            throw LengthMismatch("permutation size mismatch");
        std::vector<T> y(x.size());
        for (std::size_t i = 0; i < x.size(); ++i)
            y[i] = x[map_[i]];
        return y;
    }

    Permutation inverse() const {
        std::vector<std::uint32_t> inv(map_.size());
        for (std::size_t i = 0; i < map_.size(); ++i)
            inv[map_[i]] = static_cast<std::uint32_t>(i);
        return Permutation(std::move(inv));
    }

    BinMatrix as_matrix() const {
        BinMatrix a(map_.size(), map_.size());
        for (std::size_t i = 0; i < map_.size(); ++i)
            a.set(i, map_[i], true);
        return a;
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;

  private:
    std::vector<std::uint32_t> map_;
};

/// The interleave-to-grouped permutation: row i reads position 2i for
/// i < m/2 and position 2i+1-m for i >= m/2.
inline Permutation pi_permutation(int m) {
    if (m < 2 || m % 2 != 0)
        throw OddSize("pi permutation needs even size >= 2, got " + std::to_string(m));
    std::vector<std::uint32_t> image(static_cast<std::size_t>(m));
    for (int i = 0; i < m / 2; ++i)
        image[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(2 * i);
    for (int i = m / 2; i < m; ++i)
        image[static_cast<std::size_t>(i)] = static_cast<std::uint32_t>(2 * i + 1 - m);
    return Permutation(std::move(image));
}

/// Dense matrix over GF(2^m).
class FieldMatrix {
  public:
    FieldMatrix() = default;
    FieldMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), e_(rows * cols) {}

    static FieldMatrix identity(std::size_t n) {
        FieldMatrix a(n, n);
        for (std::size_t i = 0; i < n; ++i)
            a.at(i, i) = {1};
        return a;
    }

    static FieldMatrix from_bin(const BinMatrix& b) {
        FieldMatrix a(b.rows(), b.cols());
        for (std::size_t r = 0; r < b.rows(); ++r)
            for (std::size_t c = 0; c < b.cols(); ++c)
                if (b.get(r, c))
                    a.at(r, c) = {1};
        return a;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    FieldElement& at(std::size_t r, std::size_t c) { return e_[r * cols_ + c]; }
    FieldElement at(std::size_t r, std::size_t c) const { return e_[r * cols_ + c]; }

    FieldMatrix mul(const FieldCtx& ctx, const FieldMatrix& other) const {
        if (cols_ != other.rows_)
            throw DimensionMismatch("field matrix product dimension mismatch");
        FieldMatrix out(rows_, other.cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t k = 0; k < cols_; ++k) {
                FieldElement v = at(r, k);
                if (v.bits == 0)
                    continue;
                for (std::size_t c = 0; c < other.cols_; ++c)
                    out.at(r, c) = ctx.add(out.at(r, c), ctx.mul(v, other.at(k, c)));
            }
        return out;
    }

    FieldMatrix transpose() const {
        FieldMatrix out(cols_, rows_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c)
                out.at(c, r) = at(r, c);
        return out;
    }

    bool is_binary() const {
        for (auto e : e_)
            if (e.bits > 1)
                return false;
        return true;
    }

    BinMatrix to_bin() const {
        BinMatrix b(rows_, cols_);
        for (std::size_t r = 0; r < rows_; ++r)
            for (std::size_t c = 0; c < cols_; ++c) {
                FieldElement e = at(r, c);
                if (e.bits > 1)
                    throw Error("matrix entry outside GF(2)");
                if (e.bits)
                    b.set(r, c, true);
            }
        return b;
    }

    /// Dense y = a * x with convention counting: a site is one nonzero
    /// coefficient; constants outside {0,1} count as multiplications and
    /// every combining XOR counts as one field addition.
    FieldVector apply(const FieldCtx& ctx, const FieldVector& x, OpCounter* counter = nullptr) const {
        if (x.size() != cols_)
            throw LengthMismatch("matrix has " + std::to_string(cols_) + " columns, vector has " +
                                 std::to_string(x.size()));
        FieldVector y(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            FieldElement acc{};
            bool first = true;
            for (std::size_t c = 0; c < cols_; ++c) {
                FieldElement coef = at(r, c);
                if (coef.bits == 0)
                    continue;
                FieldElement term = ctx.is_one(coef) ? x[c] : ctx.mul(coef, x[c]);
                if (counter)
                    counter->count_mult_site(coef);
                if (first) {
                    acc = term;
                    first = false;
                } else {
                    acc = ctx.add(acc, term);
                    if (counter)
                        counter->count_add_site(AddStage::field);
                }
            }
            y[r] = acc;
        }
        return y;
    }

    std::vector<std::string> to_strings(const FieldCtx& ctx) const {
        std::vector<std::string> out(rows_);
        for (std::size_t r = 0; r < rows_; ++r) {
            std::string s;
            for (std::size_t c = 0; c < cols_; ++c) {
                if (c)
                    s += " ";
                s += ctx.to_string(at(r, c));
            }
            out[r] = std::move(s);
        }
        return out;
    }

    friend bool operator==(const FieldMatrix&, const FieldMatrix&) = default;

  private:
    std::size_t rows_ = 0, cols_ = 0;
    FieldVector e_;
};

} // namespace gfdft
