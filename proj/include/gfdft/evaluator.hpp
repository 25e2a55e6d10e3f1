// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "conjugacy.hpp"
#include "gf.hpp"
#include "matrix.hpp"
#include "opcount.hpp"

namespace gfdft {

/// Remainder matrix of division by x^2 + x + epsilon: the 2 x m map from
/// the coefficients of a degree-(m-1) polynomial to the remainder pair
/// (r_0, r_1).  Columns follow the recursion
/// r_{j,i} = r_{j,i-1} + epsilon * r_{j,i-2} from the initial columns
/// [1,0] and [0,1].
struct RemainderMatrix {
    FieldMatrix u; // 2 x m
    FieldElement epsilon;
};

inline RemainderMatrix remainder_matrix(const FieldCtx& ctx, FieldElement epsilon, int m) {
    if (m <= 2)
        throw DegreeTooSmall("remainder matrix needs m > 2, got " + std::to_string(m));
    RemainderMatrix rm;
    rm.epsilon = epsilon;
    rm.u = FieldMatrix(2, static_cast<std::size_t>(m));
    rm.u.at(0, 0) = ctx.one();
    rm.u.at(1, 1) = ctx.one();
    for (int i = 2; i < m; ++i)
        for (int j = 0; j < 2; ++j)
            rm.u.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)) =
                ctx.add(rm.u.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i - 1)),
                        ctx.mul(epsilon, rm.u.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i - 2))));
    return rm;
}

/// The binary change of basis that turns the remainder matrix built with
/// epsilon = delta into the interleaved delta-power target
///   row 0: delta^0  0  delta^1  0  ...  delta^{m/2-1}  0
///   row 1: 0  delta^0  0  delta^1  ...  0  delta^{m/2-1}.
/// Solved column by column in delta-power coordinates; nonsingular by
/// construction when the inputs come from a special class.
inline BinMatrix build_b_matrix(const FieldCtx& ctx, const RemainderMatrix& rm, FieldElement delta) {
    auto m = static_cast<int>(rm.u.cols());
    int half = m / 2;
    FieldVector delta_powers;
    for (int j = 0; j < half; ++j)
        delta_powers.push_back(ctx.pow(delta, static_cast<unsigned long long>(j)));
    std::optional<BasisSolver> solver;
    try {
        solver.emplace(ctx, delta_powers);
    } catch (const SingularBasis&) {
        throw SingularSystem("delta powers are dependent; epsilon is not a special-class delta");
    }

    // the GF(2)-linear system: column i of U, written as the stacked
    // delta-coordinates of its two entries
    BinMatrix sys(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (int i = 0; i < m; ++i) {
        std::uint32_t top, bot;
        try {
            top = solver->solve(rm.u.at(0, static_cast<std::size_t>(i)));
            bot = solver->solve(rm.u.at(1, static_cast<std::size_t>(i)));
        } catch (const SingularSystem&) {
            throw SingularSystem("remainder entries escape the subfield; epsilon is not a special-class delta");
        }
        for (int j = 0; j < half; ++j) {
            if (top >> j & 1u)
                sys.set(static_cast<std::size_t>(j), static_cast<std::size_t>(i), true);
            if (bot >> j & 1u)
                sys.set(static_cast<std::size_t>(half + j), static_cast<std::size_t>(i), true);
        }
    }
    BinMatrix sys_inv;
    try {
        sys_inv = sys.invert();
    } catch (const SingularMatrix&) {
        throw SingularSystem("remainder columns do not span the target; special-class premise violated");
    }
    // target column 2j is delta^j in the top block, column 2j+1 the same
    // in the bottom block, so B = sys^{-1} * target picks those columns
    BinMatrix b(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
    for (int j = 0; j < half; ++j)
        for (int r = 0; r < m; ++r) {
            if (sys_inv.get(static_cast<std::size_t>(r), static_cast<std::size_t>(j)))
                b.set(static_cast<std::size_t>(r), static_cast<std::size_t>(2 * j), true);
            if (sys_inv.get(static_cast<std::size_t>(r), static_cast<std::size_t>(half + j)))
                b.set(static_cast<std::size_t>(r), static_cast<std::size_t>(2 * j + 1), true);
        }
    return b;
}

/// Recursive factorization of the Moore-Vandermonde multipoint evaluation
/// for one conjugacy class.  The composed factors reproduce V_k exactly;
/// the multiplicative cost is fixed at build time and independent of the
/// input.
///
/// Layout: apply() = head(tail * t), where the tail collects every binary
/// factor (the permutation, B^{-1}, subfield basis bridges) and the head
/// carries all counted multiplications.
class FactoredEvaluator {
  public:
    enum class Kind { trivial, base2, base3, even };

    static std::shared_ptr<const FactoredEvaluator> build(const FieldCtx& ctx,
                                                          const ConjugacyClass& cls) {
        auto ev = std::make_shared<FactoredEvaluator>();
        ev->build_impl(ctx, cls);
        return ev;
    }

    Kind kind() const { return kind_; }
    int degree() const { return degree_; }
    std::uint32_t class_rep() const { return class_rep_; }
    const BinMatrix& tail() const { return tail_; }
    long long static_mults() const { return static_mults_; }
    long long static_adds() const { return static_adds_; }

    const FieldVector& diag() const { return diag_; }
    const Permutation& pi() const { return pi_; }
    const BinMatrix& b_inv() const { return b_inv_; }
    const BinMatrix& delta_pre() const { return delta_pre_; }
    const FactoredEvaluator* sub() const { return sub_.get(); }
    FieldElement base2_constant() const { return beta_; }
    const std::array<FieldElement, 3>& base3_constants() const { return conv_; }
    /// Nonempty when this class was reached from the special class of its
    /// cardinality; the binary factor appended to the tail.
    const BinMatrix& bridge() const { return bridge_; }

    /// Full evaluation T_i = t(alpha^{c 2^i}): binary tail, then the
    /// multiplicative head.  Exactly static_mults() multiplication sites
    /// are counted on every call.
    FieldVector apply(const FieldCtx& ctx, const FieldVector& t, OpCounter& counter) const {
        if (t.size() != static_cast<std::size_t>(degree_))
            throw LengthMismatch("evaluator degree " + std::to_string(degree_) + ", input length " +
                                 std::to_string(t.size()));
        FieldVector w = tail_.apply(t, &counter, AddStage::field);
        return apply_head(ctx, w, &counter);
    }

    /// The head alone, for callers that have already folded the tail into
    /// their own binary stage.
    FieldVector apply_head(const FieldCtx& ctx, const FieldVector& w, OpCounter* counter) const {
        switch (kind_) {
        case Kind::trivial:
            return w;
        case Kind::base2: {
            FieldVector y(2);
            if (counter)
                counter->count_mult_site(beta_);
            y[0] = ctx.add(w[0], ctx.mul(beta_, w[1]));
            y[1] = ctx.add(y[0], w[1]);
            if (counter) {
                counter->count_add_site(AddStage::field);
                counter->count_add_site(AddStage::field);
            }
            return y;
        }
        case Kind::base3:
            return apply_base3(ctx, w, counter);
        case Kind::even: {
            int half = degree_ / 2;
            FieldVector top(w.begin(), w.begin() + half);
            FieldVector bot(w.begin() + half, w.end());
            FieldVector a = sub_->apply_head(ctx, top, counter);
            FieldVector b = sub_->apply_head(ctx, bot, counter);
            FieldVector y(static_cast<std::size_t>(degree_));
            for (int i = 0; i < half; ++i) {
                if (counter)
                    counter->count_mult_site(diag_[static_cast<std::size_t>(i)]);
                y[static_cast<std::size_t>(i)] =
                    ctx.add(a[static_cast<std::size_t>(i)],
                            ctx.mul(diag_[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]));
                y[static_cast<std::size_t>(half + i)] =
                    ctx.add(y[static_cast<std::size_t>(i)], b[static_cast<std::size_t>(i)]);
                if (counter) {
                    counter->count_add_site(AddStage::field);
                    counter->count_add_site(AddStage::field);
                }
            }
            return y;
        }
        }
        throw Error("unreachable");
    }

    /// The multiplicative part as a dense matrix (head only).
    FieldMatrix head_matrix(const FieldCtx& ctx) const {
        switch (kind_) {
        case Kind::trivial:
            return FieldMatrix::identity(1);
        case Kind::base2: {
            FieldMatrix lower(2, 2), upper(2, 2);
            lower.at(0, 0) = lower.at(1, 0) = lower.at(1, 1) = ctx.one();
            upper.at(0, 0) = upper.at(1, 1) = ctx.one();
            upper.at(0, 1) = beta_;
            return lower.mul(ctx, upper);
        }
        case Kind::base3: {
            // bilinear kernel probed on unit vectors
            FieldMatrix h(3, 3);
            for (std::size_t j = 0; j < 3; ++j) {
                FieldVector e(3);
                e[j] = ctx.one();
                FieldVector col = apply_base3(ctx, e, nullptr);
                for (std::size_t i = 0; i < 3; ++i)
                    h.at(i, j) = col[i];
            }
            return h;
        }
        case Kind::even: {
            int half = degree_ / 2;
            auto n = static_cast<std::size_t>(degree_);
            FieldMatrix lower_unit(n, n), diag_step(n, n);
            for (std::size_t i = 0; i < n; ++i) {
                lower_unit.at(i, i) = ctx.one();
                diag_step.at(i, i) = ctx.one();
            }
            for (int i = 0; i < half; ++i) {
                lower_unit.at(static_cast<std::size_t>(half + i), static_cast<std::size_t>(i)) = ctx.one();
                diag_step.at(static_cast<std::size_t>(i), static_cast<std::size_t>(half + i)) =
                    diag_[static_cast<std::size_t>(i)];
            }
            FieldMatrix sub_head = sub_->head_matrix(ctx);
            FieldMatrix blocks(n, n);
            for (int i = 0; i < half; ++i)
                for (int j = 0; j < half; ++j) {
                    blocks.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                        sub_head.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                    blocks.at(static_cast<std::size_t>(half + i), static_cast<std::size_t>(half + j)) =
                        sub_head.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                }
            return lower_unit.mul(ctx, diag_step).mul(ctx, blocks);
        }
        }
        throw Error("unreachable");
    }

    /// head * tail: the full matrix this evaluator realizes; equals the
    /// Moore-Vandermonde matrix of its class.
    FieldMatrix compose(const FieldCtx& ctx) const {
        return head_matrix(ctx).mul(ctx, FieldMatrix::from_bin(tail_));
    }

  private:
    void build_impl(const FieldCtx& ctx, const ConjugacyClass& cls) {
        degree_ = cls.cardinality;
        class_rep_ = cls.c;
        int d = cls.cardinality;
        if (d == 1) {
            kind_ = Kind::trivial;
            tail_ = BinMatrix::identity(1);
            static_mults_ = 0;
            static_adds_ = 0;
            return;
        }
        if (d == 2) {
            kind_ = Kind::base2;
            beta_ = ctx.from_exp(cls.c);
            tail_ = BinMatrix::identity(2);
            static_mults_ = 1;
            static_adds_ = 2;
            return;
        }
        if (d == 3) {
            build_base3(ctx, cls);
            return;
        }
        if (d % 2 != 0)
            throw UnsupportedDegree("no degree-" + std::to_string(d) +
                                    " base kernel; cardinalities 1, 2, 3 and even are supported");

        ConjugacyClass special = find_special_class(ctx, d);
        if (special.c != cls.c) {
            // shift onto the special class: V_cls = V_special * bridge
            build_impl(ctx, special);
            BasisSpec basis = find_normal_basis(ctx, d);
            BinMatrix m_sp = basis_transform_matrix(ctx, special, basis);
            BinMatrix m_cls = basis_transform_matrix(ctx, cls, basis);
            bridge_ = m_sp.transpose().invert().mul(m_cls.transpose());
            tail_ = tail_.mul(bridge_);
            class_rep_ = cls.c;
            return;
        }

        kind_ = Kind::even;
        int half = d / 2;
        std::uint64_t n = ctx.n();
        auto delta_exp = static_cast<std::uint32_t>(
            (static_cast<std::uint64_t>(cls.c) * (((std::uint64_t(1) << half) + 1) % n)) % n);
        FieldElement delta = ctx.from_exp(delta_exp);

        for (int i = 0; i < half; ++i)
            diag_.push_back(ctx.from_exp(static_cast<long long>(cls.members[static_cast<std::size_t>(i)])));
        pi_ = pi_permutation(d);
        RemainderMatrix u = remainder_matrix(ctx, delta, d);
        BinMatrix b = build_b_matrix(ctx, u, delta);
        b_inv_ = b.invert();

        // the Delta block is rooted at delta itself: row i evaluates at
        // delta^{2^i}, so the orbit must start at delta, not at its class
        // representative
        ConjugacyClass delta_rooted = class_rooted_at(ctx, delta_exp);
        if (delta_rooted.cardinality != half)
            throw WrongCardinality("delta class has cardinality " +
                                   std::to_string(delta_rooted.cardinality) + ", expected " +
                                   std::to_string(half));
        if (half % 2 == 0 && half > 2) {
            ConjugacyClass sub_special = find_special_class(ctx, half);
            sub_ = build(ctx, sub_special);
            if (sub_special.c == delta_exp) {
                delta_pre_ = BinMatrix::identity(static_cast<std::size_t>(half));
            } else {
                BasisSpec basis = find_normal_basis(ctx, half);
                BinMatrix m_sp = basis_transform_matrix(ctx, sub_special, basis);
                BinMatrix m_delta = basis_transform_matrix(ctx, delta_rooted, basis);
                delta_pre_ = m_sp.transpose().invert().mul(m_delta.transpose());
            }
        } else {
            // cardinality 2 and 3 kernels take any root directly
            sub_ = build(ctx, delta_rooted);
            delta_pre_ = BinMatrix::identity(static_cast<std::size_t>(half));
        }

        BinMatrix half_tail = sub_->tail().mul(delta_pre_);
        tail_ = BinMatrix::block_diag({half_tail, half_tail}).mul(pi_.as_matrix()).mul(b_inv_);
        static_mults_ = 2 * sub_->static_mults_ + half;
        static_adds_ = 2 * sub_->static_adds_ + d;
    }

    void build_base3(const FieldCtx& ctx, const ConjugacyClass& cls) {
        kind_ = Kind::base3;
        BasisSpec basis = find_normal_basis(ctx, 3);
        FieldElement g0 = basis.vectors[0];
        FieldElement g1 = basis.vectors[1];
        FieldElement g2 = basis.vectors[2];
        // trace of a normal-basis generator is 1, so the circulant row is
        // a normalized convolution operand and the x-1 residue is free
        if (!(ctx.add(ctx.add(g0, g1), g2) == ctx.one()))
            throw Error("normal basis trace is not 1");
        conv_ = {ctx.add(g0, g2), ctx.add(g1, g2), ctx.add(g0, g1)};
        for (auto k : conv_)
            if (k.bits <= 1)
                throw Error("degenerate convolution constant");

        BinMatrix mk = basis_transform_matrix(ctx, cls, basis);
        Permutation rev(std::vector<std::uint32_t>{0, 2, 1});
        tail_ = rev.as_matrix().mul(mk.transpose());
        static_mults_ = 3;
        static_adds_ = 10;
    }

    /// Length-3 normalized cyclic convolution with the fixed operand
    /// (g, g^2, g^4), split by x^3 - 1 = (x - 1)(x^2 + x + 1); the linear
    /// residue is free, the quadratic one takes three products.
    FieldVector apply_base3(const FieldCtx& ctx, const FieldVector& s, OpCounter* counter) const {
        auto add = [&](FieldElement x, FieldElement y) {
            if (counter)
                counter->count_add_site(AddStage::field);
            return ctx.add(x, y);
        };
        FieldElement phi = add(add(s[0], s[1]), s[2]);
        FieldElement in0 = add(s[0], s[2]);
        FieldElement in1 = add(s[1], s[2]);
        FieldElement in2 = add(s[0], s[1]);
        if (counter) {
            counter->count_mult_site(conv_[0]);
            counter->count_mult_site(conv_[1]);
            counter->count_mult_site(conv_[2]);
        }
        FieldElement p0 = ctx.mul(conv_[0], in0);
        FieldElement p1 = ctx.mul(conv_[1], in1);
        FieldElement p2 = ctx.mul(conv_[2], in2);
        FieldElement u0 = add(p0, p1);
        FieldElement u1 = add(p0, p2);
        FieldVector y(3);
        y[0] = add(phi, u1);
        y[1] = add(phi, u0);
        y[2] = add(y[1], u1);
        return y;
    }

    Kind kind_ = Kind::trivial;
    int degree_ = 0;
    std::uint32_t class_rep_ = 0;
    FieldElement beta_;
    std::array<FieldElement, 3> conv_{};
    FieldVector diag_;
    Permutation pi_;
    BinMatrix b_inv_;
    BinMatrix delta_pre_;
    std::shared_ptr<const FactoredEvaluator> sub_;
    BinMatrix tail_;
    BinMatrix bridge_;
    long long static_mults_ = 0;
    long long static_adds_ = 0;
};

/// Multiplication count of the factored evaluation: 0, 1, 3 for degrees
/// 1, 2, 3 and 2*Mult(m/2) + m/2 for even m.
inline long long mult_count(int m) {
    if (m == 1)
        return 0;
    if (m == 2)
        return 1;
    if (m == 3)
        return 3;
    if (m >= 4 && m % 2 == 0)
        return 2 * mult_count(m / 2) + m / 2;
    throw UnsupportedDegree("no degree-" + std::to_string(m) + " base kernel");
}

} // namespace gfdft
