// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "conjugacy.hpp"
#include "cse.hpp"
#include "evaluator.hpp"
#include "gf.hpp"
#include "matrix.hpp"
#include "opcount.hpp"
#include "poly.hpp"

namespace gfdft {

/// F_j = sum_i f_i alpha^{ij}, the definition.  Serves as the oracle for
/// every compiled plan.
inline FieldVector naive_dft(const FieldCtx& ctx, const FieldVector& f, OpCounter* counter = nullptr) {
    if (f.size() != ctx.n())
        throw LengthMismatch("expected length " + std::to_string(ctx.n()) + ", got " +
                             std::to_string(f.size()));
    std::uint32_t n = ctx.n();
    FieldVector F(n);
    for (std::uint32_t j = 0; j < n; ++j) {
        FieldElement acc{};
        std::uint32_t e = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            FieldElement coef = ctx.from_exp(e);
            if (counter) {
                counter->count_mult_site(coef);
                if (i > 0)
                    counter->count_add_site(AddStage::field);
            }
            acc = ctx.add(acc, ctx.mul(coef, f[i]));
            e += j;
            if (e >= n)
                e -= n;
        }
        F[j] = acc;
    }
    return F;
}

/// Definitional inverse with kernel alpha^{-1}; n = 2^m - 1 is odd, so no
/// scaling is needed in characteristic two.
inline FieldVector naive_idft(const FieldCtx& ctx, const FieldVector& F, OpCounter* counter = nullptr) {
    if (F.size() != ctx.n())
        throw LengthMismatch("expected length " + std::to_string(ctx.n()) + ", got " +
                             std::to_string(F.size()));
    std::uint32_t n = ctx.n();
    FieldVector f(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        FieldElement acc{};
        std::uint32_t e = 0;
        std::uint32_t step = (n - i % n) % n;
        for (std::uint32_t j = 0; j < n; ++j) {
            FieldElement coef = ctx.from_exp(e);
            if (counter) {
                counter->count_mult_site(coef);
                if (j > 0)
                    counter->count_add_site(AddStage::field);
            }
            acc = ctx.add(acc, ctx.mul(coef, F[j]));
            e += step;
            if (e >= n)
                e -= n;
        }
        f[i] = acc;
    }
    return f;
}

/// Compiled DFT algorithm: an optional binary pre-stage, a block
/// field stage (one block per conjugacy class), an optional binary
/// post-stage, and the output permutation back to natural order.
/// Immutable and shareable once built.
struct DftPlan {
    enum class Algo { naive, goertzel_blahut, cyclotomic, novel };

    struct Stage {
        std::size_t class_index = 0;
        std::size_t offset = 0;
        int size = 0;
        FieldMatrix dense; // used when eval is null
        std::shared_ptr<const FactoredEvaluator> eval;
    };

    Algo variant = Algo::naive;
    const FieldCtx* field = nullptr;
    std::vector<ConjugacyClass> classes;
    Permutation output_perm;
    BinMatrix pre_matrix;
    AdditionSchedule pre_schedule;
    std::optional<BinMatrix> post_matrix;
    AdditionSchedule post_schedule;
    std::vector<Stage> stages;

    long long static_mults = 0;
    long long static_field_adds = 0;
    long long static_binary_adds_naive = 0;
    long long static_binary_adds_cse = 0;

    long long static_adds_naive() const { return static_field_adds + static_binary_adds_naive; }
    long long static_adds_cse() const { return static_field_adds + static_binary_adds_cse; }

    static const char* algo_name(Algo a) {
        switch (a) {
        case Algo::naive:
            return "naive";
        case Algo::goertzel_blahut:
            return "gb";
        case Algo::cyclotomic:
            return "cyclotomic";
        case Algo::novel:
            return "novel";
        }
        return "?";
    }
};

namespace detail {

inline std::pair<long long, long long> dense_site_counts(const FieldMatrix& a) {
    long long mults = 0, adds = 0;
    for (std::size_t r = 0; r < a.rows(); ++r) {
        long long terms = 0;
        for (std::size_t c = 0; c < a.cols(); ++c) {
            FieldElement e = a.at(r, c);
            if (e.bits == 0)
                continue;
            ++terms;
            if (e.bits > 1)
                ++mults;
        }
        if (terms > 1)
            adds += terms - 1;
    }
    return {mults, adds};
}

/// The division matrix R: block k extracts the coefficients of
/// f(x) mod M_k(x).  Row order follows the class list, coefficient
/// index ascending within a block.
inline BinMatrix division_matrix(const FieldCtx& ctx, const std::vector<ConjugacyClass>& classes,
                                 std::vector<std::size_t>& offsets) {
    std::uint32_t n = ctx.n();
    BinMatrix r(n, n);
    offsets.clear();
    std::size_t base = 0;
    for (const auto& cls : classes) {
        offsets.push_back(base);
        BinPoly mk = minimal_poly_gf2(ctx, ctx.from_exp(cls.c));
        int deg = mk.degree();
        std::uint64_t cur = 1; // x^i mod M_k, updated incrementally
        for (std::uint32_t i = 0; i < n; ++i) {
            for (int j = 0; j < deg; ++j)
                if (cur >> j & 1u)
                    r.set(base + static_cast<std::size_t>(j), i, true);
            cur <<= 1;
            if (cur >> deg & 1u)
                cur ^= mk.bits;
        }
        base += static_cast<std::size_t>(deg);
    }
    return r;
}

inline Permutation class_order_permutation(const FieldCtx& ctx,
                                           const std::vector<ConjugacyClass>& classes) {
    std::vector<std::uint32_t> image;
    image.reserve(ctx.n());
    for (const auto& cls : classes)
        for (auto mem : cls.members)
            image.push_back(mem);
    return Permutation(std::move(image));
}

} // namespace detail

/// Division by each minimal polynomial, then one dense Moore-Vandermonde
/// evaluation per class.
inline DftPlan gb_plan(const FieldCtx& ctx) {
    DftPlan plan;
    plan.variant = DftPlan::Algo::goertzel_blahut;
    plan.field = &ctx;
    plan.classes = enumerate_classes(ctx);
    std::vector<std::size_t> offsets;
    plan.pre_matrix = detail::division_matrix(ctx, plan.classes, offsets);
    plan.output_perm = detail::class_order_permutation(ctx, plan.classes);
    for (std::size_t k = 0; k < plan.classes.size(); ++k) {
        DftPlan::Stage st;
        st.class_index = k;
        st.offset = offsets[k];
        st.size = plan.classes[k].cardinality;
        st.dense = moore_vandermonde(ctx, plan.classes[k]);
        auto [mu, ad] = detail::dense_site_counts(st.dense);
        plan.static_mults += mu;
        plan.static_field_adds += ad;
        plan.stages.push_back(std::move(st));
    }
    plan.pre_schedule = greedy_cse(plan.pre_matrix);
    plan.static_binary_adds_naive = static_cast<long long>(plan.pre_schedule.naive_adds);
    plan.static_binary_adds_cse = static_cast<long long>(plan.pre_schedule.length());
    return plan;
}

/// Orbit gather, one basis-circulant convolution per class, then the
/// binary recombination matrix.
inline DftPlan cyclotomic_plan(const FieldCtx& ctx) {
    DftPlan plan;
    plan.variant = DftPlan::Algo::cyclotomic;
    plan.field = &ctx;
    plan.classes = enumerate_classes(ctx);
    std::uint32_t n = ctx.n();

    std::map<int, BasisSpec> bases;
    std::map<int, std::shared_ptr<BasisSolver>> solvers;
    for (const auto& cls : plan.classes)
        if (!bases.count(cls.cardinality)) {
            bases.emplace(cls.cardinality, find_normal_basis(ctx, cls.cardinality));
            solvers.emplace(cls.cardinality,
                            std::make_shared<BasisSolver>(ctx, bases.at(cls.cardinality).vectors));
        }

    // input gather: block k reads f at the class member exponents
    plan.pre_matrix = BinMatrix(n, n);
    std::size_t base = 0;
    for (std::size_t k = 0; k < plan.classes.size(); ++k) {
        const auto& cls = plan.classes[k];
        DftPlan::Stage st;
        st.class_index = k;
        st.offset = base;
        st.size = cls.cardinality;
        st.dense = basis_circulant(bases.at(cls.cardinality));
        auto [mu, ad] = detail::dense_site_counts(st.dense);
        plan.static_mults += mu;
        plan.static_field_adds += ad;
        plan.stages.push_back(std::move(st));
        for (std::size_t p = 0; p < cls.members.size(); ++p)
            plan.pre_matrix.set(base + p, cls.members[p], true);
        base += static_cast<std::size_t>(cls.cardinality);
    }

    // recombination: F_j = sum over classes of the binary coordinates of
    // alpha^{j c_k} in the class family's normal basis
    BinMatrix a(n, n);
    for (std::uint32_t j = 0; j < n; ++j) {
        std::size_t off = 0;
        for (const auto& cls : plan.classes) {
            std::uint64_t e = (static_cast<std::uint64_t>(j) * cls.c) % n;
            std::uint32_t coords = solvers.at(cls.cardinality)->solve(ctx.from_exp(static_cast<long long>(e)));
            for (int s = 0; s < cls.cardinality; ++s)
                if (coords >> s & 1u)
                    a.set(j, off + static_cast<std::size_t>(s), true);
            off += static_cast<std::size_t>(cls.cardinality);
        }
    }
    plan.post_matrix = std::move(a);
    plan.output_perm = Permutation::identity(n);

    plan.pre_schedule = naive_schedule(plan.pre_matrix); // a permutation: zero adds
    plan.post_schedule = greedy_cse(*plan.post_matrix);
    plan.static_binary_adds_naive = static_cast<long long>(plan.post_matrix->naive_add_count());
    plan.static_binary_adds_cse = static_cast<long long>(plan.post_schedule.length());
    return plan;
}

inline long long irreducible_count(int i);
inline long long total_mult_formula(int m);

/// The reduced-multiplication pipeline: fold all per-class binary factors
/// and the division matrix into one combined pre-matrix, then run one
/// shared factored evaluator per cardinality family.
inline DftPlan novel_plan(const FieldCtx& ctx) {
    if (ctx.m() % 2 != 0)
        throw OddExtensionDegree("novel plan needs even m, got m=" + std::to_string(ctx.m()));
    DftPlan plan;
    plan.variant = DftPlan::Algo::novel;
    plan.field = &ctx;
    plan.classes = enumerate_classes(ctx);
    std::vector<std::size_t> offsets;
    BinMatrix r = detail::division_matrix(ctx, plan.classes, offsets);
    plan.output_perm = detail::class_order_permutation(ctx, plan.classes);
    std::uint32_t n = ctx.n();

    struct Family {
        ConjugacyClass cls;
        std::shared_ptr<const FactoredEvaluator> eval;
        std::optional<BasisSpec> basis;
        std::optional<BinMatrix> mT_inv;
    };
    std::map<int, Family> families;
    for (const auto& cls : plan.classes) {
        int d = cls.cardinality;
        if (families.count(d))
            continue;
        Family fam;
        // the class list is ordered by representative, so odd families pick
        // the canonical class; even families need the special one
        fam.cls = (d % 2 == 0) ? find_special_class(ctx, d) : cls;
        fam.eval = FactoredEvaluator::build(ctx, fam.cls);
        families.emplace(d, std::move(fam));
    }

    plan.pre_matrix = BinMatrix(n, n);
    for (std::size_t k = 0; k < plan.classes.size(); ++k) {
        const auto& cls = plan.classes[k];
        int d = cls.cardinality;
        Family& fam = families.at(d);

        BinMatrix pj = fam.eval->tail();
        if (cls.c != fam.cls.c) {
            if (!fam.basis) {
                fam.basis = find_normal_basis(ctx, d);
                fam.mT_inv = basis_transform_matrix(ctx, fam.cls, *fam.basis).transpose().invert();
            }
            BinMatrix mj = basis_transform_matrix(ctx, cls, *fam.basis);
            pj = pj.mul(fam.mT_inv->mul(mj.transpose()));
        }
        // combined pre-stage rows: P_j times the R block of this class
        for (int i = 0; i < d; ++i)
            for (int s = 0; s < d; ++s)
                if (pj.get(static_cast<std::size_t>(i), static_cast<std::size_t>(s)))
                    plan.pre_matrix.xor_row_from(offsets[k] + static_cast<std::size_t>(i), r,
                                                 offsets[k] + static_cast<std::size_t>(s));

        DftPlan::Stage st;
        st.class_index = k;
        st.offset = offsets[k];
        st.size = d;
        st.eval = fam.eval;
        plan.stages.push_back(std::move(st));
        plan.static_mults += fam.eval->static_mults();
        plan.static_field_adds += fam.eval->static_adds();
    }

    if (plan.static_mults != total_mult_formula(ctx.m()))
        throw Error("multiplication count " + std::to_string(plan.static_mults) +
                    " disagrees with the counting formula " +
                    std::to_string(total_mult_formula(ctx.m())));

    plan.pre_schedule = greedy_cse(plan.pre_matrix);
    plan.static_binary_adds_naive = static_cast<long long>(plan.pre_schedule.naive_adds);
    plan.static_binary_adds_cse = static_cast<long long>(plan.pre_schedule.length());
    return plan;
}

inline DftPlan naive_plan(const FieldCtx& ctx) {
    DftPlan plan;
    plan.variant = DftPlan::Algo::naive;
    plan.field = &ctx;
    std::uint32_t n = ctx.n();
    plan.output_perm = Permutation::identity(n);
    // site counts of the defining double loop
    plan.static_mults = static_cast<long long>(n - 1) * static_cast<long long>(n - 1);
    plan.static_field_adds = static_cast<long long>(n) * static_cast<long long>(n - 1);
    return plan;
}

inline DftPlan make_plan(const FieldCtx& ctx, DftPlan::Algo algo) {
    switch (algo) {
    case DftPlan::Algo::naive:
        return naive_plan(ctx);
    case DftPlan::Algo::goertzel_blahut:
        return gb_plan(ctx);
    case DftPlan::Algo::cyclotomic:
        return cyclotomic_plan(ctx);
    case DftPlan::Algo::novel:
        return novel_plan(ctx);
    }
    throw Error("unknown algorithm");
}

/// Runs a compiled plan.  Output is in natural index order; the counter
/// sees exactly the plan's static site counts on every input.
inline FieldVector execute(const DftPlan& plan, const FieldVector& f, OpCounter& counter) {
    const FieldCtx& ctx = *plan.field;
    if (f.size() != ctx.n())
        throw LengthMismatch("expected length " + std::to_string(ctx.n()) + ", got " +
                             std::to_string(f.size()));
    if (plan.variant == DftPlan::Algo::naive)
        return naive_dft(ctx, f, &counter);

    FieldVector v = plan.pre_schedule.replay(f, &counter);
    FieldVector y(ctx.n());
    for (const auto& st : plan.stages) {
        FieldVector block(v.begin() + static_cast<std::ptrdiff_t>(st.offset),
                          v.begin() + static_cast<std::ptrdiff_t>(st.offset + static_cast<std::size_t>(st.size)));
        FieldVector out = st.eval ? st.eval->apply_head(ctx, block, &counter)
                                  : st.dense.apply(ctx, block, &counter);
        for (int i = 0; i < st.size; ++i)
            y[st.offset + static_cast<std::size_t>(i)] = out[static_cast<std::size_t>(i)];
    }
    if (plan.post_matrix)
        y = plan.post_schedule.replay(y, &counter);

    if (plan.output_perm.is_identity())
        return y;
    FieldVector F(ctx.n());
    for (std::size_t i = 0; i < y.size(); ++i)
        F[plan.output_perm[i]] = y[i];
    return F;
}

inline int mobius(int d) {
    int mu = 1;
    for (int p = 2; p * p <= d; ++p) {
        if (d % p)
            continue;
        d /= p;
        if (d % p == 0)
            return 0;
        mu = -mu;
    }
    if (d > 1)
        mu = -mu;
    return mu;
}

/// Number of irreducible binary polynomials of degree i:
/// (1/i) * sum over d | i of mobius(d) * 2^{i/d}.
inline long long irreducible_count(int i) {
    long long sum = 0;
    for (int d = 1; d <= i; ++d) {
        if (i % d)
            continue;
        sum += static_cast<long long>(mobius(d)) * (1ll << (i / d));
    }
    return sum / i;
}

/// Total multiplications of the reduced pipeline for length 2^m - 1:
/// sum over divisors of m of Mult(d) * Irreducible(d).
inline long long total_mult_formula(int m) {
    long long sum = 0;
    for (int d = 1; d <= m; ++d) {
        if (m % d)
            continue;
        sum += mult_count(d) * irreducible_count(d);
    }
    return sum;
}

/// Block-diagonal consistency of the circulant stage: for every
/// cardinality family, L equals the shared Moore-Vandermonde matrix times
/// the inverse transposed basis transformation.
inline bool verify_eq11(const FieldCtx& ctx) {
    if (ctx.m() % 2 != 0)
        throw OddExtensionDegree("even m required");
    auto classes = enumerate_classes(ctx);
    std::map<int, bool> done;
    for (const auto& cls : classes) {
        int d = cls.cardinality;
        if (done.count(d))
            continue;
        done[d] = true;
        ConjugacyClass fam = (d % 2 == 0) ? find_special_class(ctx, d) : cls;
        BasisSpec basis = find_normal_basis(ctx, d);
        FieldMatrix l = basis_circulant(basis);
        BinMatrix mt = basis_transform_matrix(ctx, fam, basis).transpose();
        FieldMatrix rhs = moore_vandermonde(ctx, fam).mul(ctx, FieldMatrix::from_bin(mt.invert()));
        if (!(rhs == l))
            return false;
    }
    return true;
}

} // namespace gfdft
