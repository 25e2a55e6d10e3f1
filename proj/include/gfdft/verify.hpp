// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "dft.hpp"
#include "random.hpp"

namespace gfdft {

struct CheckResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

/// Table multiply agrees with carry-less multiply on sampled pairs.
inline bool check_field_tables(const FieldCtx& ctx, int samples = 500, std::uint64_t seed = 1) {
    std::uint64_t state = seed;
    std::uint32_t mask = (1u << ctx.m()) - 1u;
    for (int k = 0; k < samples; ++k) {
        FieldElement a{static_cast<std::uint32_t>(splitmix64(state)) & mask};
        FieldElement b{static_cast<std::uint32_t>(splitmix64(state)) & mask};
        if (!(ctx.mul(a, b) == ctx.mul_clmul(a, b)))
            return false;
    }
    return true;
}

inline bool check_idft_roundtrip(const FieldCtx& ctx, int vectors = 100, std::uint64_t seed = 1) {
    for (int t = 0; t < vectors; ++t) {
        FieldVector f = random_vector(ctx, seed + static_cast<std::uint64_t>(t));
        if (!(naive_idft(ctx, naive_dft(ctx, f)) == f))
            return false;
    }
    return true;
}

/// Executes a plan against the defining sum on seeded vectors, also
/// requiring the counted multiplications to equal the static count on
/// every input.
inline bool check_oracle(const FieldCtx& ctx, const DftPlan& plan, int vectors = 100,
                         std::uint64_t seed = 1) {
    for (int t = 0; t < vectors; ++t) {
        FieldVector f = random_vector(ctx, seed + 17 * static_cast<std::uint64_t>(t));
        OpCounter counter;
        if (!(execute(plan, f, counter) == naive_dft(ctx, f)))
            return false;
        if (counter.mults != plan.static_mults)
            return false;
    }
    return true;
}

/// V_k^T = M_k L_k, V_k = L_k M_k^T, and the cross-class shift
/// V_j = V_k (M_k^T)^{-1} M_j^T inside every cardinality family.
inline bool check_basis_relations(const FieldCtx& ctx) {
    std::map<int, BasisSpec> bases;
    std::map<int, ConjugacyClass> first_of;
    for (const auto& cls : enumerate_classes(ctx)) {
        if (!bases.count(cls.cardinality))
            bases.emplace(cls.cardinality, find_normal_basis(ctx, cls.cardinality));
        const BasisSpec& basis = bases.at(cls.cardinality);
        BinMatrix mk = basis_transform_matrix(ctx, cls, basis);
        FieldMatrix vk = moore_vandermonde(ctx, cls);
        FieldMatrix lk = basis_circulant(basis);
        if (!(vk.transpose() == FieldMatrix::from_bin(mk).mul(ctx, lk)))
            return false;
        if (!(vk == lk.mul(ctx, FieldMatrix::from_bin(mk.transpose()))))
            return false;
        auto [it, fresh] = first_of.emplace(cls.cardinality, cls);
        if (!fresh) {
            BinMatrix bridge =
                basis_transform_matrix(ctx, it->second, basis).transpose().invert().mul(mk.transpose());
            if (!(vk == moore_vandermonde(ctx, it->second).mul(ctx, FieldMatrix::from_bin(bridge))))
                return false;
        }
    }
    return true;
}

/// The special class exists, has full cardinality, and every conjugate
/// pair at distance m/2 differs by one.
inline bool check_special_class(const FieldCtx& ctx) {
    int m = ctx.m();
    auto sp = find_special_class(ctx);
    if (sp.cardinality != m)
        return false;
    for (int i = 0; i < m / 2; ++i) {
        FieldElement ei = ctx.from_exp(sp.members[static_cast<std::size_t>(i)]);
        FieldElement es = ctx.from_exp(sp.members[static_cast<std::size_t>(m / 2 + i)]);
        if (!(ei == ctx.add(es, ctx.one())))
            return false;
    }
    return true;
}

/// Factored evaluators compose to the exact Moore-Vandermonde matrix of
/// every class, with the recursion's multiplication count.
inline bool check_compositions(const FieldCtx& ctx) {
    for (const auto& cls : enumerate_classes(ctx)) {
        auto ev = FactoredEvaluator::build(ctx, cls);
        if (!(ev->compose(ctx) == moore_vandermonde(ctx, cls)))
            return false;
        if (ev->static_mults() != mult_count(cls.cardinality))
            return false;
    }
    return true;
}

/// For every even-cardinality special class: U*B equals the interleaved
/// delta-power target, and the stacked conjugate remainder matrices factor
/// as pi^{-1} blockdiag(Delta, Delta) pi B^{-1}.
inline bool check_upper_level(const FieldCtx& ctx) {
    for (const auto& cls : enumerate_classes(ctx)) {
        int d = cls.cardinality;
        if (d % 2 != 0 || d < 4)
            continue;
        auto sp = find_special_class(ctx, d);
        if (sp.c != cls.c)
            continue;
        int half = d / 2;
        std::uint64_t de = (static_cast<std::uint64_t>(sp.c) *
                            (((std::uint64_t(1) << half) + 1) % ctx.n())) %
                           ctx.n();
        FieldElement delta = ctx.from_exp(static_cast<long long>(de));
        RemainderMatrix rm = remainder_matrix(ctx, delta, d);
        BinMatrix b = build_b_matrix(ctx, rm, delta);

        FieldMatrix ub = rm.u.mul(ctx, FieldMatrix::from_bin(b));
        for (int j = 0; j < half; ++j) {
            FieldElement dj = ctx.pow(delta, static_cast<unsigned long long>(j));
            for (int r = 0; r < 2; ++r)
                for (int par = 0; par < 2; ++par)
                    if (!(ub.at(static_cast<std::size_t>(r), static_cast<std::size_t>(2 * j + par)) ==
                          ((r == par) ? dj : ctx.zero())))
                        return false;
        }

        FieldMatrix u_upper(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        for (int i = 0; i < half; ++i) {
            RemainderMatrix ui = remainder_matrix(ctx, ctx.frobenius(delta, i), d);
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < d; ++k)
                    u_upper.at(static_cast<std::size_t>(2 * i + j), static_cast<std::size_t>(k)) =
                        ui.u.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
        }
        FieldMatrix blockdelta(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j) {
                FieldElement v = ctx.frobenius(ctx.pow(delta, static_cast<unsigned long long>(j)), i);
                blockdelta.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) = v;
                blockdelta.at(static_cast<std::size_t>(half + i), static_cast<std::size_t>(half + j)) = v;
            }
        Permutation pi = pi_permutation(d);
        FieldMatrix rhs = FieldMatrix::from_bin(pi.inverse().as_matrix())
                              .mul(ctx, blockdelta)
                              .mul(ctx, FieldMatrix::from_bin(pi.as_matrix()))
                              .mul(ctx, FieldMatrix::from_bin(b.invert()));
        if (!(u_upper == rhs))
            return false;
    }
    return true;
}

/// Static count equals the divisor-sum formula and the dynamic tally.
inline bool check_count_law(const FieldCtx& ctx, std::uint64_t seed = 1) {
    DftPlan plan = novel_plan(ctx);
    if (plan.static_mults != total_mult_formula(ctx.m()))
        return false;
    OpCounter counter;
    execute(plan, random_vector(ctx, seed), counter);
    return counter.mults == plan.static_mults;
}

namespace detail {

inline void record(std::vector<CheckResult>& out, const std::string& name, bool pass,
                   const std::string& detail = "") {
    out.push_back({name, pass, detail});
}

template <typename Fn>
void guarded(std::vector<CheckResult>& out, const std::string& name, Fn&& fn) {
    try {
        fn();
    } catch (const std::exception& ex) {
        record(out, name, false, ex.what());
    }
}

} // namespace detail

/// The full invariant suite for one field, one result per named check.
inline std::vector<CheckResult> run_verification(const FieldCtx& ctx, int vectors = 100,
                                                 std::uint64_t seed = 1) {
    std::vector<CheckResult> out;
    const int m = ctx.m();

    detail::guarded(out, "field-tables", [&] {
        detail::record(out, "field-tables", check_field_tables(ctx, 500, seed),
                       "table multiply vs carry-less multiply");
    });
    detail::guarded(out, "idft-roundtrip", [&] {
        detail::record(out, "idft-roundtrip", check_idft_roundtrip(ctx, vectors, seed));
    });

    std::vector<DftPlan> plans;
    detail::guarded(out, "plan-build", [&] {
        plans.push_back(gb_plan(ctx));
        plans.push_back(cyclotomic_plan(ctx));
        if (m % 2 == 0)
            plans.push_back(novel_plan(ctx));
        detail::record(out, "plan-build", true);
    });
    for (const auto& plan : plans) {
        std::string name = std::string("oracle-") + DftPlan::algo_name(plan.variant);
        detail::guarded(out, name, [&] {
            detail::record(out, name, check_oracle(ctx, plan, vectors, seed),
                           std::to_string(vectors) + " seeded vectors");
        });
    }

    detail::guarded(out, "basis-relations", [&] {
        detail::record(out, "basis-relations", check_basis_relations(ctx),
                       "circulant/evaluation matrix identities");
    });

    if (m % 2 == 0) {
        detail::guarded(out, "special-class", [&] {
            detail::record(out, "special-class", check_special_class(ctx));
        });
        detail::guarded(out, "factored-composition", [&] {
            detail::record(out, "factored-composition", check_compositions(ctx), "all classes");
        });
        detail::guarded(out, "upper-level-identity", [&] {
            detail::record(out, "upper-level-identity", check_upper_level(ctx),
                           "remainder stack and B factorization");
        });
        detail::guarded(out, "circulant-factorization", [&] {
            detail::record(out, "circulant-factorization", verify_eq11(ctx));
        });
        detail::guarded(out, "count-law", [&] {
            detail::record(out, "count-law", check_count_law(ctx, seed),
                           "mults=" + std::to_string(total_mult_formula(m)));
        });
    }

    return out;
}

/// Golden comparisons against the transcribed 15-point example.  Only
/// meaningful for GF(2^4) with modulus x^4+x+1.
inline std::vector<CheckResult> run_golden_verification(const FieldCtx& ctx,
                                                        const std::string& dir) {
    std::vector<CheckResult> out;
    if (ctx.m() != 4 || ctx.modulus_bits() != 0x13) {
        detail::record(out, "golden", false, "golden data covers m=4 with modulus x^4+x+1 only");
        return out;
    }

    auto read_lines = [&](const std::string& name) {
        std::ifstream in(dir + "/" + name);
        if (!in.good())
            throw Error("cannot open golden file " + dir + "/" + name);
        std::vector<std::string> lines;
        std::string line;
        while (std::getline(in, line))
            if (!line.empty())
                lines.push_back(line);
        return lines;
    };
    auto load_bin = [&](const std::string& name) {
        return BinMatrix::from_bit_strings(read_lines(name));
    };
    auto load_field = [&](const std::string& name) {
        auto lines = read_lines(name);
        std::vector<std::vector<FieldElement>> rows;
        for (const auto& line : lines) {
            std::istringstream ss(line);
            std::string tok;
            rows.emplace_back();
            while (ss >> tok)
                rows.back().push_back(ctx.parse(tok));
        }
        FieldMatrix a(rows.size(), rows.empty() ? 0 : rows[0].size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < a.cols(); ++c)
                a.at(r, c) = rows[r][c];
        return a;
    };

    detail::guarded(out, "golden-R", [&] {
        detail::record(out, "golden-R", gb_plan(ctx).pre_matrix == load_bin("r_matrix.txt"));
    });
    detail::guarded(out, "golden-PR", [&] {
        detail::record(out, "golden-PR", novel_plan(ctx).pre_matrix == load_bin("pr_matrix.txt"));
    });
    detail::guarded(out, "golden-M", [&] {
        BasisSpec b4 = normal_basis_from(ctx, ctx.from_exp(6), 4);
        BasisSpec b2 = normal_basis_from(ctx, ctx.from_exp(5), 2);
        BasisSpec b1 = normal_basis_from(ctx, ctx.one(), 1);
        bool ok =
            basis_transform_matrix(ctx, class_of_exponent(ctx, 0), b1).transpose() == load_bin("m0t.txt") &&
            basis_transform_matrix(ctx, class_of_exponent(ctx, 1), b4).transpose() == load_bin("m1t.txt") &&
            basis_transform_matrix(ctx, class_of_exponent(ctx, 3), b4).transpose() == load_bin("m2t.txt") &&
            basis_transform_matrix(ctx, class_of_exponent(ctx, 7), b4).transpose() == load_bin("m3t.txt") &&
            basis_transform_matrix(ctx, class_of_exponent(ctx, 5), b2).transpose() == load_bin("m4t.txt");
        detail::record(out, "golden-M", ok, "basis transformation transposes");
    });
    detail::guarded(out, "golden-V", [&] {
        bool ok = moore_vandermonde(ctx, class_of_exponent(ctx, 1)) == load_field("v1.txt") &&
                  moore_vandermonde(ctx, class_of_exponent(ctx, 3)) == load_field("v2.txt") &&
                  moore_vandermonde(ctx, class_of_exponent(ctx, 7)) == load_field("v3.txt") &&
                  moore_vandermonde(ctx, class_of_exponent(ctx, 5)) == load_field("v4.txt");
        detail::record(out, "golden-V", ok, "evaluation matrices");
    });
    detail::guarded(out, "golden-L", [&] {
        bool ok = basis_circulant(normal_basis_from(ctx, ctx.from_exp(6), 4)) == load_field("l1.txt") &&
                  basis_circulant(normal_basis_from(ctx, ctx.from_exp(5), 2)) == load_field("l4.txt");
        detail::record(out, "golden-L", ok, "basis circulants");
    });
    detail::guarded(out, "golden-factors", [&] {
        auto ev = FactoredEvaluator::build(ctx, class_of_exponent(ctx, 1));
        FieldMatrix delta = ev->sub()->compose(ctx).mul(ctx, FieldMatrix::from_bin(ev->delta_pre()));
        bool ok = ev->pi().as_matrix() == load_bin("pi.txt") &&
                  ev->b_inv() == load_bin("b_inv.txt") &&
                  ev->tail() == load_bin("p1_matrix.txt") &&
                  delta == load_field("delta.txt") &&
                  ev->head_matrix(ctx) == load_field("s_matrix.txt") &&
                  ev->compose(ctx) == load_field("v1.txt");
        detail::record(out, "golden-factors", ok, "five-factor chain");
    });
    detail::guarded(out, "golden-D-blocks", [&] {
        DftPlan plan = novel_plan(ctx);
        FieldMatrix s = load_field("s_matrix.txt");
        bool ok = plan.stages.size() == 5 &&
                  plan.stages[0].eval->head_matrix(ctx) == FieldMatrix::identity(1) &&
                  plan.stages[1].eval->head_matrix(ctx) == s &&
                  plan.stages[2].eval->head_matrix(ctx) == s &&
                  plan.stages[3].eval->head_matrix(ctx) == s &&
                  plan.stages[4].eval->head_matrix(ctx) == load_field("v4.txt");
        detail::record(out, "golden-D-blocks", ok);
    });
    return out;
}

} // namespace gfdft
