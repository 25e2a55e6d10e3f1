// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "gfdft/evaluator.hpp"
#include "gfdft/random.hpp"

using namespace gfdft;

namespace {

FieldElement special_delta(const FieldCtx& ctx, const ConjugacyClass& sp) {
    int half = sp.cardinality / 2;
    std::uint64_t e = (static_cast<std::uint64_t>(sp.c) *
                       (((std::uint64_t(1) << half) + 1) % ctx.n())) %
                      ctx.n();
    return ctx.from_exp(static_cast<long long>(e));
}

FieldVector random_block(const FieldCtx& ctx, int len, std::uint64_t seed) {
    std::uint64_t state = seed;
    std::uint32_t mask = (1u << ctx.m()) - 1u;
    FieldVector v(static_cast<std::size_t>(len));
    for (auto& e : v)
        e = {static_cast<std::uint32_t>(splitmix64(state)) & mask};
    return v;
}

} // namespace

TEST_CASE("remainder matrix recursion") {
    FieldCtx ctx(4);
    FieldElement delta = ctx.from_exp(5);

    SECTION("initial columns and the first four entries") {
        RemainderMatrix rm = remainder_matrix(ctx, delta, 4);
        CHECK(rm.u.at(0, 0) == ctx.one());
        CHECK(rm.u.at(1, 0) == ctx.zero());
        CHECK(rm.u.at(0, 1) == ctx.zero());
        CHECK(rm.u.at(1, 1) == ctx.one());
        CHECK(rm.u.at(0, 2) == delta);
        CHECK(rm.u.at(1, 2) == ctx.one());
        CHECK(rm.u.at(0, 3) == delta);
        CHECK(rm.u.at(1, 3) == ctx.add(delta, ctx.one()));
    }

    SECTION("row zero lags row one by one epsilon factor") {
        for (int m : {6, 8, 12}) {
            FieldCtx f(m);
            auto sp = find_special_class(f);
            FieldElement d = special_delta(f, sp);
            RemainderMatrix rm = remainder_matrix(f, d, m);
            for (int i = 1; i < m; ++i)
                CHECK(rm.u.at(0, static_cast<std::size_t>(i)) ==
                      f.mul(d, rm.u.at(1, static_cast<std::size_t>(i - 1))));
            // epsilon = delta keeps every entry inside the half subfield
            for (int j = 0; j < 2; ++j)
                for (int i = 0; i < m; ++i)
                    CHECK(f.in_subfield(rm.u.at(static_cast<std::size_t>(j), static_cast<std::size_t>(i)),
                                        m / 2));
        }
    }

    SECTION("conjugate epsilon gives the entrywise frobenius power") {
        FieldCtx f(8);
        auto sp = find_special_class(f);
        FieldElement d = special_delta(f, sp);
        RemainderMatrix u0 = remainder_matrix(f, d, 8);
        for (int i = 1; i < 4; ++i) {
            RemainderMatrix ui = remainder_matrix(f, f.frobenius(d, i), 8);
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < 8; ++k)
                    CHECK(ui.u.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k)) ==
                          f.frobenius(u0.u.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k)), i));
        }
    }

    CHECK_THROWS_AS(remainder_matrix(ctx, delta, 2), DegreeTooSmall);
}

TEST_CASE("b matrix") {
    SECTION("m=4 printed factor") {
        FieldCtx ctx(4);
        FieldElement delta = ctx.from_exp(5);
        RemainderMatrix rm = remainder_matrix(ctx, delta, 4);
        BinMatrix b = build_b_matrix(ctx, rm, delta);
        CHECK(b.invert() == BinMatrix::from_bit_strings({"1000", "0111", "0011", "0001"}));
    }

    SECTION("column zero is always the first unit vector") {
        for (int m : {4, 6, 8, 12}) {
            FieldCtx f(m);
            auto sp = find_special_class(f);
            FieldElement d = special_delta(f, sp);
            BinMatrix b = build_b_matrix(f, remainder_matrix(f, d, m), d);
            for (int r = 0; r < m; ++r)
                CHECK(b.get(static_cast<std::size_t>(r), 0) == (r == 0));
        }
    }

    SECTION("multiply-back oracle: U*B is the interleaved delta-power target") {
        for (int m : {4, 6, 8, 12}) {
            FieldCtx f(m);
            auto sp = find_special_class(f);
            FieldElement d = special_delta(f, sp);
            RemainderMatrix rm = remainder_matrix(f, d, m);
            BinMatrix b = build_b_matrix(f, rm, d);
            FieldMatrix ub = rm.u.mul(f, FieldMatrix::from_bin(b));
            for (int j = 0; j < m / 2; ++j) {
                FieldElement dj = f.pow(d, static_cast<unsigned long long>(j));
                for (int r = 0; r < 2; ++r)
                    for (int par = 0; par < 2; ++par) {
                        FieldElement want = (r == par) ? dj : f.zero();
                        CHECK(ub.at(static_cast<std::size_t>(r), static_cast<std::size_t>(2 * j + par)) ==
                              want);
                    }
            }
        }
    }

    SECTION("degenerate epsilon is rejected") {
        // alpha^21 lies in GF(4) inside GF(64), so (1, eps, eps^2) are
        // dependent and the coordinate system collapses
        FieldCtx ctx(6);
        FieldElement eps = ctx.from_exp(21);
        RemainderMatrix rm = remainder_matrix(ctx, eps, 6);
        CHECK_THROWS_AS(build_b_matrix(ctx, rm, eps), SingularSystem);
    }
}

TEST_CASE("base kernels") {
    SECTION("m=2: one multiplication, printed factorization") {
        FieldCtx ctx(2);
        auto ev = FactoredEvaluator::build(ctx, class_of_exponent(ctx, 1));
        CHECK(ev->kind() == FactoredEvaluator::Kind::base2);
        CHECK(ev->static_mults() == 1);
        FieldMatrix v = ev->compose(ctx);
        CHECK(v == moore_vandermonde(ctx, class_of_exponent(ctx, 1)));
        // lower-triangular times upper-unit factor shape
        FieldMatrix lower(2, 2), upper(2, 2);
        lower.at(0, 0) = lower.at(1, 0) = lower.at(1, 1) = ctx.one();
        upper.at(0, 0) = upper.at(1, 1) = ctx.one();
        upper.at(0, 1) = ctx.from_exp(1);
        CHECK(ev->head_matrix(ctx) == lower.mul(ctx, upper));
    }

    SECTION("trivial class") {
        FieldCtx ctx(4);
        auto ev = FactoredEvaluator::build(ctx, class_of_exponent(ctx, 0));
        CHECK(ev->static_mults() == 0);
        OpCounter counter;
        FieldVector t{ctx.from_exp(7)};
        CHECK(ev->apply(ctx, t, counter) == t);
        CHECK(counter.mults == 0);
    }

    SECTION("degree-3 kernel is exhaustively exact over GF(8)") {
        FieldCtx ctx(3);
        auto cls = class_of_exponent(ctx, 1);
        auto ev = FactoredEvaluator::build(ctx, cls);
        CHECK(ev->kind() == FactoredEvaluator::Kind::base3);
        CHECK(ev->static_mults() == 3);
        FieldMatrix v = moore_vandermonde(ctx, cls);
        CHECK(ev->compose(ctx) == v);
        for (std::uint32_t a = 0; a < 8; ++a)
            for (std::uint32_t b = 0; b < 8; ++b)
                for (std::uint32_t c = 0; c < 8; ++c) {
                    FieldVector t{{a}, {b}, {c}};
                    OpCounter counter;
                    CHECK(ev->apply(ctx, t, counter) == v.apply(ctx, t));
                    CHECK(counter.mults == 3);
                }
    }

    SECTION("degree-3 kernel on subfield classes of GF(64)") {
        FieldCtx ctx(6);
        for (std::uint32_t rep : {9u, 27u}) {
            auto cls = class_of_exponent(ctx, rep);
            REQUIRE(cls.cardinality == 3);
            auto ev = FactoredEvaluator::build(ctx, cls);
            FieldMatrix v = moore_vandermonde(ctx, cls);
            CHECK(ev->compose(ctx) == v);
            for (int trial = 0; trial < 50; ++trial) {
                FieldVector t = random_block(ctx, 3, 100 * rep + static_cast<std::uint64_t>(trial));
                OpCounter counter;
                CHECK(ev->apply(ctx, t, counter) == v.apply(ctx, t));
                CHECK(counter.mults == 3);
            }
        }
    }

    SECTION("unsupported odd degree") {
        FieldCtx ctx(10);
        auto cls = class_of_exponent(ctx, 33); // cardinality 5
        REQUIRE(cls.cardinality == 5);
        CHECK_THROWS_AS(FactoredEvaluator::build(ctx, cls), UnsupportedDegree);
    }
}

TEST_CASE("m=4 factor chain matches the printed factorization") {
    FieldCtx ctx(4);
    auto ev = FactoredEvaluator::build(ctx, class_of_exponent(ctx, 1));
    REQUIRE(ev->kind() == FactoredEvaluator::Kind::even);
    CHECK(ev->static_mults() == 4);
    CHECK(ev->static_adds() == 8);

    CHECK(ev->diag() == FieldVector{ctx.from_exp(1), ctx.from_exp(2)});
    CHECK(ev->pi().image() == std::vector<std::uint32_t>{0, 2, 1, 3});
    CHECK(ev->b_inv() == BinMatrix::from_bit_strings({"1000", "0111", "0011", "0001"}));
    CHECK(ev->delta_pre() == BinMatrix::identity(2));

    REQUIRE(ev->sub() != nullptr);
    CHECK(ev->sub()->kind() == FactoredEvaluator::Kind::base2);
    CHECK(ev->sub()->base2_constant() == ctx.from_exp(5));
    FieldMatrix delta_expect(2, 2);
    delta_expect.at(0, 0) = delta_expect.at(1, 0) = ctx.one();
    delta_expect.at(0, 1) = ctx.from_exp(5);
    delta_expect.at(1, 1) = ctx.from_exp(10);
    CHECK(ev->sub()->compose(ctx) == delta_expect);

    CHECK(ev->compose(ctx) == moore_vandermonde(ctx, class_of_exponent(ctx, 1)));
}

TEST_CASE("composition reproduces the moore-vandermonde matrix for every class") {
    for (int m : {2, 4, 6, 8, 12}) {
        FieldCtx ctx(m);
        for (const auto& cls : enumerate_classes(ctx)) {
            auto ev = FactoredEvaluator::build(ctx, cls);
            CHECK(ev->compose(ctx) == moore_vandermonde(ctx, cls));
            CHECK(ev->static_mults() == mult_count(cls.cardinality));
        }
    }
}

TEST_CASE("apply equals the dense product and counts are input-independent") {
    for (int m : {2, 4, 6, 8, 12}) {
        FieldCtx ctx(m);
        auto classes = enumerate_classes(ctx);
        // the special class plus the last class exercise both the direct
        // factorization and the cross-class bridge
        std::vector<ConjugacyClass> picks{find_special_class(ctx), classes.back()};
        for (const auto& cls : picks) {
            auto ev = FactoredEvaluator::build(ctx, cls);
            FieldMatrix v = moore_vandermonde(ctx, cls);
            for (int trial = 0; trial < 100; ++trial) {
                FieldVector t = random_block(ctx, cls.cardinality,
                                             1000 * static_cast<std::uint64_t>(m) +
                                                 static_cast<std::uint64_t>(trial));
                OpCounter counter;
                FieldVector got = ev->apply(ctx, t, counter);
                CHECK(got == v.apply(ctx, t));
                CHECK(counter.mults == ev->static_mults());
            }
            // the zero vector still walks every multiplication site
            OpCounter counter;
            ev->apply(ctx, FieldVector(static_cast<std::size_t>(cls.cardinality)), counter);
            CHECK(counter.mults == ev->static_mults());
        }
    }
}

TEST_CASE("two-level division identities") {
    for (int m : {4, 6, 8, 12}) {
        FieldCtx ctx(m);
        auto sp = find_special_class(ctx);
        auto ev = FactoredEvaluator::build(ctx, sp);
        int half = m / 2;
        FieldElement d = special_delta(ctx, sp);

        // Delta is the moore-vandermonde matrix of delta's own class
        FieldMatrix delta_mv(static_cast<std::size_t>(half), static_cast<std::size_t>(half));
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j)
                delta_mv.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    ctx.frobenius(ctx.pow(d, static_cast<unsigned long long>(j)), i);

        // upper level: stacked conjugate remainder matrices equal
        // pi^{-1} * blockdiag(Delta, Delta) * pi * B^{-1}
        FieldMatrix u_upper(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
        for (int i = 0; i < half; ++i) {
            RemainderMatrix ui = remainder_matrix(ctx, ctx.frobenius(d, i), m);
            for (int j = 0; j < 2; ++j)
                for (int k = 0; k < m; ++k)
                    u_upper.at(static_cast<std::size_t>(2 * i + j), static_cast<std::size_t>(k)) =
                        ui.u.at(static_cast<std::size_t>(j), static_cast<std::size_t>(k));
        }
        FieldMatrix blockdelta(static_cast<std::size_t>(m), static_cast<std::size_t>(m));
        for (int i = 0; i < half; ++i)
            for (int j = 0; j < half; ++j) {
                blockdelta.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                    delta_mv.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
                blockdelta.at(static_cast<std::size_t>(half + i), static_cast<std::size_t>(half + j)) =
                    delta_mv.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
            }
        RemainderMatrix rm = remainder_matrix(ctx, d, m);
        BinMatrix b = build_b_matrix(ctx, rm, d);
        Permutation pi = pi_permutation(m);
        FieldMatrix rhs = FieldMatrix::from_bin(pi.inverse().as_matrix())
                              .mul(ctx, blockdelta)
                              .mul(ctx, FieldMatrix::from_bin(pi.as_matrix()))
                              .mul(ctx, FieldMatrix::from_bin(b.invert()));
        CHECK(u_upper == rhs);

        // lower level on random inputs: T_{m/2+i} = T_i + u_{i,1}
        for (int trial = 0; trial < 20; ++trial) {
            FieldVector t = random_block(ctx, m, 777 + static_cast<std::uint64_t>(trial));
            OpCounter counter;
            FieldVector T = ev->apply(ctx, t, counter);
            FieldVector u = u_upper.apply(ctx, t);
            for (int i = 0; i < half; ++i) {
                CHECK(T[static_cast<std::size_t>(half + i)] ==
                      ctx.add(T[static_cast<std::size_t>(i)], u[static_cast<std::size_t>(2 * i + 1)]));
            }
        }
    }
}

TEST_CASE("multiplication count recursion") {
    CHECK(mult_count(1) == 0);
    CHECK(mult_count(2) == 1);
    CHECK(mult_count(3) == 3);
    CHECK(mult_count(4) == 4);
    CHECK(mult_count(6) == 9);
    CHECK(mult_count(8) == 12);
    CHECK(mult_count(12) == 24);
    CHECK_THROWS_AS(mult_count(5), UnsupportedDegree);
    CHECK_THROWS_AS(mult_count(10), UnsupportedDegree);
    CHECK_THROWS_AS(mult_count(7), UnsupportedDegree);
    // closed form for powers of two
    for (int log = 1; log <= 4; ++log) {
        int m = 1 << log;
        CHECK(mult_count(m) == (m / 2) * log);
    }
}
