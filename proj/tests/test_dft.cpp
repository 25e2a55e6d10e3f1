// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include "gfdft/dft.hpp"
#include "gfdft/random.hpp"

using namespace gfdft;

TEST_CASE("naive dft basics") {
    FieldCtx ctx(4);

    SECTION("unit impulse at zero gives the all-ones vector") {
        FieldVector f(15);
        f[0] = ctx.one();
        FieldVector F = naive_dft(ctx, f);
        for (auto e : F)
            CHECK(e == ctx.one());
    }

    SECTION("zero maps to zero") {
        FieldVector F = naive_dft(ctx, FieldVector(15));
        for (auto e : F)
            CHECK(e == ctx.zero());
    }

    SECTION("constant input concentrates at index zero") {
        FieldElement c = ctx.from_exp(9);
        FieldVector f(15, c);
        FieldVector F = naive_dft(ctx, f);
        CHECK(F[0] == c);
        for (std::size_t j = 1; j < 15; ++j)
            CHECK(F[j] == ctx.zero());
    }

    CHECK_THROWS_AS(naive_dft(ctx, FieldVector(14)), LengthMismatch);
}

TEST_CASE("inverse round trip") {
    for (int m : {2, 4, 6, 8}) {
        FieldCtx ctx(m);
        for (int trial = 0; trial < 100; ++trial) {
            FieldVector f = random_vector(ctx, 31ull * static_cast<std::uint64_t>(m) +
                                                   static_cast<std::uint64_t>(trial));
            CHECK(naive_idft(ctx, naive_dft(ctx, f)) == f);
        }
    }
    FieldCtx ctx(4);
    FieldVector ones(15, ctx.one());
    FieldVector f = naive_idft(ctx, ones);
    CHECK(f[0] == ctx.one());
    for (std::size_t i = 1; i < 15; ++i)
        CHECK(f[i] == ctx.zero());
    CHECK(naive_idft(ctx, FieldVector(15)) == FieldVector(15));
}

TEST_CASE("division pre-matrix golden rows") {
    FieldCtx ctx(4);
    DftPlan plan = gb_plan(ctx);

    // row of r_{0,1}: f0+f4+f7+f8+f10+f12+f13+f14
    CHECK(plan.pre_matrix.to_bit_strings()[1] == "100010011010111");

    // output order: class members in block order
    std::vector<std::uint32_t> want{0, 1, 2, 4, 8, 3, 6, 12, 9, 7, 14, 13, 11, 5, 10};
    CHECK(plan.output_perm.image() == want);
}

TEST_CASE("gb plan executes the definition") {
    for (int m : {1, 2, 3, 4, 6}) {
        FieldCtx ctx(m);
        DftPlan plan = gb_plan(ctx);
        for (int trial = 0; trial < 20; ++trial) {
            FieldVector f = random_vector(ctx, 77ull * static_cast<std::uint64_t>(m) +
                                                   static_cast<std::uint64_t>(trial));
            OpCounter counter;
            CHECK(execute(plan, f, counter) == naive_dft(ctx, f));
        }
    }
}

TEST_CASE("cyclotomic plan") {
    SECTION("theorem-1 shape: V equals L times the transposed basis transform, per class") {
        for (int m : {2, 4, 6, 8}) {
            FieldCtx ctx(m);
            for (const auto& cls : enumerate_classes(ctx)) {
                BasisSpec basis = find_normal_basis(ctx, cls.cardinality);
                FieldMatrix l = basis_circulant(basis);
                BinMatrix mt = basis_transform_matrix(ctx, cls, basis).transpose();
                CHECK(moore_vandermonde(ctx, cls) == l.mul(ctx, FieldMatrix::from_bin(mt)));
            }
        }
    }

    SECTION("support on the zero class routes through the unit circulant") {
        FieldCtx ctx(4);
        DftPlan plan = cyclotomic_plan(ctx);
        FieldVector f(15);
        f[0] = ctx.from_exp(3);
        OpCounter counter;
        FieldVector F = execute(plan, f, counter);
        for (auto e : F)
            CHECK(e == ctx.from_exp(3));
    }

    SECTION("execution equals the definition") {
        for (int m : {1, 2, 3, 4, 6, 8}) {
            FieldCtx ctx(m);
            DftPlan plan = cyclotomic_plan(ctx);
            for (int trial = 0; trial < 20; ++trial) {
                FieldVector f = random_vector(ctx, 99ull * static_cast<std::uint64_t>(m) +
                                                       static_cast<std::uint64_t>(trial));
                OpCounter counter;
                CHECK(execute(plan, f, counter) == naive_dft(ctx, f));
            }
        }
    }
}

TEST_CASE("novel plan structure") {
    FieldCtx ctx(4);
    DftPlan plan = novel_plan(ctx);

    SECTION("static multiplication count is 13 and matches the formula") {
        CHECK(plan.static_mults == 13);
        CHECK(plan.static_mults == total_mult_formula(4));
    }

    SECTION("field stage is blockdiag(1, S, S, S, V_4)") {
        REQUIRE(plan.stages.size() == 5);
        CHECK(plan.stages[0].eval->degree() == 1);
        for (int k = 1; k <= 3; ++k) {
            CHECK(plan.stages[static_cast<std::size_t>(k)].eval ==
                  plan.stages[1].eval); // shared kernel
        }
        CHECK(plan.stages[4].eval->degree() == 2);
        // S, the shared multiplicative head
        FieldMatrix s = plan.stages[1].eval->head_matrix(ctx);
        int exps[4][4] = {{0, 5, 1, 6}, {0, 10, 2, 12}, {0, 5, 4, 9}, {0, 10, 8, 3}};
        for (std::size_t i = 0; i < 4; ++i)
            for (std::size_t j = 0; j < 4; ++j)
                CHECK(s.at(i, j) == ctx.from_exp(exps[i][j]));
    }

    SECTION("field additions are 26") {
        CHECK(plan.static_field_adds == 26);
    }

    SECTION("refusals") {
        FieldCtx odd(3);
        CHECK_THROWS_AS(novel_plan(odd), OddExtensionDegree);
        FieldCtx m10(10);
        CHECK_THROWS_AS(novel_plan(m10), UnsupportedDegree);
        CHECK_THROWS_WITH(novel_plan(m10), Catch::Matchers::ContainsSubstring("degree-5"));
    }
}

TEST_CASE("novel plan executes the definition with constant counts") {
    for (int m : {2, 4, 6, 8}) {
        FieldCtx ctx(m);
        DftPlan plan = novel_plan(ctx);
        OpCounter first;
        bool first_set = false;
        for (int trial = 0; trial < 20; ++trial) {
            FieldVector f = random_vector(ctx, 55ull * static_cast<std::uint64_t>(m) +
                                                   static_cast<std::uint64_t>(trial));
            OpCounter counter;
            CHECK(execute(plan, f, counter) == naive_dft(ctx, f));
            CHECK(counter.mults == plan.static_mults);
            CHECK(counter.field_adds == plan.static_field_adds);
            CHECK(counter.binary_stage_adds == plan.static_binary_adds_cse);
            if (!first_set) {
                first = counter;
                first_set = true;
            } else {
                CHECK(counter.mults == first.mults);
                CHECK(counter.field_adds == first.field_adds);
                CHECK(counter.binary_stage_adds == first.binary_stage_adds);
            }
        }
    }
}

TEST_CASE("all backends agree pairwise") {
    for (int m : {2, 3, 4, 6, 8}) {
        FieldCtx ctx(m);
        std::vector<DftPlan> plans;
        plans.push_back(gb_plan(ctx));
        plans.push_back(cyclotomic_plan(ctx));
        if (m % 2 == 0)
            plans.push_back(novel_plan(ctx));
        for (int trial = 0; trial < 10; ++trial) {
            FieldVector f = random_vector(ctx, 1234ull * static_cast<std::uint64_t>(m) +
                                                   static_cast<std::uint64_t>(trial));
            FieldVector want = naive_dft(ctx, f);
            for (const auto& plan : plans) {
                OpCounter counter;
                CHECK(execute(plan, f, counter) == want);
            }
        }
    }
}

TEST_CASE("counting formulas") {
    SECTION("irreducible polynomial counts") {
        long long want[] = {2, 1, 2, 3, 6, 9, 18, 30, 56, 99, 186, 335};
        for (int i = 1; i <= 12; ++i)
            CHECK(irreducible_count(i) == want[i - 1]);
    }

    SECTION("irreducible count matches the class census") {
        for (int m : {4, 8, 12}) {
            FieldCtx ctx(m);
            std::map<int, long long> census;
            for (const auto& cls : enumerate_classes(ctx))
                census[cls.cardinality]++;
            for (auto [d, cnt] : census) {
                long long expect = irreducible_count(d);
                if (d == 1)
                    expect -= 1; // exponent classes exclude the zero element
                CHECK(cnt == expect);
            }
        }
    }

    SECTION("total multiplications") {
        CHECK(total_mult_formula(1) == 0);
        CHECK(total_mult_formula(4) == 13);
        CHECK(total_mult_formula(6) == 88);
        CHECK(total_mult_formula(8) == 373);
        CHECK(total_mult_formula(12) == 8140);
        CHECK_THROWS_AS(total_mult_formula(10), UnsupportedDegree);
    }
}

TEST_CASE("circulant stage factorization holds") {
    for (int m : {2, 4, 6, 8}) {
        FieldCtx ctx(m);
        CHECK(verify_eq11(ctx));
    }
    FieldCtx odd(3);
    CHECK_THROWS_AS(verify_eq11(odd), OddExtensionDegree);
}

TEST_CASE("naive plan variant") {
    FieldCtx ctx(3);
    DftPlan plan = naive_plan(ctx);
    FieldVector f = random_vector(ctx, 5);
    OpCounter counter;
    CHECK(execute(plan, f, counter) == naive_dft(ctx, f));
    CHECK(counter.mults == plan.static_mults);
    CHECK(counter.field_adds == plan.static_field_adds);
}
