// SPDX-License-Identifier: Apache-2.0
#include <catch2/catch_amalgamated.hpp>

#include <map>
#include <set>

#include "gfdft/conjugacy.hpp"

using namespace gfdft;

TEST_CASE("class enumeration") {
    SECTION("m=4 partition") {
        FieldCtx ctx(4);
        auto classes = enumerate_classes(ctx);
        REQUIRE(classes.size() == 5);
        CHECK(classes[0].members == std::vector<std::uint32_t>{0});
        CHECK(classes[1].members == std::vector<std::uint32_t>{1, 2, 4, 8});
        CHECK(classes[2].members == std::vector<std::uint32_t>{3, 6, 12, 9});
        CHECK(classes[3].members == std::vector<std::uint32_t>{7, 14, 13, 11});
        CHECK(classes[4].members == std::vector<std::uint32_t>{5, 10});
    }

    SECTION("m=2") {
        FieldCtx ctx(2);
        auto classes = enumerate_classes(ctx);
        REQUIRE(classes.size() == 2);
        CHECK(classes[0].members == std::vector<std::uint32_t>{0});
        CHECK(classes[1].members == std::vector<std::uint32_t>{1, 2});
    }

    SECTION("m=6 cardinality census") {
        FieldCtx ctx(6);
        auto classes = enumerate_classes(ctx);
        CHECK(classes.size() == 13);
        std::map<int, int> census;
        std::size_t total = 0;
        for (const auto& cls : classes) {
            census[cls.cardinality]++;
            total += cls.members.size();
        }
        CHECK(total == 63);
        CHECK(census == std::map<int, int>{{1, 1}, {2, 1}, {3, 2}, {6, 9}});
    }

    SECTION("partition properties") {
        for (int m : {3, 5, 8}) {
            FieldCtx ctx(m);
            auto classes = enumerate_classes(ctx);
            std::set<std::uint32_t> seen;
            for (const auto& cls : classes) {
                CHECK(m % cls.cardinality == 0);
                CHECK(cls.c == *std::min_element(cls.members.begin(), cls.members.end()));
                for (auto mem : cls.members)
                    CHECK(seen.insert(mem).second);
            }
            CHECK(seen.size() == ctx.n());
        }
    }
}

TEST_CASE("special class") {
    SECTION("m=4 picks c=1") {
        FieldCtx ctx(4);
        CHECK(find_special_class(ctx).c == 1);
    }
    SECTION("m=2 picks c=1") {
        FieldCtx ctx(2);
        CHECK(find_special_class(ctx).c == 1);
    }
    SECTION("exists for every even m up to 16, with the conjugate shift at every level") {
        for (int m = 2; m <= 16; m += 2) {
            FieldCtx ctx(m);
            auto sp = find_special_class(ctx);
            CHECK(sp.cardinality == m);
            for (int i = 0; i < m / 2; ++i) {
                FieldElement ei = ctx.from_exp(sp.members[static_cast<std::size_t>(i)]);
                FieldElement eshift = ctx.from_exp(sp.members[static_cast<std::size_t>(m / 2 + i)]);
                CHECK(ei == ctx.add(eshift, ctx.one()));
            }
        }
    }
    SECTION("odd m refuses") {
        FieldCtx ctx(3);
        CHECK_THROWS_AS(find_special_class(ctx), OddExtensionDegree);
    }
}

TEST_CASE("normal bases") {
    FieldCtx ctx(4);

    SECTION("paper bases are valid") {
        // full field basis (a^6, a^12, a^9, a^3)
        BasisSpec b4 = normal_basis_from(ctx, ctx.from_exp(6), 4);
        CHECK(b4.vectors == FieldVector{ctx.from_exp(6), ctx.from_exp(12), ctx.from_exp(9),
                                        ctx.from_exp(3)});
        // (a^5, a^10) for GF(4), (a^0) for GF(2)
        BasisSpec b2 = normal_basis_from(ctx, ctx.from_exp(5), 2);
        CHECK(b2.vectors == FieldVector{ctx.from_exp(5), ctx.from_exp(10)});
        BasisSpec b1 = normal_basis_from(ctx, ctx.one(), 1);
        CHECK(b1.vectors == FieldVector{ctx.one()});
    }

    SECTION("dependent conjugates rejected") {
        CHECK_THROWS_AS(normal_basis_from(ctx, ctx.from_exp(1), 4), SingularBasis);
        CHECK_THROWS_AS(normal_basis_from(ctx, ctx.one(), 2), SingularBasis);
    }

    SECTION("search returns the smallest qualifying generator") {
        CHECK(find_normal_basis(ctx, 1).generator == ctx.one());
        CHECK(find_normal_basis(ctx, 2).generator == ctx.from_exp(5));
        CHECK(find_normal_basis(ctx, 4).generator == ctx.from_exp(3));
        for (int m : {2, 3, 4, 6, 8, 12}) {
            FieldCtx f(m);
            for (int d = 1; d <= m; ++d)
                if (m % d == 0)
                    CHECK(find_normal_basis(f, d).degree == d);
        }
        CHECK_THROWS_AS(find_normal_basis(ctx, 3), DegreeNotDivisor);
    }
}

TEST_CASE("basis transformation matrices against the printed values") {
    FieldCtx ctx(4);
    BasisSpec b4 = normal_basis_from(ctx, ctx.from_exp(6), 4);
    BasisSpec b2 = normal_basis_from(ctx, ctx.from_exp(5), 2);

    BinMatrix m1t = basis_transform_matrix(ctx, class_of_exponent(ctx, 1), b4).transpose();
    CHECK(m1t == BinMatrix::from_bit_strings({"1010", "1000", "1100", "1111"}));

    BinMatrix m2t = basis_transform_matrix(ctx, class_of_exponent(ctx, 3), b4).transpose();
    CHECK(m2t == BinMatrix::from_bit_strings({"1010", "1000", "1001", "1100"}));

    BinMatrix m4t = basis_transform_matrix(ctx, class_of_exponent(ctx, 5), b2).transpose();
    CHECK(m4t == BinMatrix::from_bit_strings({"11", "10"}));
}

TEST_CASE("defining relation of the basis transformation") {
    // row j of M_k gives the normal-basis coordinates of (alpha^c)^j
    for (int m : {4, 6, 8}) {
        FieldCtx ctx(m);
        for (const auto& cls : enumerate_classes(ctx)) {
            BasisSpec basis = find_normal_basis(ctx, cls.cardinality);
            BinMatrix mk = basis_transform_matrix(ctx, cls, basis);
            FieldElement gen = ctx.from_exp(cls.c);
            FieldElement p = ctx.one();
            for (int j = 0; j < cls.cardinality; ++j) {
                FieldElement rhs{};
                for (int s = 0; s < cls.cardinality; ++s)
                    if (mk.get(static_cast<std::size_t>(j), static_cast<std::size_t>(s)))
                        rhs = ctx.add(rhs, basis.vectors[static_cast<std::size_t>(s)]);
                CHECK(rhs == p);
                p = ctx.mul(p, gen);
            }
        }
    }
}

TEST_CASE("moore-vandermonde and basis circulant golden values") {
    FieldCtx ctx(4);
    auto classes = enumerate_classes(ctx);

    FieldMatrix v1 = moore_vandermonde(ctx, classes[1]);
    FieldMatrix v1_expect(4, 4);
    int v1_exps[4][4] = {{0, 1, 2, 3}, {0, 2, 4, 6}, {0, 4, 8, 12}, {0, 8, 1, 9}};
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            v1_expect.at(i, j) = ctx.from_exp(v1_exps[i][j]);
    CHECK(v1 == v1_expect);

    FieldMatrix v0 = moore_vandermonde(ctx, classes[0]);
    CHECK(v0 == FieldMatrix::identity(1));

    FieldMatrix v4 = moore_vandermonde(ctx, class_of_exponent(ctx, 5));
    FieldMatrix v4_expect(2, 2);
    v4_expect.at(0, 0) = v4_expect.at(1, 0) = ctx.one();
    v4_expect.at(0, 1) = ctx.from_exp(5);
    v4_expect.at(1, 1) = ctx.from_exp(10);
    CHECK(v4 == v4_expect);

    BasisSpec b2 = normal_basis_from(ctx, ctx.from_exp(5), 2);
    FieldMatrix l4 = basis_circulant(b2);
    FieldMatrix l4_expect(2, 2);
    l4_expect.at(0, 0) = l4_expect.at(1, 1) = ctx.from_exp(5);
    l4_expect.at(0, 1) = l4_expect.at(1, 0) = ctx.from_exp(10);
    CHECK(l4 == l4_expect);

    BasisSpec b4 = normal_basis_from(ctx, ctx.from_exp(6), 4);
    FieldMatrix l1 = basis_circulant(b4);
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            CHECK(l1.at(i, j) == b4.vectors[(i + j) % 4]);
}

TEST_CASE("circulants are symmetric") {
    for (int m : {4, 6, 8, 12}) {
        FieldCtx ctx(m);
        for (int d = 1; d <= m; ++d) {
            if (m % d != 0)
                continue;
            FieldMatrix l = basis_circulant(find_normal_basis(ctx, d));
            CHECK(l.transpose() == l);
        }
    }
}

TEST_CASE("basis transform links circulant and moore-vandermonde") {
    // V_k^T = M_k L_k, and the cross-class relation V_j = V_k (M_k^T)^{-1} M_j^T
    for (int m : {2, 4, 6, 8, 12}) {
        FieldCtx ctx(m);
        auto classes = enumerate_classes(ctx);
        std::map<int, BasisSpec> bases;
        std::map<int, const ConjugacyClass*> first_of;
        for (const auto& cls : classes) {
            if (!bases.count(cls.cardinality))
                bases.emplace(cls.cardinality, find_normal_basis(ctx, cls.cardinality));
            const BasisSpec& basis = bases.at(cls.cardinality);
            BinMatrix mk = basis_transform_matrix(ctx, cls, basis);
            FieldMatrix vk = moore_vandermonde(ctx, cls);
            FieldMatrix lk = basis_circulant(basis);
            CHECK(vk.transpose() == FieldMatrix::from_bin(mk).mul(ctx, lk));

            auto [it, fresh] = first_of.emplace(cls.cardinality, &cls);
            if (!fresh) {
                const ConjugacyClass& ref = *it->second;
                BinMatrix mref_t = basis_transform_matrix(ctx, ref, basis).transpose();
                BinMatrix bridge = mref_t.invert().mul(mk.transpose());
                FieldMatrix vref = moore_vandermonde(ctx, ref);
                CHECK(vk == vref.mul(ctx, FieldMatrix::from_bin(bridge)));
            }
        }
    }
}
