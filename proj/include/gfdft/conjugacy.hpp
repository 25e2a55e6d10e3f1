// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "gf.hpp"
#include "matrix.hpp"
#include "poly.hpp"

namespace gfdft {

/// Binary conjugacy class of GF(2^m): the orbit of alpha^c under
/// squaring, listed as exponents c*2^i mod n.  The canonical
/// representative c is the smallest member.
struct ConjugacyClass {
    std::uint32_t c = 0;
    std::vector<std::uint32_t> members;
    int cardinality = 0;

    friend bool operator==(const ConjugacyClass&, const ConjugacyClass&) = default;
};

/// Orbit of e under doubling mod n, listed from e itself without
/// canonicalization: (e, 2e, 4e, ...).  Used where the row order of a
/// Moore-Vandermonde matrix is pinned to a specific root rather than the
/// class representative.
inline ConjugacyClass class_rooted_at(const FieldCtx& ctx, std::uint32_t e) {
    ConjugacyClass cls;
    std::uint64_t n = ctx.n();
    std::uint64_t cur = e % n;
    do {
        cls.members.push_back(static_cast<std::uint32_t>(cur));
        cur = (2 * cur) % n;
    } while (cur != e % n);
    cls.cardinality = static_cast<int>(cls.members.size());
    cls.c = cls.members.front();
    return cls;
}

/// Orbit of a single exponent under doubling mod n.
inline ConjugacyClass class_of_exponent(const FieldCtx& ctx, std::uint32_t e) {
    ConjugacyClass cls;
    std::uint64_t n = ctx.n();
    std::uint64_t cur = e % n;
    std::uint32_t smallest = static_cast<std::uint32_t>(cur);
    do {
        cls.members.push_back(static_cast<std::uint32_t>(cur));
        smallest = std::min(smallest, static_cast<std::uint32_t>(cur));
        cur = (2 * cur) % n;
    } while (cur != e % n);
    cls.cardinality = static_cast<int>(cls.members.size());
    // rotate so the canonical representative comes first
    while (cls.members.front() != smallest) {
        cls.members.push_back(cls.members.front());
        cls.members.erase(cls.members.begin());
    }
    cls.c = smallest;
    return cls;
}

/// Partition of the exponents [0, n) into binary conjugacy classes.
/// Classes are grouped by cardinality — groups ordered by their first
/// (smallest) representative, representatives ascending within a group —
/// so classes sharing one evaluation kernel sit in adjacent blocks.
/// For GF(2^4) this reads {0}, {1,..}, {3,..}, {7,..}, {5,10}.
inline std::vector<ConjugacyClass> enumerate_classes(const FieldCtx& ctx) {
    std::vector<bool> seen(ctx.n(), false);
    std::vector<ConjugacyClass> out;
    std::map<int, std::uint32_t> group_rep;
    for (std::uint32_t e = 0; e < ctx.n(); ++e) {
        if (seen[e])
            continue;
        ConjugacyClass cls = class_of_exponent(ctx, e);
        for (auto mem : cls.members)
            seen[mem] = true;
        group_rep.emplace(cls.cardinality, cls.c);
        out.push_back(std::move(cls));
    }
    std::stable_sort(out.begin(), out.end(), [&](const ConjugacyClass& a, const ConjugacyClass& b) {
        auto ka = std::make_pair(group_rep.at(a.cardinality), a.c);
        auto kb = std::make_pair(group_rep.at(b.cardinality), b.c);
        return ka < kb;
    });
    return out;
}

/// The cardinality-d class whose generator e satisfies e^(2^{d/2}) = e + 1,
/// smallest canonical representative first.  Exists for every even d
/// dividing m; the search is exhaustive over the class list.
inline ConjugacyClass find_special_class(const FieldCtx& ctx, int d) {
    if (d % 2 != 0)
        throw OddExtensionDegree("special class needs even cardinality, got " + std::to_string(d));
    if (d < 1 || ctx.m() % d != 0)
        throw DegreeNotDivisor(std::to_string(d) + " does not divide m=" + std::to_string(ctx.m()));
    for (const auto& cls : enumerate_classes(ctx)) {
        if (cls.cardinality != d)
            continue;
        FieldElement e = ctx.from_exp(cls.c);
        if (ctx.frobenius(e, d / 2) == ctx.add(e, ctx.one()))
            return cls;
    }
    throw Error("no special class of cardinality " + std::to_string(d) +
                "; the field tables are inconsistent");
}

inline ConjugacyClass find_special_class(const FieldCtx& ctx) {
    if (ctx.m() % 2 != 0)
        throw OddExtensionDegree("special class needs even m, got " + std::to_string(ctx.m()));
    return find_special_class(ctx, ctx.m());
}

enum class BasisKind { polynomial, normal };

/// An ordered basis of a subfield GF(2^d) over GF(2), as elements of the
/// ambient field.
struct BasisSpec {
    BasisKind kind = BasisKind::normal;
    FieldElement generator;
    int degree = 0;
    FieldVector vectors;
};

inline bool linearly_independent(const FieldVector& vs, int m) {
    BinMatrix rows(vs.size(), static_cast<std::size_t>(m));
    for (std::size_t i = 0; i < vs.size(); ++i)
        for (int b = 0; b < m; ++b)
            if (vs[i].bits >> b & 1u)
                rows.set(i, static_cast<std::size_t>(b), true);
    return rows.rank() == vs.size();
}

/// Normal basis (gamma, gamma^2, ..., gamma^{2^{d-1}}) from a given
/// generator; validates independence.
inline BasisSpec normal_basis_from(const FieldCtx& ctx, FieldElement gamma, int d) {
    BasisSpec basis;
    basis.kind = BasisKind::normal;
    basis.generator = gamma;
    basis.degree = d;
    for (int i = 0; i < d; ++i)
        basis.vectors.push_back(ctx.frobenius(gamma, i));
    if (!linearly_independent(basis.vectors, ctx.m()))
        throw SingularBasis("conjugates of " + ctx.to_string(gamma) + " are linearly dependent");
    return basis;
}

/// Exhaustive search for a normal basis of GF(2^d) inside GF(2^m): the
/// subfield elements are scanned in exponent order and the first
/// generator with independent conjugates wins.
inline BasisSpec find_normal_basis(const FieldCtx& ctx, int d) {
    if (d < 1 || ctx.m() % d != 0)
        throw DegreeNotDivisor(std::to_string(d) + " does not divide m=" + std::to_string(ctx.m()));
    std::uint64_t sub_n = (std::uint64_t(1) << d) - 1;
    std::uint64_t step = ctx.n() / sub_n;
    for (std::uint64_t j = 0; j < sub_n; ++j) {
        FieldElement gamma = ctx.from_exp(static_cast<long long>(step * j));
        FieldVector conj;
        for (int i = 0; i < d; ++i)
            conj.push_back(ctx.frobenius(gamma, i));
        if (linearly_independent(conj, ctx.m())) {
            BasisSpec basis;
            basis.kind = BasisKind::normal;
            basis.generator = gamma;
            basis.degree = d;
            basis.vectors = std::move(conj);
            return basis;
        }
    }
    throw Error("no normal basis found for GF(2^" + std::to_string(d) + ")");
}

/// GF(2)-linear solver for coordinates with respect to a fixed basis.
class BasisSolver {
  public:
    BasisSolver(const FieldCtx& ctx, const FieldVector& basis) : m_(ctx.m()) {
        ech_.assign(static_cast<std::size_t>(m_), {0, 0});
        for (std::size_t i = 0; i < basis.size(); ++i) {
            std::uint32_t v = basis[i].bits;
            std::uint32_t mask = std::uint32_t(1) << i;
            bool placed = false;
            while (v) {
                auto b = static_cast<std::size_t>(31 - std::countl_zero(v));
                if (ech_[b].first == 0) {
                    ech_[b] = {v, mask};
                    placed = true;
                    break;
                }
                v ^= ech_[b].first;
                mask ^= ech_[b].second;
            }
            if (!placed)
                throw SingularBasis("basis vectors are linearly dependent");
        }
    }

    /// Coordinates of e as a bit mask (bit i multiplies basis[i]);
    /// throws if e is outside the span.
    std::uint32_t solve(FieldElement e) const {
        std::uint32_t v = e.bits;
        std::uint32_t mask = 0;
        while (v) {
            auto b = static_cast<std::size_t>(31 - std::countl_zero(v));
            if (ech_[b].first == 0)
                throw SingularSystem("element is not in the span of the basis");
            v ^= ech_[b].first;
            mask ^= ech_[b].second;
        }
        return mask;
    }

  private:
    int m_;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ech_;
};

/// Basis transformation matrix M_k: row j holds the coordinates of
/// (alpha^c)^j with respect to the given normal basis, so that the
/// polynomial-basis column vector equals M_k times the normal-basis
/// column vector.  Binary and nonsingular.
inline BinMatrix basis_transform_matrix(const FieldCtx& ctx, const ConjugacyClass& cls,
                                        const BasisSpec& normal) {
    if (normal.degree != cls.cardinality)
        throw WrongCardinality("class cardinality " + std::to_string(cls.cardinality) +
                               " does not match basis degree " + std::to_string(normal.degree));
    int d = cls.cardinality;
    BasisSolver solver(ctx, normal.vectors);
    BinMatrix mk(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    FieldElement gen = ctx.from_exp(cls.c);
    FieldElement p = ctx.one();
    for (int j = 0; j < d; ++j) {
        std::uint32_t coords = solver.solve(p);
        for (int s = 0; s < d; ++s)
            if (coords >> s & 1u)
                mk.set(static_cast<std::size_t>(j), static_cast<std::size_t>(s), true);
        p = ctx.mul(p, gen);
    }
    if (mk.rank() != static_cast<std::size_t>(d))
        throw SingularBasis("basis transformation matrix is singular");
    return mk;
}

/// Moore-Vandermonde matrix of a class: entry (i, j) = alpha^{c j 2^i}.
inline FieldMatrix moore_vandermonde(const FieldCtx& ctx, const ConjugacyClass& cls) {
    int d = cls.cardinality;
    FieldMatrix v(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            std::uint64_t e = (static_cast<std::uint64_t>(cls.c) * static_cast<std::uint64_t>(j)) % ctx.n();
            for (int k = 0; k < i; ++k)
                e = (2 * e) % ctx.n();
            v.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                ctx.from_exp(static_cast<long long>(e));
        }
    return v;
}

/// Basis circulant of a normal basis: entry (i, j) = gamma^{2^{(i+j) mod d}}.
/// Symmetric by construction.
inline FieldMatrix basis_circulant(const BasisSpec& normal) {
    int d = normal.degree;
    FieldMatrix l(static_cast<std::size_t>(d), static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            l.at(static_cast<std::size_t>(i), static_cast<std::size_t>(j)) =
                normal.vectors[static_cast<std::size_t>((i + j) % d)];
    return l;
}

} // namespace gfdft
