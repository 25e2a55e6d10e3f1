// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "gf.hpp"

namespace gfdft {

/// Polynomial over GF(2), coefficient bits packed into a word
/// (bit i = coefficient of x^i).  The zero polynomial is bits == 0.
struct BinPoly {
    std::uint64_t bits = 0;

    friend bool operator==(BinPoly, BinPoly) = default;

    bool is_zero() const { return bits == 0; }

    int degree() const {
        if (bits == 0)
            return -1;
        int d = 0;
        for (std::uint64_t b = bits; b >> 1; b >>= 1)
            ++d;
        return d;
    }

    bool coeff(int i) const { return bits >> i & 1u; }

    std::string to_string() const {
        if (bits == 0)
            return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            if (!coeff(i))
                continue;
            if (!s.empty())
                s += "+";
            if (i == 0)
                s += "1";
            else if (i == 1)
                s += "x";
            else
                s += "x^" + std::to_string(i);
        }
        return s;
    }

    /// Parses the text form produced by to_string, e.g. "x^4+x+1".
    static BinPoly parse(const std::string& text) {
        if (text == "0")
            return {};
        BinPoly p;
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t next = text.find('+', pos);
            std::string term = text.substr(pos, next == std::string::npos ? next : next - pos);
            int deg = 0;
            if (term == "1")
                deg = 0;
            else if (term == "x")
                deg = 1;
            else if (term.size() > 2 && term[0] == 'x' && term[1] == '^') {
                try {
                    std::size_t used = 0;
                    deg = std::stoi(term.substr(2), &used);
                    if (used != term.size() - 2 || deg < 0 || deg > 63)
                        throw ParseError("bad term '" + term + "'");
                } catch (const ParseError&) {
                    throw;
                } catch (const std::exception&) {
                    throw ParseError("bad term '" + term + "'");
                }
            } else {
                throw ParseError("bad term '" + term + "' in polynomial '" + text + "'");
            }
            if (p.coeff(deg))
                throw ParseError("repeated term in polynomial '" + text + "'");
            p.bits |= std::uint64_t(1) << deg;
            pos = next == std::string::npos ? text.size() : next + 1;
        }
        return p;
    }
};

/// Polynomial with coefficients in GF(2^m), ascending degree order,
/// trimmed so that the leading stored coefficient is nonzero.
class FieldPoly {
  public:
    FieldPoly() = default;
    explicit FieldPoly(FieldVector coeffs) : c_(std::move(coeffs)) { trim(); }

    static FieldPoly from_bin(const BinPoly& p) {
        FieldVector c;
        for (int i = 0; i <= p.degree(); ++i)
            c.push_back({p.coeff(i) ? 1u : 0u});
        return FieldPoly(std::move(c));
    }

    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }

    FieldElement coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(c_.size()))
            return {};
        return c_[static_cast<std::size_t>(i)];
    }

    const FieldVector& coeffs() const { return c_; }

    FieldElement eval(const FieldCtx& ctx, FieldElement x) const {
        FieldElement acc{};
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = ctx.add(ctx.mul(acc, x), c_[i]);
        return acc;
    }

    FieldPoly add(const FieldPoly& other) const {
        FieldVector c(std::max(c_.size(), other.c_.size()));
        for (std::size_t i = 0; i < c.size(); ++i)
            c[i] = {coeff(static_cast<int>(i)).bits ^ other.coeff(static_cast<int>(i)).bits};
        return FieldPoly(std::move(c));
    }

    FieldPoly mul(const FieldCtx& ctx, const FieldPoly& other) const {
        if (is_zero() || other.is_zero())
            return {};
        FieldVector c(c_.size() + other.c_.size() - 1);
        for (std::size_t i = 0; i < c_.size(); ++i)
            for (std::size_t j = 0; j < other.c_.size(); ++j)
                c[i + j] = ctx.add(c[i + j], ctx.mul(c_[i], other.c_[j]));
        return FieldPoly(std::move(c));
    }

    /// All coefficients in {0,1}?
    bool is_binary() const {
        for (auto e : c_)
            if (e.bits > 1)
                return false;
        return true;
    }

    BinPoly to_bin() const {
        BinPoly p;
        for (std::size_t i = 0; i < c_.size(); ++i) {
            if (c_[i].bits > 1)
                throw Error("polynomial has coefficients outside GF(2): " + std::to_string(c_[i].bits));
            if (c_[i].bits)
                p.bits |= std::uint64_t(1) << i;
        }
        return p;
    }

    std::string to_string(const FieldCtx& ctx) const {
        if (is_zero())
            return "0";
        std::string s;
        for (int i = degree(); i >= 0; --i) {
            FieldElement e = coeff(i);
            if (ctx.is_zero(e))
                continue;
            if (!s.empty())
                s += "+";
            std::string mono = i == 0 ? "" : (i == 1 ? "x" : "x^" + std::to_string(i));
            if (ctx.is_one(e))
                s += mono.empty() ? "1" : mono;
            else
                s += ctx.to_string(e) + (mono.empty() ? "" : "*" + mono);
        }
        return s;
    }

    friend bool operator==(const FieldPoly&, const FieldPoly&) = default;

  private:
    void trim() {
        while (!c_.empty() && c_.back().bits == 0)
            c_.pop_back();
    }

    FieldVector c_;
};

/// Long division: num = den*q + r with deg r < deg den.
inline std::pair<FieldPoly, FieldPoly> divmod(const FieldCtx& ctx, const FieldPoly& num,
                                              const FieldPoly& den) {
    if (den.is_zero())
        throw DivisionByZeroPoly("polynomial division by zero");
    FieldVector rem(num.coeffs());
    int dd = den.degree();
    FieldElement lead_inv = ctx.inv(den.coeff(dd));
    FieldVector q;
    if (num.degree() >= dd)
        q.assign(static_cast<std::size_t>(num.degree() - dd) + 1, {});
    for (int i = num.degree(); i >= dd; --i) {
        FieldElement f = ctx.mul(rem[static_cast<std::size_t>(i)], lead_inv);
        if (f.bits == 0)
            continue;
        q[static_cast<std::size_t>(i - dd)] = f;
        for (int j = 0; j <= dd; ++j)
            rem[static_cast<std::size_t>(i - dd + j)] =
                ctx.add(rem[static_cast<std::size_t>(i - dd + j)], ctx.mul(f, den.coeff(j)));
    }
    return {FieldPoly(std::move(q)), FieldPoly(std::move(rem))};
}

/// Binary conjugacy orbit of e: (e, e^2, e^4, ...) until it closes.
inline FieldVector frobenius_orbit(const FieldCtx& ctx, FieldElement e) {
    FieldVector orbit{e};
    for (FieldElement x = ctx.frobenius(e, 1); !(x == e); x = ctx.frobenius(x, 1))
        orbit.push_back(x);
    return orbit;
}

/// Minimal polynomial of e over GF(2): the monic product of (x - s) over
/// the binary conjugacy orbit of e.
inline BinPoly minimal_poly_gf2(const FieldCtx& ctx, FieldElement e) {
    if (e.bits == 0)
        throw ZeroElement("minimal polynomial of zero");
    FieldPoly acc(FieldVector{ctx.one()});
    for (FieldElement s : frobenius_orbit(ctx, e))
        acc = acc.mul(ctx, FieldPoly(FieldVector{s, ctx.one()}));
    return acc.to_bin();
}

/// Minimal polynomial of e over the half-degree subfield GF(2^{m/2}):
/// the quadratic (x - e)(x - e^{2^{m/2}}).  Requires even m and a full
/// cardinality-m conjugacy orbit, so that both coefficients land in
/// GF(2^{m/2}).
inline FieldPoly minimal_poly_subfield(const FieldCtx& ctx, FieldElement e) {
    if (ctx.m() % 2 != 0)
        throw OddDegree("subfield minimal polynomial needs even m, got m=" + std::to_string(ctx.m()));
    if (e.bits == 0)
        throw ZeroElement("minimal polynomial of zero");
    if (static_cast<int>(frobenius_orbit(ctx, e).size()) != ctx.m())
        throw WrongCardinality("element does not generate a cardinality-m conjugacy class");
    int half = ctx.m() / 2;
    FieldElement conj = ctx.frobenius(e, half);
    FieldElement mid = ctx.add(e, conj);
    FieldElement cst = ctx.mul(e, conj);
    if (!ctx.in_subfield(mid, half) || !ctx.in_subfield(cst, half))
        throw Error("quadratic coefficients escaped the subfield");
    return FieldPoly(FieldVector{cst, mid, ctx.one()});
}

} // namespace gfdft
