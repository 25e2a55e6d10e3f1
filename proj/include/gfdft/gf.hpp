// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "errors.hpp"

namespace gfdft {

/// An element of GF(2^m) in polynomial-basis coordinates: bit i of `bits`
/// is the coefficient of alpha^i.  Only meaningful together with the
/// FieldCtx it was created in.
struct FieldElement {
    std::uint32_t bits = 0;

    friend bool operator==(FieldElement, FieldElement) = default;
};

/// Arithmetic context for GF(2^m), 1 <= m <= 16, with exp/log tables over
/// a primitive modulus.  Immutable after construction; all operations are
/// pure, so a context can be shared read-only across threads.
class FieldCtx {
  public:
    /// Default primitive polynomial of degree m, as a bit mask
    /// (bit i = coefficient of x^i).
    static std::uint32_t default_modulus(int m) {
        // clang-format off
        static constexpr std::uint32_t table[17] = {
            0,
            0x3,     // x+1
            0x7,     // x^2+x+1
            0xb,     // x^3+x+1
            0x13,    // x^4+x+1
            0x25,    // x^5+x^2+1
            0x43,    // x^6+x+1
            0x89,    // x^7+x^3+1
            0x11d,   // x^8+x^4+x^3+x^2+1
            0x211,   // x^9+x^4+1
            0x409,   // x^10+x^3+1
            0x805,   // x^11+x^2+1
            0x1053,  // x^12+x^6+x^4+x+1
            0x201b,  // x^13+x^4+x^3+x+1
            0x4443,  // x^14+x^10+x^6+x+1
            0x8003,  // x^15+x+1
            0x1100b, // x^16+x^12+x^3+x+1
        };
        // clang-format on
        if (m < 1 || m > 16)
            throw DegreeOutOfRange("extension degree must be in [1,16], got " + std::to_string(m));
        return table[m];
    }

    explicit FieldCtx(int m, std::uint32_t modulus = 0) {
        if (m < 1 || m > 16)
            throw DegreeOutOfRange("extension degree must be in [1,16], got " + std::to_string(m));
        if (modulus == 0)
            modulus = default_modulus(m);
        if (bit_degree(modulus) != m)
            throw NonPrimitiveModulus("modulus degree " + std::to_string(bit_degree(modulus)) +
                                      " does not match m=" + std::to_string(m));
        m_ = m;
        n_ = (1u << m) - 1u;
        modulus_ = modulus;
        exp_.assign(n_, 0);
        log_.assign(std::size_t(1) << m, -1);
        // x must generate the full multiplicative group: the walk
        // e -> x*e mod modulus visits all n nonzero elements exactly once.
        std::uint32_t e = 1;
        for (std::uint32_t i = 0; i < n_; ++i) {
            if (log_[e] >= 0)
                throw NonPrimitiveModulus("modulus is not primitive: period " + std::to_string(i) +
                                          " < " + std::to_string(n_));
            exp_[i] = e;
            log_[e] = static_cast<std::int32_t>(i);
            e = mulx(e);
        }
        if (e != 1)
            throw NonPrimitiveModulus("modulus is not irreducible over GF(2)");
    }

    int m() const { return m_; }
    std::uint32_t n() const { return n_; }
    std::uint32_t modulus_bits() const { return modulus_; }

    FieldElement zero() const { return {}; }
    FieldElement one() const { return {1}; }

    bool is_zero(FieldElement a) const { return a.bits == 0; }
    bool is_one(FieldElement a) const { return a.bits == 1; }

    /// alpha^e, with e taken mod n (negative exponents allowed).
    FieldElement from_exp(long long e) const {
        long long r = e % static_cast<long long>(n_);
        if (r < 0)
            r += n_;
        return {exp_[static_cast<std::size_t>(r)]};
    }

    /// Discrete log of a nonzero element.
    std::uint32_t log_of(FieldElement a) const {
        if (a.bits == 0)
            throw ZeroElement("log of zero");
        return static_cast<std::uint32_t>(log_[a.bits]);
    }

    FieldElement add(FieldElement a, FieldElement b) const { return {a.bits ^ b.bits}; }

    FieldElement mul(FieldElement a, FieldElement b) const {
        if (a.bits == 0 || b.bits == 0)
            return {};
        std::uint32_t s = static_cast<std::uint32_t>(log_[a.bits]) + static_cast<std::uint32_t>(log_[b.bits]);
        if (s >= n_)
            s -= n_;
        return {exp_[s]};
    }

    FieldElement inv(FieldElement a) const {
        if (a.bits == 0)
            throw ZeroElement("inverse of zero");
        std::uint32_t e = static_cast<std::uint32_t>(log_[a.bits]);
        return {exp_[(n_ - e) % n_]};
    }

    /// a^k for k >= 0 (a^0 = 1, including a = 0).
    FieldElement pow(FieldElement a, unsigned long long k) const {
        if (k == 0)
            return one();
        if (a.bits == 0)
            return {};
        unsigned long long e = (static_cast<unsigned long long>(log_[a.bits]) % n_) * (k % n_);
        // log*k can exceed 64-bit range only for n close to 2^16 and huge k;
        // both factors are reduced mod n first, so the product fits.
        return from_exp(static_cast<long long>(e % n_));
    }

    /// Frobenius power a^(2^i).
    FieldElement frobenius(FieldElement a, int i) const {
        if (a.bits == 0)
            return {};
        std::uint64_t e = static_cast<std::uint32_t>(log_[a.bits]);
        for (int k = 0; k < i; ++k)
            e = (2 * e) % n_;
        return {exp_[static_cast<std::size_t>(e)]};
    }

    /// True iff a lies in the subfield GF(2^d).  Requires d | m.
    bool in_subfield(FieldElement a, int d) const {
        if (d < 1 || m_ % d != 0)
            throw DegreeNotDivisor(std::to_string(d) + " does not divide m=" + std::to_string(m_));
        return frobenius(a, d) == a;
    }

    /// Reference multiplication: carry-less polynomial product reduced by
    /// the modulus.  Used to cross-check the table path.
    FieldElement mul_clmul(FieldElement a, FieldElement b) const {
        std::uint64_t acc = 0;
        for (int i = 0; i < m_; ++i)
            if (b.bits >> i & 1u)
                acc ^= static_cast<std::uint64_t>(a.bits) << i;
        for (int d = 2 * m_ - 2; d >= m_; --d)
            if (acc >> d & 1u)
                acc ^= static_cast<std::uint64_t>(modulus_) << (d - m_);
        return {static_cast<std::uint32_t>(acc)};
    }

    /// Element text form: `0 | 1 | a^<k>` with 0 <= k < n.
    std::string to_string(FieldElement a) const {
        if (a.bits == 0)
            return "0";
        if (a.bits == 1)
            return "1";
        return "a^" + std::to_string(log_[a.bits]);
    }

    FieldElement parse(const std::string& text) const {
        if (text == "0")
            return zero();
        if (text == "1")
            return one();
        if (text.size() >= 3 && text[0] == 'a' && text[1] == '^') {
            std::size_t pos = 0;
            unsigned long k = 0;
            try {
                k = std::stoul(text.substr(2), &pos);
            } catch (const std::exception&) {
                throw ParseError("bad element '" + text + "'");
            }
            if (pos != text.size() - 2 || k >= n_)
                throw ParseError("bad element '" + text + "': exponent must be in [0," +
                                 std::to_string(n_) + ")");
            return {exp_[k]};
        }
        throw ParseError("bad element '" + text + "': expected 0, 1 or a^<k>");
    }

  private:
    static int bit_degree(std::uint32_t bits) {
        int d = -1;
        for (int i = 0; i < 32; ++i)
            if (bits >> i & 1u)
                d = i;
        return d;
    }

    std::uint32_t mulx(std::uint32_t e) const {
        e <<= 1;
        if (e >> m_ & 1u)
            e ^= modulus_;
        return e;
    }

    int m_ = 0;
    std::uint32_t n_ = 0;
    std::uint32_t modulus_ = 0;
    std::vector<std::uint32_t> exp_;
    std::vector<std::int32_t> log_;
};

using FieldVector = std::vector<FieldElement>;

} // namespace gfdft
