// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "gf.hpp"

namespace gfdft {

/// SplitMix64 step; the fixed PRNG for seeded test vectors so that runs
/// are reproducible bit for bit across implementations.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9e3779b97f4a7c15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
}

/// Length-n vector with element i = low m bits of the i-th SplitMix64
/// output for the given seed.
inline FieldVector random_vector(const FieldCtx& ctx, std::uint64_t seed) {
    std::uint64_t state = seed;
    FieldVector v(ctx.n());
    std::uint32_t mask = (ctx.m() == 32) ? ~0u : ((1u << ctx.m()) - 1u);
    for (auto& e : v)
        e = {static_cast<std::uint32_t>(splitmix64(state)) & mask};
    return v;
}

} // namespace gfdft
