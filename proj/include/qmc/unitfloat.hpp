// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include <bit>
#include <cstdint>

namespace qmc {

/// Number of leading zero bits of v; defined as 32 for v == 0 so the helper
/// is total. Callers that feed sampler state never reach the zero case.
inline std::uint32_t count_leading_zeros32(std::uint32_t v)
{
    return static_cast<std::uint32_t>(std::countl_zero(v));
}

/// Mirrors the bits of a word: bit k of the result is bit 31-k of v.
/// An involution.
inline std::uint32_t bit_reverse32(std::uint32_t v)
{
    v = (v << 16) | (v >> 16);
    v = ((v & 0x00ff00ffu) << 8) | ((v & 0xff00ff00u) >> 8);
    v = ((v & 0x0f0f0f0fu) << 4) | ((v & 0xf0f0f0f0u) >> 4);
    v = ((v & 0x33333333u) << 2) | ((v & 0xccccccccu) >> 2);
    v = ((v & 0x55555555u) << 1) | ((v & 0xaaaaaaaau) >> 1);
    return v;
}

/// Maps the fixed-point fraction u * 2^-32 to the nearest binary32 value in
/// the right-open interval [0, 1). Never returns 1.0f: the overflow case is
/// clamped to the largest binary32 below one. Ties on the 9 shifted-out
/// mantissa bits round toward zero. Monotone non-decreasing in u.
inline float map_u32_to_unifloat(std::uint32_t u)
{
    if (u == 0)
        return 0.0f; // snap to 0
    if (u == 1u)
        return std::bit_cast<float>((126u - 31u) << 23); // 2^-32
    const std::uint32_t z = count_leading_zeros32(u); // z <= 30 here
    const std::uint32_t e = 126u - z;                 // biased exponent
    const std::uint32_t w = u << (z + 1u); // fraction bits, left-aligned;
                                           // the leading set bit is dropped
    std::uint32_t bits = (e << 23) | (w >> 9);
    if ((w & 0x1ffu) > 0x100u)
        ++bits; // round up; a mantissa carry bumps the exponent field
    if (bits >= 0x3f800000u)
        bits = 0x3f7fffffu; // largest binary32 < 1
    return std::bit_cast<float>(bits);
}

} // namespace qmc
