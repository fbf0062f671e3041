// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>

namespace qmc {

/// Pixel position on an image covered by a Hilbert curve of the given
/// order: the curve fills the 2^order x 2^order grid.
struct PixelCoord {
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint32_t order = 0;
};

namespace detail {

inline void hilbert_rotate(std::uint32_t n, std::uint32_t& x, std::uint32_t& y, std::uint32_t rx,
                           std::uint32_t ry)
{
    if (ry == 0) {
        if (rx == 1) {
            x = n - 1 - x;
            y = n - 1 - y;
        }
        std::swap(x, y);
    }
}

} // namespace detail

/// Curve index of a pixel; a bijection [0, 2^order)^2 -> [0, 4^order) whose
/// consecutive indices are 4-neighbor adjacent pixels. Orientation is fixed:
/// at order 1 the visit sequence is (0,0), (0,1), (1,1), (1,0).
inline std::uint64_t hilbert_index(const PixelCoord& p)
{
    if (p.order == 0 || p.order > 31)
        throw std::invalid_argument("hilbert_index: order must be in [1, 31]");
    const std::uint32_t n = 1u << p.order;
    if (p.x >= n || p.y >= n)
        throw std::out_of_range("hilbert_index: pixel outside the 2^order grid");
    std::uint32_t x = p.x;
    std::uint32_t y = p.y;
    std::uint64_t d = 0;
    for (std::uint32_t s = n >> 1; s > 0; s >>= 1) {
        const std::uint32_t rx = (x & s) ? 1u : 0u;
        const std::uint32_t ry = (y & s) ? 1u : 0u;
        d += static_cast<std::uint64_t>(s) * s * ((3u * rx) ^ ry);
        detail::hilbert_rotate(n, x, y, rx, ry);
    }
    return d;
}

/// Inverse of hilbert_index for the same orientation.
inline PixelCoord hilbert_xy(std::uint64_t d, std::uint32_t order)
{
    if (order == 0 || order > 31)
        throw std::invalid_argument("hilbert_xy: order must be in [1, 31]");
    if (d >= (1ull << (2 * order)))
        throw std::out_of_range("hilbert_xy: index beyond 4^order");
    const std::uint32_t n = 1u << order;
    std::uint32_t x = 0;
    std::uint32_t y = 0;
    std::uint64_t t = d;
    for (std::uint32_t s = 1; s < n; s <<= 1) {
        const std::uint32_t rx = 1u & static_cast<std::uint32_t>(t >> 1);
        const std::uint32_t ry = 1u & static_cast<std::uint32_t>(t ^ rx);
        detail::hilbert_rotate(s, x, y, rx, ry);
        x += s * rx;
        y += s * ry;
        t >>= 2;
    }
    return PixelCoord{x, y, order};
}

} // namespace qmc
