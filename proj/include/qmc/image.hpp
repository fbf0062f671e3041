// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace qmc {

/// Grayscale image with one scalar per pixel, row-major.
struct ImageBuffer {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<float> values;

    float& at(std::uint32_t x, std::uint32_t y) { return values[y * static_cast<std::size_t>(width) + x]; }
    float at(std::uint32_t x, std::uint32_t y) const
    {
        return values[y * static_cast<std::size_t>(width) + x];
    }
};

ImageBuffer make_image(std::uint32_t width, std::uint32_t height);

/// P5, maxval 255. Values clamp to [0, 1] and round half up, so the bytes
/// are deterministic.
void write_pgm(const ImageBuffer& image, std::ostream& out);

/// P6 with the gray value replicated to RGB.
void write_ppm(const ImageBuffer& image, std::ostream& out);

/// FNV-1a over a byte string; used for golden checksums of serialized
/// output.
std::uint64_t fnv1a64(const void* data, std::size_t size);

} // namespace qmc
