// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#include "qmc/image.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

namespace qmc {

ImageBuffer make_image(std::uint32_t width, std::uint32_t height)
{
    if (width == 0 || height == 0)
        throw std::invalid_argument("make_image: image must be at least 1x1");
    ImageBuffer image;
    image.width = width;
    image.height = height;
    image.values.assign(static_cast<std::size_t>(width) * height, 0.0f);
    return image;
}

namespace {

unsigned char quantize(float v)
{
    const float clamped = std::clamp(v, 0.0f, 1.0f);
    return static_cast<unsigned char>(
        std::min(255, static_cast<int>(clamped * 255.0f + 0.5f)));
}

} // namespace

void write_pgm(const ImageBuffer& image, std::ostream& out)
{
    out << "P5\n" << image.width << " " << image.height << "\n255\n";
    for (float v : image.values) {
        const char byte = static_cast<char>(quantize(v));
        out.write(&byte, 1);
    }
}

void write_ppm(const ImageBuffer& image, std::ostream& out)
{
    out << "P6\n" << image.width << " " << image.height << "\n255\n";
    for (float v : image.values) {
        const char byte = static_cast<char>(quantize(v));
        out.write(&byte, 1);
        out.write(&byte, 1);
        out.write(&byte, 1);
    }
}

std::uint64_t fnv1a64(const void* data, std::size_t size)
{
    const auto* bytes = static_cast<const unsigned char*>(data);
    std::uint64_t hash = 0xcbf29ce484222325ull;
    for (std::size_t i = 0; i < size; ++i) {
        hash ^= bytes[i];
        hash *= 0x100000001b3ull;
    }
    return hash;
}

} // namespace qmc
