// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#include "qmc/imageplane.hpp"

#include "qmc/errors.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <random>
#include <stdexcept>

namespace qmc {

std::uint32_t hilbert_phi3_fixed(const PixelCoord& p)
{
    const std::uint64_t h = hilbert_index(p);
    return radical_inverse_tabled_fixed(static_cast<std::uint32_t>(h), 3,
                                        base3_four_digit_table());
}

float pixel_shifted_lattice_component(std::uint32_t i, std::uint32_t j, const PixelCoord& p,
                                      const GeneratorVector& g)
{
    if (j >= g.dims())
        throw std::out_of_range("pixel_shifted_lattice_component: dimension beyond the vector");
    return map_u32_to_unifloat(
        pixel_shifted_lattice_component_fixed(i, j, hilbert_phi3_fixed(p), g));
}

std::vector<float> halton_along_hilbert_sample(std::uint32_t i, const PixelCoord& p,
                                               std::uint32_t spp, std::uint32_t dims)
{
    if (spp == 0)
        throw std::invalid_argument("halton_along_hilbert_sample: spp must be >= 1");
    if (i >= spp)
        throw std::out_of_range("halton_along_hilbert_sample: sample index must be < spp");
    const std::uint64_t global = hilbert_index(p) * spp + i;
    return halton_point(static_cast<std::uint32_t>(global), dims);
}

std::uint64_t digit_reverse(std::uint64_t v, std::uint32_t base, std::uint32_t digits)
{
    std::uint64_t r = 0;
    for (std::uint32_t k = 0; k < digits; ++k) {
        r = r * base + v % base;
        v /= base;
    }
    return r;
}

namespace {

void extended_gcd(std::uint64_t a, std::uint64_t b, std::int64_t& x, std::int64_t& y)
{
    if (b == 0) {
        x = 1;
        y = 0;
        return;
    }
    std::int64_t xp = 0, yp = 0;
    extended_gcd(b, a % b, xp, yp);
    x = yp;
    y = xp - static_cast<std::int64_t>(a / b) * yp;
}

std::uint64_t multiplicative_inverse(std::uint64_t a, std::uint64_t n)
{
    if (n == 1)
        return 0;
    std::int64_t x = 0, y = 0;
    extended_gcd(a % n, n, x, y);
    const std::int64_t m = static_cast<std::int64_t>(n);
    return static_cast<std::uint64_t>(((x % m) + m) % m);
}

} // namespace

HaltonPixelEnumeration::HaltonPixelEnumeration(std::uint32_t width, std::uint32_t height)
{
    if (width == 0 || height == 0)
        throw ConfigError("HaltonPixelEnumeration: image must be at least 1x1");
    if (width > (1u << 20) || height > 1594323u) // 3^13
        throw ConfigError("HaltonPixelEnumeration: image too large for the index range");
    while (scale_x_ < width) {
        scale_x_ *= 2;
        ++exp_x_;
    }
    while (scale_y_ < height) {
        scale_y_ *= 3;
        ++exp_y_;
    }
    stride_ = static_cast<std::uint64_t>(scale_x_) * scale_y_;
    crt_x_ = scale_y_ * multiplicative_inverse(scale_y_ % scale_x_, scale_x_);
    crt_y_ = scale_x_ * multiplicative_inverse(scale_x_ % scale_y_, scale_y_);
}

std::uint64_t HaltonPixelEnumeration::offset(std::uint32_t px, std::uint32_t py) const
{
    if (px >= scale_x_ || py >= scale_y_)
        throw std::out_of_range("HaltonPixelEnumeration: pixel outside the scaled grid");
    const std::uint64_t r2 = digit_reverse(px, 2, exp_x_);
    const std::uint64_t r3 = digit_reverse(py, 3, exp_y_);
    return (r2 * crt_x_ % stride_ + r3 * crt_y_ % stride_) % stride_;
}

std::uint64_t HaltonPixelEnumeration::index(std::uint32_t px, std::uint32_t py,
                                            std::uint64_t k) const
{
    return offset(px, py) + k * stride_;
}

IndexCongruence partition_by_extra_dimension(std::uint32_t part, std::uint32_t parts,
                                             std::uint32_t base)
{
    if (base < 2)
        throw std::invalid_argument("partition_by_extra_dimension: base must be >= 2");
    std::uint32_t k = 0;
    std::uint64_t power = 1;
    while (power < parts) {
        power *= base;
        ++k;
    }
    if (power != parts)
        throw ConfigError("partition_by_extra_dimension: parts must be a power of the base");
    if (part >= parts)
        throw std::out_of_range("partition_by_extra_dimension: part index beyond parts");
    return IndexCongruence{digit_reverse(part, base, k), parts};
}

namespace {

constexpr char kXorMagic[4] = {'X', 'Q', 'T', '1'};

void put_u32(std::ostream& out, std::uint32_t v)
{
    const char bytes[4] = {
        static_cast<char>(v & 0xff),
        static_cast<char>((v >> 8) & 0xff),
        static_cast<char>((v >> 16) & 0xff),
        static_cast<char>((v >> 24) & 0xff),
    };
    out.write(bytes, 4);
}

std::uint32_t get_u32(std::istream& in)
{
    unsigned char bytes[4];
    in.read(reinterpret_cast<char*>(bytes), 4);
    if (!in)
        throw ConfigError("xor table file: truncated");
    return static_cast<std::uint32_t>(bytes[0]) | (static_cast<std::uint32_t>(bytes[1]) << 8) |
           (static_cast<std::uint32_t>(bytes[2]) << 16) |
           (static_cast<std::uint32_t>(bytes[3]) << 24);
}

} // namespace

void write_xor_table_file(std::ostream& out, const XorTables& tables)
{
    out.write(kXorMagic, 4);
    for (std::uint32_t v : tables.reorder)
        put_u32(out, v);
    for (std::uint32_t v : tables.scramble)
        put_u32(out, v);
}

XorTables load_xor_tables(std::istream& in, std::uint32_t dims, std::vector<std::uint32_t> points,
                          std::uint32_t point_count)
{
    if (dims == 0)
        throw ConfigError("load_xor_tables: dims must be >= 1");
    if (point_count == 0 || (point_count & (point_count - 1)) != 0)
        throw ConfigError("load_xor_tables: point count must be a power of two");
    if (points.size() != static_cast<std::size_t>(point_count) * dims)
        throw ConfigError("load_xor_tables: point set size does not match point_count * dims");
    char magic[4];
    in.read(magic, 4);
    if (!in || !std::equal(magic, magic + 4, kXorMagic))
        throw ConfigError("xor table file: bad magic, expected XQT1");

    constexpr std::size_t tile = XorTables::kTile * XorTables::kTile;
    XorTables t;
    t.dims = dims;
    t.point_count = point_count;
    t.points = std::move(points);
    t.reorder.resize(tile);
    for (std::uint32_t& v : t.reorder)
        v = get_u32(in) & (point_count - 1); // reorder acts modulo the set size
    t.scramble.resize(tile * dims);
    for (std::uint32_t& v : t.scramble)
        v = get_u32(in);
    return t;
}

XorTables white_noise_xor_tables(std::uint32_t dims, std::uint32_t point_count,
                                 std::uint32_t seed)
{
    if (dims == 0)
        throw ConfigError("white_noise_xor_tables: dims must be >= 1");
    if (point_count == 0 || (point_count & (point_count - 1)) != 0)
        throw ConfigError("white_noise_xor_tables: point count must be a power of two");
    const GeneratorMatrixSet matrices = build_matrices(builtin_direction_numbers(), dims);

    std::mt19937 rng(seed);
    std::vector<std::uint32_t> dim_scramble(dims, 0u);
    if (seed != 0) {
        for (std::uint32_t& s : dim_scramble)
            s = rng();
    }

    constexpr std::size_t tile = XorTables::kTile * XorTables::kTile;
    XorTables t;
    t.dims = dims;
    t.point_count = point_count;
    t.reorder.resize(tile);
    for (std::uint32_t& v : t.reorder)
        v = rng() & (point_count - 1);
    t.scramble.resize(tile * dims);
    for (std::uint32_t& v : t.scramble)
        v = rng();
    t.points.resize(static_cast<std::size_t>(point_count) * dims);
    for (std::uint32_t i = 0; i < point_count; ++i)
        for (std::uint32_t j = 0; j < dims; ++j)
            t.points[static_cast<std::size_t>(i) * dims + j] =
                sobol_component_fixed(i, j, matrices, dim_scramble[j]);
    return t;
}

std::uint32_t xor_table_sample_fixed(std::uint64_t i, std::uint32_t px, std::uint32_t py,
                                     const XorTables& t, std::uint32_t j)
{
    if (i >= t.point_count)
        throw std::out_of_range("xor_table_sample: index beyond the stored point set");
    if (j >= t.dims)
        throw std::out_of_range("xor_table_sample: dimension beyond the stored point set");
    const std::size_t cell = (px % XorTables::kTile) + (py % XorTables::kTile) * XorTables::kTile;
    const std::uint32_t reordered = static_cast<std::uint32_t>(i) ^ t.reorder[cell];
    return t.points[static_cast<std::size_t>(reordered) * t.dims + j] ^
           t.scramble[cell * t.dims + j];
}

float xor_table_sample(std::uint64_t i, std::uint32_t px, std::uint32_t py, const XorTables& t,
                       std::uint32_t j)
{
    return map_u32_to_unifloat(xor_table_sample_fixed(i, px, py, t, j));
}

SamplerKind sampler_kind_from_name(std::string_view name)
{
    if (name == "sobol")
        return SamplerKind::sobol;
    if (name == "halton")
        return SamplerKind::halton;
    if (name == "lattice")
        return SamplerKind::lattice;
    if (name == "halton-hilbert")
        return SamplerKind::halton_hilbert;
    if (name == "pixel-shifted-lattice")
        return SamplerKind::pixel_shifted_lattice;
    if (name == "pixel-random-lattice")
        return SamplerKind::pixel_random_lattice;
    if (name == "image-plane-halton")
        return SamplerKind::image_plane_halton;
    if (name == "sobol-xor-table")
        return SamplerKind::sobol_xor_table;
    throw ConfigError("unknown sampler: " + std::string(name));
}

std::string_view sampler_kind_name(SamplerKind kind)
{
    switch (kind) {
    case SamplerKind::sobol: return "sobol";
    case SamplerKind::halton: return "halton";
    case SamplerKind::lattice: return "lattice";
    case SamplerKind::halton_hilbert: return "halton-hilbert";
    case SamplerKind::pixel_shifted_lattice: return "pixel-shifted-lattice";
    case SamplerKind::pixel_random_lattice: return "pixel-random-lattice";
    case SamplerKind::image_plane_halton: return "image-plane-halton";
    case SamplerKind::sobol_xor_table: return "sobol-xor-table";
    }
    throw std::logic_error("sampler_kind_name: bad enum value");
}

bool sampler_kind_uses_pixel(SamplerKind kind)
{
    switch (kind) {
    case SamplerKind::halton_hilbert:
    case SamplerKind::pixel_shifted_lattice:
    case SamplerKind::pixel_random_lattice:
    case SamplerKind::image_plane_halton:
    case SamplerKind::sobol_xor_table:
        return true;
    default:
        return false;
    }
}

namespace {

void require(bool ok, const char* what)
{
    if (!ok)
        throw ConfigError(what);
}

} // namespace

SampleStream make_stream(SamplerKind kind, StreamParams params)
{
    require(params.dims >= 1, "make_stream: dims must be >= 1");
    SampleStream s;
    s.kind_ = kind;
    s.dims_ = params.dims;

    const auto resolve_halton_scramble = [&]() {
        if (params.scramble == "plain")
            return;
        if (params.scramble == "faure") {
            s.faure_ = std::make_shared<FaurePermutations>(params.dims);
            return;
        }
        if (params.scramble == "linear") {
            s.linear_factors_ = params.linear_factors.empty()
                                    ? default_linear_factors(params.dims)
                                    : params.linear_factors;
            require(s.linear_factors_.size() >= params.dims,
                    "make_stream: linear factor list shorter than dims");
            return;
        }
        throw ConfigError("make_stream: scramble must be plain, faure, or linear");
    };

    const auto resolve_lattice_vector = [&]() {
        require(!params.generator.g.empty(), "make_stream: generator vector required");
        require(params.generator.all_odd(), "make_stream: generator components must be odd");
        require(params.dims <= params.generator.dims(),
                "make_stream: dims beyond the generator vector");
        s.generator_ = std::move(params.generator);
    };

    const auto validate_pixel = [&]() {
        require(params.pixel.order >= 1 && params.pixel.order <= 31,
                "make_stream: pixel order must be in [1, 31]");
        require(params.pixel.x < (1u << params.pixel.order) &&
                    params.pixel.y < (1u << params.pixel.order),
                "make_stream: pixel outside the 2^order grid");
    };

    switch (kind) {
    case SamplerKind::sobol: {
        if (!params.matrices)
            params.matrices = std::make_shared<GeneratorMatrixSet>(
                build_matrices(builtin_direction_numbers(), params.dims));
        require(params.dims <= params.matrices->dimensions(),
                "make_stream: dims beyond the generator matrices");
        s.matrices_ = std::move(params.matrices);
        if (!params.sobol_scrambles.empty()) {
            require(params.sobol_scrambles.size() >= params.dims,
                    "make_stream: scramble list shorter than dims");
            s.sobol_scrambles_ = std::move(params.sobol_scrambles);
        }
        break;
    }
    case SamplerKind::halton:
        require(params.dims <= kPrimeTableSize, "make_stream: dims beyond the prime table");
        resolve_halton_scramble();
        break;
    case SamplerKind::lattice:
        resolve_lattice_vector();
        break;
    case SamplerKind::halton_hilbert:
        require(params.spp >= 1, "make_stream: spp must be >= 1");
        validate_pixel();
        resolve_halton_scramble();
        s.spp_ = params.spp;
        s.block_start_ = hilbert_index(params.pixel) * params.spp;
        break;
    case SamplerKind::pixel_shifted_lattice:
        validate_pixel();
        resolve_lattice_vector();
        s.shift_fixed_ = hilbert_phi3_fixed(params.pixel);
        break;
    case SamplerKind::pixel_random_lattice:
        s.px_ = params.pixel.x;
        s.py_ = params.pixel.y;
        break;
    case SamplerKind::image_plane_halton: {
        require(params.width >= 1 && params.height >= 1,
                "make_stream: image size required for image-plane halton");
        require(params.pixel.x < params.width && params.pixel.y < params.height,
                "make_stream: pixel outside the image");
        require(params.dims <= kPrimeTableSize, "make_stream: dims beyond the prime table");
        const HaltonPixelEnumeration enumeration(params.width, params.height);
        s.offset_ = enumeration.offset(params.pixel.x, params.pixel.y);
        s.stride_ = enumeration.stride();
        s.exp_x_ = enumeration.exponent_x();
        s.scale_y_ = enumeration.scale_y();
        s.linear_factors_ = params.linear_factors.empty() ? default_linear_factors(params.dims)
                                                          : params.linear_factors;
        require(s.linear_factors_.size() >= params.dims,
                "make_stream: linear factor list shorter than dims");
        break;
    }
    case SamplerKind::sobol_xor_table:
        require(static_cast<bool>(params.tables), "make_stream: xor tables required");
        require(params.dims <= params.tables->dims,
                "make_stream: dims beyond the stored point set");
        s.px_ = params.pixel.x;
        s.py_ = params.pixel.y;
        s.tables_ = std::move(params.tables);
        break;
    }
    return s;
}

float SampleStream::halton_component(std::uint32_t i, std::uint32_t j) const
{
    if (faure_)
        return radical_inverse_permuted(i, j, faure_->for_prime_index(j));
    if (!linear_factors_.empty())
        return radical_inverse_linscramble(i, j, linear_factors_[j]);
    return radical_inverse(i, j);
}

float SampleStream::sample(std::uint64_t index, std::uint32_t dim) const
{
    if (dim >= dims_)
        throw std::out_of_range("SampleStream: dimension beyond the stream");
    switch (kind_) {
    case SamplerKind::sobol:
        return sobol_component(index, dim, *matrices_,
                               sobol_scrambles_.empty() ? 0u : sobol_scrambles_[dim]);
    case SamplerKind::halton:
        return halton_component(static_cast<std::uint32_t>(index), dim);
    case SamplerKind::lattice:
        return lattice_component(static_cast<std::uint32_t>(index), generator_.g[dim]);
    case SamplerKind::halton_hilbert:
        if (index >= spp_)
            throw std::out_of_range("SampleStream: sample index beyond the pixel block");
        return halton_component(static_cast<std::uint32_t>(block_start_ + index), dim);
    case SamplerKind::pixel_shifted_lattice:
        return map_u32_to_unifloat(pixel_shifted_lattice_component_fixed(
            static_cast<std::uint32_t>(index), dim, shift_fixed_, generator_));
    case SamplerKind::pixel_random_lattice:
        return random_lattice_component(static_cast<std::uint32_t>(index), dim, px_, py_);
    case SamplerKind::image_plane_halton: {
        const std::uint64_t global = offset_ + index * stride_;
        if (dim == 0)
            return radical_inverse(static_cast<std::uint32_t>(global >> exp_x_), 0);
        if (dim == 1)
            return radical_inverse(static_cast<std::uint32_t>(global / scale_y_), 1);
        return radical_inverse_linscramble(static_cast<std::uint32_t>(global), dim,
                                           linear_factors_[dim]);
    }
    case SamplerKind::sobol_xor_table:
        return xor_table_sample(index, px_, py_, *tables_, dim);
    }
    throw std::logic_error("SampleStream: bad sampler kind");
}

} // namespace qmc
