// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include "qmc/digitalnet.hpp"
#include "qmc/hilbert.hpp"
#include "qmc/lattice.hpp"
#include "qmc/radical.hpp"

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string_view>
#include <vector>

namespace qmc {

/// 32-bit fixed-point phi_3 of the pixel's Hilbert index, inverted four
/// base-3 digits at a time. The shift of the pixel-shifted lattice.
std::uint32_t hilbert_phi3_fixed(const PixelCoord& p);

/// Component j of the i-th point of the pixel-shifted rank-1 lattice:
/// (phi_2(i) + phi_3(hilbert_index(x, y))) * g_j mod 1, with the mod-1
/// realized by wrapping 32-bit adds and multiplies.
inline std::uint32_t pixel_shifted_lattice_component_fixed(std::uint32_t i, std::uint32_t j,
                                                           std::uint32_t shift_fixed,
                                                           const GeneratorVector& g)
{
    return (bit_reverse32(i) + shift_fixed) * g.g[j];
}

float pixel_shifted_lattice_component(std::uint32_t i, std::uint32_t j, const PixelCoord& p,
                                      const GeneratorVector& g);

/// Halton sample i of the pixel's contiguous block along the Hilbert curve:
/// the global index is hilbert_index(p) * spp + i.
std::vector<float> halton_along_hilbert_sample(std::uint32_t i, const PixelCoord& p,
                                               std::uint32_t spp, std::uint32_t dims);

/// Per-pixel enumeration of the Halton sequence over a W x H image: the
/// x dimension is stratified into 2^a >= W strata, the y dimension into
/// 3^b >= H. The indices of pixel (x, y) form the arithmetic progression
/// offset(x, y) + k * 2^a * 3^b, with the offset solved from the
/// digit-reversal congruences by the Chinese remainder theorem.
class HaltonPixelEnumeration {
public:
    HaltonPixelEnumeration(std::uint32_t width, std::uint32_t height);

    std::uint64_t stride() const { return stride_; }
    std::uint32_t scale_x() const { return scale_x_; }
    std::uint32_t scale_y() const { return scale_y_; }
    std::uint32_t exponent_x() const { return exp_x_; }
    std::uint32_t exponent_y() const { return exp_y_; }

    /// Smallest sequence index landing in pixel (px, py).
    std::uint64_t offset(std::uint32_t px, std::uint32_t py) const;
    /// k-th sequence index landing in pixel (px, py).
    std::uint64_t index(std::uint32_t px, std::uint32_t py, std::uint64_t k) const;

private:
    std::uint32_t scale_x_ = 1;
    std::uint32_t scale_y_ = 1;
    std::uint32_t exp_x_ = 0;
    std::uint32_t exp_y_ = 0;
    std::uint64_t stride_ = 1;
    std::uint64_t crt_x_ = 0; // 3^b * ((3^b)^-1 mod 2^a)
    std::uint64_t crt_y_ = 0; // 2^a * ((2^a)^-1 mod 3^b)
};

/// Reverses the lowest `digits` base-b digits of v.
std::uint64_t digit_reverse(std::uint64_t v, std::uint32_t base, std::uint32_t digits);

/// Index residue class of part p when a sequence is split into parts = b^k
/// pieces through an extra radical-inverse dimension: part p owns
/// { i : i mod b^k == digit_reverse(p) }.
struct IndexCongruence {
    std::uint64_t remainder = 0;
    std::uint64_t modulus = 1;

    bool contains(std::uint64_t i) const { return i % modulus == remainder; }
    /// k-th index of the part.
    std::uint64_t index(std::uint64_t k) const { return remainder + k * modulus; }
};

IndexCongruence partition_by_extra_dimension(std::uint32_t part, std::uint32_t parts,
                                             std::uint32_t base);

/// Reorder and scramble tables over a 128x128 pixel tile plus the stored
/// integer-stage point set they act on. The i-th sample of pixel (x, y) is
/// points[i XOR reorder[x, y]] XOR scramble[x, y].
struct XorTables {
    static constexpr std::uint32_t kTile = 128;

    std::uint32_t dims = 0;
    std::uint32_t point_count = 0;       // power of two
    std::vector<std::uint32_t> reorder;  // kTile * kTile
    std::vector<std::uint32_t> scramble; // kTile * kTile * dims
    std::vector<std::uint32_t> points;   // point_count * dims
};

/// Binary table file: magic "XQT1", then 128^2 reorder words, then
/// 128^2 * dims scramble words, little-endian 32-bit.
void write_xor_table_file(std::ostream& out, const XorTables& tables);

/// Reads the table file and binds it to a stored point set (point_count a
/// power of two; reorder words are used modulo point_count).
XorTables load_xor_tables(std::istream& in, std::uint32_t dims,
                          std::vector<std::uint32_t> points, std::uint32_t point_count);

/// White-noise tables for testing the mechanics; the stored points are the
/// first point_count Sobol' points at the integer stage, XOR-scrambled per
/// dimension when seed != 0.
XorTables white_noise_xor_tables(std::uint32_t dims, std::uint32_t point_count,
                                 std::uint32_t seed);

std::uint32_t xor_table_sample_fixed(std::uint64_t i, std::uint32_t px, std::uint32_t py,
                                     const XorTables& t, std::uint32_t j);
float xor_table_sample(std::uint64_t i, std::uint32_t px, std::uint32_t py, const XorTables& t,
                       std::uint32_t j);

enum class SamplerKind {
    sobol,
    halton,
    lattice,
    halton_hilbert,
    pixel_shifted_lattice,
    pixel_random_lattice,
    image_plane_halton,
    sobol_xor_table,
};

SamplerKind sampler_kind_from_name(std::string_view name);
std::string_view sampler_kind_name(SamplerKind kind);
bool sampler_kind_uses_pixel(SamplerKind kind);

/// Everything a stream construction may need; each kind reads exactly the
/// fields its construction requires and ignores the rest.
struct StreamParams {
    std::uint32_t dims = 2;

    // lattice family
    GeneratorVector generator;

    // sobol family
    std::shared_ptr<const GeneratorMatrixSet> matrices;
    std::vector<std::uint32_t> sobol_scrambles; // empty = plain sequence

    // halton scrambling: "plain", "faure", or "linear"
    std::string scramble = "plain";
    std::vector<std::uint32_t> linear_factors; // empty = default factors

    // pixel context
    PixelCoord pixel{0, 0, 1};
    std::uint32_t spp = 1;                   // halton_hilbert block size
    std::uint32_t width = 0, height = 0;     // image_plane_halton
    std::shared_ptr<const XorTables> tables; // sobol_xor_table
};

/// A configured sampler bound to its parameters (and pixel, for the
/// pixel-context kinds); sample(i, j) is a pure function.
class SampleStream {
public:
    float sample(std::uint64_t index, std::uint32_t dim) const;
    std::uint32_t dims() const { return dims_; }
    SamplerKind kind() const { return kind_; }

    friend SampleStream make_stream(SamplerKind kind, StreamParams params);

private:
    SamplerKind kind_ = SamplerKind::sobol;
    std::uint32_t dims_ = 0;

    GeneratorVector generator_;
    std::uint32_t shift_fixed_ = 0; // pixel_shifted_lattice
    std::uint32_t px_ = 0, py_ = 0; // pixel_random_lattice, sobol_xor_table

    std::shared_ptr<const GeneratorMatrixSet> matrices_;
    std::vector<std::uint32_t> sobol_scrambles_;

    std::shared_ptr<const FaurePermutations> faure_;
    std::vector<std::uint32_t> linear_factors_; // empty = plain halton

    std::uint64_t block_start_ = 0; // halton_hilbert
    std::uint32_t spp_ = 1;

    std::uint64_t offset_ = 0; // image_plane_halton
    std::uint64_t stride_ = 1;
    std::uint32_t exp_x_ = 0;
    std::uint32_t scale_y_ = 1;

    std::shared_ptr<const XorTables> tables_;

    float halton_component(std::uint32_t i, std::uint32_t j) const;
};

/// Validates the parameters for the kind and returns the configured stream.
/// Missing or inconsistent parameters raise ConfigError.
SampleStream make_stream(SamplerKind kind, StreamParams params);

} // namespace qmc
