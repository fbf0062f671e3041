// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include "qmc/unitfloat.hpp"

#include <cstdint>
#include <iosfwd>
#include <utility>
#include <vector>

namespace qmc {

/// Generator vector of a rank-1 lattice sequence in base 2; every component
/// must be odd (the components are the low 32 digits of the conceptual
/// 2-adic g_j).
struct GeneratorVector {
    std::vector<std::uint32_t> g;

    std::uint32_t dims() const { return static_cast<std::uint32_t>(g.size()); }
    bool all_odd() const;
};

/// Reads one decimal component per line ('#' comments allowed); rejects
/// even components.
GeneratorVector load_generator_vector(std::istream& in);

/// x_i^(j) = phi_2(i) * g_j mod 1, realized as a wrapping 32-bit multiply of
/// the bit-reversed index.
inline std::uint32_t lattice_component_fixed(std::uint32_t i, std::uint32_t g_j)
{
    return bit_reverse32(i) * g_j;
}

inline float lattice_component(std::uint32_t i, std::uint32_t g_j)
{
    return map_u32_to_unifloat(lattice_component_fixed(i, g_j));
}

std::vector<float> lattice_point(std::uint32_t i, const GeneratorVector& g);

/// Fixed avalanche mix of (dimension, pixel x, pixel y); one documented
/// constant algorithm so per-pixel generator vectors reproduce across
/// platforms. Murmur3 finalizer over the golden-ratio-seeded inputs.
std::uint32_t pixel_hash(std::uint32_t j, std::uint32_t px, std::uint32_t py);

/// Component j of the i-th point of the per-pixel rank-1 lattice sequence:
/// g = pixel_hash | 1, enumerated backwards so the shared origin comes last
/// (at i = 0xFFFFFFFF).
inline std::uint32_t random_lattice_component_fixed(std::uint32_t i, std::uint32_t j,
                                                    std::uint32_t px, std::uint32_t py)
{
    const std::uint32_t g = pixel_hash(j, px, py) | 1u;
    return bit_reverse32(0xffffffffu - i) * g;
}

inline float random_lattice_component(std::uint32_t i, std::uint32_t j, std::uint32_t px,
                                      std::uint32_t py)
{
    return map_u32_to_unifloat(random_lattice_component_fixed(i, j, px, py));
}

/// g_0 = 1 (the phi_2 component), then g_j = 2*xi_j + 1 for successive
/// outputs of a maximal-length 32-bit LFSR (xorshift32 with shifts 13, 17,
/// 5; period 2^32-1, zero is not a state). Zero seeds are rejected.
GeneratorVector lfsr_generator_vector(std::uint32_t seed, std::uint32_t dims);

/// Admissibility analysis of one scale m: uniqueness of g_j mod 2^m over the
/// first 2^(m-1) components (and, for reference, over the first 2^m),
/// symmetric pairs g_j = 2^m - g_k mod 2^m, and components small compared
/// to 2^m (below 2^m / 64).
struct AdmissibilityLevel {
    std::uint32_t m = 0;
    bool unique_mod_ok = true;
    std::uint32_t duplicate_pairs_half = 0;
    std::uint32_t duplicate_pairs_full = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> symmetry_collisions;
    std::vector<std::uint32_t> small_component_warnings;
};

struct AdmissibilityReport {
    std::vector<AdmissibilityLevel> levels; // m = 1..m_max
    bool all_unique() const;
};

AdmissibilityReport check_admissible(const GeneratorVector& g, std::uint32_t m_max);

/// Delta_k of the shifted-lattice decomposition: the lattice point of index
/// k * 2^m, i.e. brev32(k * 2^m) * g per component in wrapping arithmetic.
/// Rejects k * 2^m beyond 32 bits.
std::vector<std::uint32_t> lattice_shift_fixed(std::uint32_t k, std::uint32_t m,
                                               const GeneratorVector& g);

struct LatticeShift {
    std::vector<float> delta;
};

LatticeShift lattice_shift(std::uint32_t k, std::uint32_t m, const GeneratorVector& g);

} // namespace qmc
