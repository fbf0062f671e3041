// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#include "qmc/lattice.hpp"

#include "qmc/errors.hpp"

#include <algorithm>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qmc {

bool GeneratorVector::all_odd() const
{
    return std::all_of(g.begin(), g.end(), [](std::uint32_t v) { return v & 1u; });
}

GeneratorVector load_generator_vector(std::istream& in)
{
    GeneratorVector gv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::uint64_t value = 0;
        if (!(ls >> value))
            continue;
        if (value > 0xffffffffull)
            throw ConfigError("generator vector, line " + std::to_string(line_no) +
                              ": component beyond 32 bits");
        if (value % 2 == 0)
            throw ConfigError("generator vector, line " + std::to_string(line_no) +
                              ": component is even");
        gv.g.push_back(static_cast<std::uint32_t>(value));
    }
    if (gv.g.empty())
        throw ConfigError("generator vector file holds no components");
    return gv;
}

std::vector<float> lattice_point(std::uint32_t i, const GeneratorVector& g)
{
    std::vector<float> x(g.g.size());
    const std::uint32_t rev = bit_reverse32(i);
    for (std::size_t j = 0; j < g.g.size(); ++j)
        x[j] = map_u32_to_unifloat(rev * g.g[j]);
    return x;
}

namespace {

inline std::uint32_t mix32(std::uint32_t h)
{
    h ^= h >> 16;
    h *= 0x85ebca6bu;
    h ^= h >> 13;
    h *= 0xc2b2ae35u;
    h ^= h >> 16;
    return h;
}

} // namespace

std::uint32_t pixel_hash(std::uint32_t j, std::uint32_t px, std::uint32_t py)
{
    std::uint32_t h = mix32(0x9e3779b9u ^ j);
    h = mix32(h ^ px);
    h = mix32(h ^ py);
    return h;
}

namespace {

inline std::uint32_t lfsr_next(std::uint32_t& state)
{
    state ^= state << 13;
    state ^= state >> 17;
    state ^= state << 5;
    return state;
}

} // namespace

GeneratorVector lfsr_generator_vector(std::uint32_t seed, std::uint32_t dims)
{
    if (seed == 0)
        throw std::invalid_argument("lfsr_generator_vector: zero seed is the absorbing state");
    if (dims < 1)
        throw std::invalid_argument("lfsr_generator_vector: dims must be >= 1");
    GeneratorVector gv;
    gv.g.reserve(dims);
    gv.g.push_back(1u); // the phi_2 component
    std::uint32_t state = seed;
    for (std::uint32_t j = 1; j < dims; ++j)
        gv.g.push_back(2u * lfsr_next(state) + 1u);
    return gv;
}

bool AdmissibilityReport::all_unique() const
{
    return std::all_of(levels.begin(), levels.end(),
                       [](const AdmissibilityLevel& l) { return l.unique_mod_ok; });
}

AdmissibilityReport check_admissible(const GeneratorVector& g, std::uint32_t m_max)
{
    if (m_max < 1 || m_max > 32)
        throw std::invalid_argument("check_admissible: m_max must be in [1, 32]");
    AdmissibilityReport report;
    report.levels.reserve(m_max);
    const std::size_t dims = g.g.size();
    for (std::uint32_t m = 1; m <= m_max; ++m) {
        AdmissibilityLevel level;
        level.m = m;
        const std::uint64_t two_m = 1ull << m;
        const std::uint32_t mask = static_cast<std::uint32_t>(two_m - 1);
        const std::size_t half = std::min<std::uint64_t>(dims, two_m >> 1);
        const std::size_t full = std::min<std::uint64_t>(dims, two_m);

        for (std::size_t j = 0; j < full; ++j) {
            for (std::size_t k = j + 1; k < full; ++k) {
                if (((g.g[j] ^ g.g[k]) & mask) == 0) {
                    ++level.duplicate_pairs_full;
                    if (k < half)
                        ++level.duplicate_pairs_half;
                }
            }
        }
        level.unique_mod_ok = level.duplicate_pairs_half == 0;

        for (std::size_t j = 0; j < half; ++j) {
            for (std::size_t k = j + 1; k < half; ++k) {
                // Odd residues sum to 2^m exactly when one mirrors the other.
                if ((((g.g[j] & mask) + (g.g[k] & mask)) & mask) == 0)
                    level.symmetry_collisions.emplace_back(static_cast<std::uint32_t>(j),
                                                           static_cast<std::uint32_t>(k));
            }
        }

        const std::uint32_t threshold = static_cast<std::uint32_t>(two_m >> 6);
        for (std::size_t j = 0; j < dims; ++j) {
            if ((g.g[j] & mask) < threshold)
                level.small_component_warnings.push_back(static_cast<std::uint32_t>(j));
        }
        report.levels.push_back(std::move(level));
    }
    return report;
}

std::vector<std::uint32_t> lattice_shift_fixed(std::uint32_t k, std::uint32_t m,
                                               const GeneratorVector& g)
{
    if (m > 32)
        throw std::invalid_argument("lattice_shift: m must be <= 32");
    const std::uint64_t scaled = static_cast<std::uint64_t>(k) << m;
    if (scaled > 0xffffffffull)
        throw std::overflow_error("lattice_shift: k * 2^m does not fit 32 bits");
    const std::uint32_t rev = bit_reverse32(static_cast<std::uint32_t>(scaled));
    std::vector<std::uint32_t> delta(g.g.size());
    for (std::size_t j = 0; j < g.g.size(); ++j)
        delta[j] = rev * g.g[j];
    return delta;
}

LatticeShift lattice_shift(std::uint32_t k, std::uint32_t m, const GeneratorVector& g)
{
    const std::vector<std::uint32_t> fixed = lattice_shift_fixed(k, m, g);
    LatticeShift shift;
    shift.delta.reserve(fixed.size());
    for (std::uint32_t v : fixed)
        shift.delta.push_back(map_u32_to_unifloat(v));
    return shift;
}

} // namespace qmc
