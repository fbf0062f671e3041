// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include "qmc/unitfloat.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace qmc {

inline constexpr std::uint32_t kSobolColumns = 52;
inline constexpr std::uint64_t kSobolMaxIndex = 1ull << 52;

/// One parsed row of a direction-number file: dimension d, polynomial degree
/// s, inner coefficient bits a, and the initial odd direction numbers m.
struct DirectionNumberRow {
    std::uint32_t d = 0;
    std::uint32_t s = 0;
    std::uint32_t a = 0;
    std::vector<std::uint32_t> m;
};

/// Direction numbers for dimensions 1..rows.size(); dimension 0 is the
/// implicit van der Corput dimension (identity generator matrix).
struct DirectionNumberSet {
    std::vector<DirectionNumberRow> rows;

    std::uint32_t dimension_count() const { return static_cast<std::uint32_t>(rows.size()) + 1; }
};

/// Parses the standard "d s a m_1 ... m_s" layout (one header line, then one
/// row per dimension starting at d = 2). Throws ConfigError naming the line
/// number for malformed rows, even m values, or m_k >= 2^k.
DirectionNumberSet parse_direction_numbers(std::istream& in);
DirectionNumberSet parse_direction_numbers(const std::string& text);

/// The bundled table: first 64 dimensions of the Joe-Kuo parameters, same
/// content as data/joe-kuo-64.txt.
const DirectionNumberSet& builtin_direction_numbers();
std::string builtin_direction_number_text();

/// Per-dimension generator matrices as 52 column words, each a 32-bit
/// integer whose bits align the column to the output's most significant
/// bit. Immutable after construction.
class GeneratorMatrixSet {
public:
    std::uint32_t dimensions() const { return dims_; }
    std::span<const std::uint32_t> columns(std::uint32_t j) const
    {
        return {columns_.data() + static_cast<std::size_t>(j) * kSobolColumns, kSobolColumns};
    }

    friend GeneratorMatrixSet build_matrices(const DirectionNumberSet& dns, std::uint32_t dims);

private:
    std::uint32_t dims_ = 0;
    std::vector<std::uint32_t> columns_;
};

/// Realizes the direction numbers as column words: v_k = m_k aligned below
/// the leading bit, extended past the given degree by the primitive
/// polynomial recurrence; 52 columns per dimension.
GeneratorMatrixSet build_matrices(const DirectionNumberSet& dns, std::uint32_t dims);

/// Integer stage of the Sobol' component: scramble XOR the column words
/// selected by the index bits, low 32 index bits first, then the high 20.
/// Indices must be below 2^52.
std::uint32_t sobol_component_fixed(std::uint64_t i, std::uint32_t j,
                                    const GeneratorMatrixSet& matrices,
                                    std::uint32_t scramble = 0);

float sobol_component(std::uint64_t i, std::uint32_t j, const GeneratorMatrixSet& matrices,
                      std::uint32_t scramble = 0);

/// Component-wise sobol_component; an empty scramble span means the plain
/// sequence.
std::vector<float> sobol_point(std::uint64_t i, std::uint32_t dims,
                               const GeneratorMatrixSet& matrices,
                               std::span<const std::uint32_t> scrambles = {});

} // namespace qmc
