// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#include "qmc/digitalnet.hpp"

#include "qmc/errors.hpp"

#include <istream>
#include <sstream>
#include <stdexcept>

namespace qmc {

namespace {

[[noreturn]] void parse_fail(std::size_t line_no, const std::string& what)
{
    throw ConfigError("direction numbers, line " + std::to_string(line_no) + ": " + what);
}

} // namespace

DirectionNumberSet parse_direction_numbers(std::istream& in)
{
    DirectionNumberSet set;
    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!header_seen) {
            header_seen = true; // "d s a m_i" caption line
            continue;
        }
        std::istringstream ls(line);
        DirectionNumberRow row;
        if (!(ls >> row.d))
            continue; // blank line
        if (!(ls >> row.s >> row.a))
            parse_fail(line_no, "expected 'd s a m_1 ... m_s'");
        if (row.d != set.rows.size() + 2)
            parse_fail(line_no, "dimensions must be consecutive starting at 2");
        if (row.s == 0 || row.s > 32)
            parse_fail(line_no, "degree s out of range");
        if (row.s > 1 && row.a >= (1u << (row.s - 1)))
            parse_fail(line_no, "coefficient a has more than s-1 bits");
        row.m.reserve(row.s);
        for (std::uint32_t k = 1; k <= row.s; ++k) {
            std::uint64_t mk = 0;
            if (!(ls >> mk))
                parse_fail(line_no, "expected " + std::to_string(row.s) + " direction numbers");
            if (mk % 2 == 0)
                parse_fail(line_no, "direction number m_" + std::to_string(k) + " is even");
            if (mk >= (1ull << k))
                parse_fail(line_no, "direction number m_" + std::to_string(k) + " must be < 2^" +
                                        std::to_string(k));
            row.m.push_back(static_cast<std::uint32_t>(mk));
        }
        std::string trailing;
        if (ls >> trailing)
            parse_fail(line_no, "trailing tokens after the m values");
        set.rows.push_back(std::move(row));
    }
    return set;
}

DirectionNumberSet parse_direction_numbers(const std::string& text)
{
    std::istringstream in(text);
    return parse_direction_numbers(in);
}

const DirectionNumberSet& builtin_direction_numbers()
{
    static const DirectionNumberSet set = parse_direction_numbers(builtin_direction_number_text());
    return set;
}

GeneratorMatrixSet build_matrices(const DirectionNumberSet& dns, std::uint32_t dims)
{
    if (dims > dns.dimension_count())
        throw ConfigError("build_matrices: requested " + std::to_string(dims) +
                          " dimensions, direction numbers provide " +
                          std::to_string(dns.dimension_count()));
    GeneratorMatrixSet set;
    set.dims_ = dims;
    set.columns_.assign(static_cast<std::size_t>(dims) * kSobolColumns, 0u);
    if (dims == 0)
        return set;

    // Dimension 0 is van der Corput: the identity matrix, zero past bit 31.
    std::uint32_t* v = set.columns_.data();
    for (std::uint32_t k = 0; k < 32; ++k)
        v[k] = 1u << (31 - k);

    for (std::uint32_t j = 1; j < dims; ++j) {
        const DirectionNumberRow& row = dns.rows[j - 1];
        const std::uint32_t s = row.s;
        v = set.columns_.data() + static_cast<std::size_t>(j) * kSobolColumns;
        for (std::uint32_t k = 0; k < s && k < kSobolColumns; ++k)
            v[k] = row.m[k] << (31 - k);
        for (std::uint32_t k = s; k < kSobolColumns; ++k) {
            v[k] = v[k - s] ^ (v[k - s] >> s);
            for (std::uint32_t l = 1; l < s; ++l)
                v[k] ^= ((row.a >> (s - 1 - l)) & 1u) * v[k - l];
        }
    }
    return set;
}

std::uint32_t sobol_component_fixed(std::uint64_t i, std::uint32_t j,
                                    const GeneratorMatrixSet& matrices, std::uint32_t scramble)
{
    if (i >= kSobolMaxIndex)
        throw std::invalid_argument("sobol_component: index must be below 2^52");
    if (j >= matrices.dimensions())
        throw std::out_of_range("sobol_component: dimension beyond the matrix set");
    const std::uint32_t* c = matrices.columns(j).data();
    std::uint32_t result = scramble;
    std::uint32_t lo = static_cast<std::uint32_t>(i);
    for (std::uint32_t k = 0; lo != 0; lo >>= 1, ++k) {
        if (lo & 1u)
            result ^= c[k];
    }
    std::uint32_t hi = static_cast<std::uint32_t>(i >> 32); // 20 bits at most
    for (std::uint32_t k = 32; hi != 0; hi >>= 1, ++k) {
        if (hi & 1u)
            result ^= c[k];
    }
    return result;
}

float sobol_component(std::uint64_t i, std::uint32_t j, const GeneratorMatrixSet& matrices,
                      std::uint32_t scramble)
{
    return map_u32_to_unifloat(sobol_component_fixed(i, j, matrices, scramble));
}

std::vector<float> sobol_point(std::uint64_t i, std::uint32_t dims,
                               const GeneratorMatrixSet& matrices,
                               std::span<const std::uint32_t> scrambles)
{
    if (dims > matrices.dimensions())
        throw std::out_of_range("sobol_point: dims beyond the matrix set");
    if (!scrambles.empty() && scrambles.size() < dims)
        throw std::invalid_argument("sobol_point: scramble list shorter than dims");
    std::vector<float> x(dims);
    for (std::uint32_t j = 0; j < dims; ++j)
        x[j] = sobol_component(i, j, matrices, scrambles.empty() ? 0u : scrambles[j]);
    return x;
}

} // namespace qmc
