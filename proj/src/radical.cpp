// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#include "qmc/radical.hpp"

#include "qmc/errors.hpp"

#include <algorithm>
#include <istream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

namespace qmc {

bool DigitPermutation::is_bijection() const
{
    if (map.size() != base)
        return false;
    std::vector<std::uint32_t> sorted = map;
    std::sort(sorted.begin(), sorted.end());
    for (std::uint32_t v = 0; v < base; ++v)
        if (sorted[v] != v)
            return false;
    return true;
}

DigitPermutation identity_permutation(std::uint32_t base)
{
    if (base < 2)
        throw std::invalid_argument("identity_permutation: base must be >= 2");
    DigitPermutation sigma{base, std::vector<std::uint32_t>(base)};
    std::iota(sigma.map.begin(), sigma.map.end(), 0u);
    return sigma;
}

DigitPermutation linear_permutation(std::uint32_t base, std::uint32_t factor)
{
    if (base < 2)
        throw std::invalid_argument("linear_permutation: base must be >= 2");
    if (factor == 0 || factor >= base)
        throw std::invalid_argument("linear_permutation: factor must be in [1, base)");
    DigitPermutation sigma{base, std::vector<std::uint32_t>(base)};
    for (std::uint32_t a = 0; a < base; ++a)
        sigma.map[a] = (factor * a) % base;
    return sigma;
}

DigitPermutation faure_permutation(std::uint32_t base)
{
    if (base < 2)
        throw std::invalid_argument("faure_permutation: base must be >= 2");
    if (base == 2)
        return DigitPermutation{2, {0u, 1u}};
    DigitPermutation sigma{base, {}};
    if (base % 2 == 0) {
        const DigitPermutation half = faure_permutation(base / 2);
        sigma.map.reserve(base);
        for (std::uint32_t v : half.map)
            sigma.map.push_back(2 * v);
        for (std::uint32_t v : half.map)
            sigma.map.push_back(2 * v + 1);
    } else {
        const DigitPermutation prev = faure_permutation(base - 1);
        const std::uint32_t mid = (base - 1) / 2;
        sigma.map = prev.map;
        for (std::uint32_t& v : sigma.map)
            if (v >= mid)
                ++v;
        sigma.map.insert(sigma.map.begin() + mid, mid);
    }
    return sigma;
}

MultiDigitTable tensor_digit_table(const DigitPermutation& sigma, std::uint32_t digits_per_step)
{
    if (digits_per_step < 1)
        throw std::invalid_argument("tensor_digit_table: digits_per_step must be >= 1");
    if (!sigma.is_bijection())
        throw std::invalid_argument("tensor_digit_table: sigma is not a digit bijection");
    std::uint64_t group = 1;
    for (std::uint32_t k = 0; k < digits_per_step; ++k) {
        group *= sigma.base;
        if (group > 65536ull)
            throw std::invalid_argument("tensor_digit_table: table would exceed 2^16 entries");
    }

    MultiDigitTable t;
    t.base = sigma.base;
    t.digits_per_step = digits_per_step;
    t.group_base = static_cast<std::uint32_t>(group);
    t.index_modulus = max_power_fitting_u32(sigma.base);
    t.perm = sigma;
    t.table.resize(t.group_base);
    for (std::uint32_t v = 0; v < t.group_base; ++v) {
        // Digit d0 (least significant of the input group) becomes the most
        // significant output digit, matching the mirroring of the inversion.
        std::uint32_t out = 0;
        std::uint32_t rem = v;
        std::uint32_t scale = t.group_base / t.base;
        for (std::uint32_t k = 0; k < digits_per_step; ++k) {
            out += sigma(rem % t.base) * scale;
            rem /= t.base;
            scale /= t.base;
        }
        t.table[v] = out;
    }
    return t;
}

const MultiDigitTable& base3_two_digit_table()
{
    static const MultiDigitTable t = tensor_digit_table(identity_permutation(3), 2);
    return t;
}

const MultiDigitTable& base5_two_digit_table()
{
    static const MultiDigitTable t = tensor_digit_table(faure_permutation(5), 2);
    return t;
}

const MultiDigitTable& base3_four_digit_table()
{
    static const MultiDigitTable t = tensor_digit_table(identity_permutation(3), 4);
    return t;
}

std::uint32_t radical_inverse_fixed(std::uint32_t i, std::uint32_t prime_index)
{
    const std::uint32_t base = prime(prime_index);
    i %= prime_max_power(prime_index);
    std::uint32_t base_tmp = 1;
    std::uint32_t result = 0;
    do {
        result = result * base + i % base;
        i /= base;
        base_tmp *= base;
    } while (i != 0);
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(result) << 32) / base_tmp);
}

std::uint32_t radical_inverse_linscramble_fixed(std::uint32_t i, std::uint32_t prime_index,
                                                std::uint32_t factor)
{
    const std::uint32_t base = prime(prime_index);
    if (factor == 0 || factor >= base)
        throw std::invalid_argument("radical_inverse_linscramble: factor must be in [1, base)");
    i %= prime_max_power(prime_index);
    std::uint32_t base_tmp = 1;
    std::uint32_t result = 0;
    std::uint32_t im = i % base;
    do {
        result = result * base + (factor * im) % base;
        i /= base;
        // No reduction of im needed from here on: i is below
        // max_power/base after the division, so factor * im stays in
        // 32 bits, and (factor * im) mod base picks the scrambled digit.
        im = i;
        base_tmp *= base;
    } while (i != 0);
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(result) << 32) / base_tmp);
}

std::uint32_t radical_inverse_permuted_fixed(std::uint32_t i, std::uint32_t prime_index,
                                             const DigitPermutation& sigma)
{
    const std::uint32_t base = prime(prime_index);
    if (sigma.base != base)
        throw std::invalid_argument("radical_inverse_permuted: permutation base mismatch");
    i %= prime_max_power(prime_index);
    std::uint32_t base_tmp = 1;
    std::uint32_t result = 0;
    do {
        result = result * base + sigma(i % base);
        i /= base;
        base_tmp *= base;
    } while (i != 0);
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(result) << 32) / base_tmp);
}

std::uint32_t radical_inverse_tabled_fixed(std::uint32_t i, std::uint32_t base,
                                           const MultiDigitTable& table)
{
    if (base != table.base)
        throw std::invalid_argument("radical_inverse_tabled: base does not match the table");
    i %= table.index_modulus;

    std::uint32_t digits = 1;
    for (std::uint32_t v = i / base; v != 0; v /= base)
        ++digits;

    std::uint32_t base_tmp = 1;
    std::uint32_t result = 0;
    for (std::uint32_t g = digits / table.digits_per_step; g != 0; --g) {
        result = result * table.group_base + table.table[i % table.group_base];
        i /= table.group_base;
        base_tmp *= table.group_base;
    }
    // Remaining most significant digits are inverted individually.
    for (std::uint32_t r = digits % table.digits_per_step; r != 0; --r) {
        result = result * base + table.perm(i % base);
        i /= base;
        base_tmp *= base;
    }
    return static_cast<std::uint32_t>((static_cast<std::uint64_t>(result) << 32) / base_tmp);
}

float radical_inverse(std::uint32_t i, std::uint32_t prime_index)
{
    return map_u32_to_unifloat(radical_inverse_fixed(i, prime_index));
}

float radical_inverse_linscramble(std::uint32_t i, std::uint32_t prime_index, std::uint32_t factor)
{
    return map_u32_to_unifloat(radical_inverse_linscramble_fixed(i, prime_index, factor));
}

float radical_inverse_permuted(std::uint32_t i, std::uint32_t prime_index,
                               const DigitPermutation& sigma)
{
    return map_u32_to_unifloat(radical_inverse_permuted_fixed(i, prime_index, sigma));
}

float radical_inverse_tabled(std::uint32_t i, std::uint32_t base, const MultiDigitTable& table)
{
    return map_u32_to_unifloat(radical_inverse_tabled_fixed(i, base, table));
}

FaurePermutations::FaurePermutations(std::uint32_t dims)
{
    if (dims > kPrimeTableSize)
        throw std::invalid_argument("FaurePermutations: dims beyond the prime table");
    perms_.reserve(dims);
    for (std::uint32_t j = 0; j < dims; ++j)
        perms_.push_back(faure_permutation(prime(j)));
}

std::vector<float> halton_point(std::uint32_t i, std::uint32_t dims)
{
    if (dims > kPrimeTableSize)
        throw std::invalid_argument("halton_point: dims beyond the prime table");
    std::vector<float> x(dims);
    for (std::uint32_t j = 0; j < dims; ++j)
        x[j] = radical_inverse(i, j);
    return x;
}

std::vector<float> halton_point(std::uint32_t i, std::uint32_t dims, const FaurePermutations& sigma)
{
    if (dims > sigma.dims())
        throw std::invalid_argument("halton_point: dims beyond the permutation set");
    std::vector<float> x(dims);
    for (std::uint32_t j = 0; j < dims; ++j)
        x[j] = radical_inverse_permuted(i, j, sigma.for_prime_index(j));
    return x;
}

std::vector<float> halton_point(std::uint32_t i, std::uint32_t dims,
                                std::span<const std::uint32_t> linear_factors)
{
    if (dims > linear_factors.size())
        throw std::invalid_argument("halton_point: dims beyond the factor list");
    std::vector<float> x(dims);
    for (std::uint32_t j = 0; j < dims; ++j)
        x[j] = radical_inverse_linscramble(i, j, linear_factors[j]);
    return x;
}

std::vector<std::uint32_t> default_linear_factors(std::uint32_t dims)
{
    if (dims > kPrimeTableSize)
        throw std::invalid_argument("default_linear_factors: dims beyond the prime table");
    std::vector<std::uint32_t> f(dims);
    for (std::uint32_t j = 0; j < dims; ++j)
        f[j] = prime(j) - 1;
    return f;
}

std::vector<std::uint32_t> load_linear_factors(std::istream& in, std::uint32_t dims)
{
    std::vector<std::uint32_t> factors = default_linear_factors(dims);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        std::istringstream ls(line);
        std::uint64_t base = 0, factor = 0;
        if (!(ls >> base))
            continue; // blank line
        if (!(ls >> factor))
            throw ConfigError("scramble factor file, line " + std::to_string(line_no) +
                              ": expected 'base factor'");
        if (base < 2 || factor == 0 || factor >= base)
            throw ConfigError("scramble factor file, line " + std::to_string(line_no) +
                              ": factor must be in [1, base)");
        for (std::uint32_t j = 0; j < dims; ++j)
            if (prime(j) == base)
                factors[j] = static_cast<std::uint32_t>(factor);
    }
    return factors;
}

namespace {

std::uint32_t widest_digit_group(std::uint32_t base)
{
    std::uint32_t d = 0;
    std::uint64_t group = 1;
    while (group * base <= 65536ull) {
        group *= base;
        ++d;
    }
    return std::max(d, 1u);
}

} // namespace

TabledHalton::TabledHalton(std::uint32_t dims, std::span<const std::uint32_t> linear_factors)
{
    if (dims > kPrimeTableSize)
        throw std::invalid_argument("TabledHalton: dims beyond the prime table");
    if (linear_factors.size() < dims)
        throw std::invalid_argument("TabledHalton: factor list shorter than dims");
    tables_.reserve(dims);
    for (std::uint32_t j = 0; j < dims; ++j) {
        const std::uint32_t b = prime(j);
        tables_.push_back(
            tensor_digit_table(linear_permutation(b, linear_factors[j]), widest_digit_group(b)));
    }
}

TabledHalton::TabledHalton(std::uint32_t dims)
    : TabledHalton(dims, default_linear_factors(dims))
{
}

std::uint32_t TabledHalton::component_fixed(std::uint32_t i, std::uint32_t j) const
{
    return radical_inverse_tabled_fixed(i, tables_[j].base, tables_[j]);
}

float TabledHalton::component(std::uint32_t i, std::uint32_t j) const
{
    return map_u32_to_unifloat(component_fixed(i, j));
}

} // namespace qmc
