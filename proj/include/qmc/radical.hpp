// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include "qmc/primes.hpp"
#include "qmc/unitfloat.hpp"

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace qmc {

/// A bijection on the digit range {0, ..., base-1}.
struct DigitPermutation {
    std::uint32_t base = 0;
    std::vector<std::uint32_t> map;

    std::uint32_t operator()(std::uint32_t digit) const { return map[digit]; }
    bool is_bijection() const;
};

DigitPermutation identity_permutation(std::uint32_t base);

/// sigma(a) = (factor * a) mod base; a bijection for prime bases and any
/// factor in [1, base).
DigitPermutation linear_permutation(std::uint32_t base, std::uint32_t factor);

/// The recursively defined permutation family: sigma_2 = (0, 1); for even b,
/// sigma_b is 2*sigma_{b/2} concatenated with 2*sigma_{b/2}+1; for odd b,
/// sigma_{b-1} with values >= (b-1)/2 incremented and (b-1)/2 inserted in
/// the middle. Fixes 0 for every base.
DigitPermutation faure_permutation(std::uint32_t base);

/// Lookup table that applies a digit permutation to groups of
/// digits_per_step base-b digits at once, mirroring the digit order inside
/// each group so that looped application reproduces the single-digit
/// inversion exactly.
struct MultiDigitTable {
    std::uint32_t base = 0;
    std::uint32_t digits_per_step = 0;
    std::uint32_t group_base = 0;     // base^digits_per_step
    std::uint32_t index_modulus = 0;  // largest base^k fitting 32 bits
    std::vector<std::uint32_t> table; // group_base entries
    DigitPermutation perm;            // single-digit path for remainder digits
};

/// Builds the tensor table for sigma over digits_per_step digits. Tables are
/// capped at 2^16 entries so that they stay cache-resident.
MultiDigitTable tensor_digit_table(const DigitPermutation& sigma, std::uint32_t digits_per_step);

/// Shared tables built on first use: base 3 pairs (identity sigma, the
/// radinv3 layout {0,3,6,1,4,7,2,5,8}), base 5 pairs (Faure sigma_5), and
/// base 3 quadruples (identity sigma, 81 entries) for the image-plane shift.
const MultiDigitTable& base3_two_digit_table();
const MultiDigitTable& base5_two_digit_table();
const MultiDigitTable& base3_four_digit_table();

// 32-bit fixed-point radical inverses (value = result * 2^-32). All reduce
// the index modulo the largest base power fitting 32 bits and accumulate in
// integers; no floating-point summation occurs. The float variants feed the
// result through map_u32_to_unifloat.
std::uint32_t radical_inverse_fixed(std::uint32_t i, std::uint32_t prime_index);
std::uint32_t radical_inverse_linscramble_fixed(std::uint32_t i, std::uint32_t prime_index,
                                                std::uint32_t factor);
std::uint32_t radical_inverse_permuted_fixed(std::uint32_t i, std::uint32_t prime_index,
                                             const DigitPermutation& sigma);
std::uint32_t radical_inverse_tabled_fixed(std::uint32_t i, std::uint32_t base,
                                           const MultiDigitTable& table);

float radical_inverse(std::uint32_t i, std::uint32_t prime_index);
float radical_inverse_linscramble(std::uint32_t i, std::uint32_t prime_index, std::uint32_t factor);
float radical_inverse_permuted(std::uint32_t i, std::uint32_t prime_index,
                               const DigitPermutation& sigma);
float radical_inverse_tabled(std::uint32_t i, std::uint32_t base, const MultiDigitTable& table);

/// Faure permutations for the first dims prime bases, built once and shared
/// read-only.
class FaurePermutations {
public:
    explicit FaurePermutations(std::uint32_t dims);

    std::uint32_t dims() const { return static_cast<std::uint32_t>(perms_.size()); }
    const DigitPermutation& for_prime_index(std::uint32_t j) const { return perms_[j]; }

private:
    std::vector<DigitPermutation> perms_;
};

// Halton points: component j is the radical inverse of i in the j-th prime
// base, optionally digit-scrambled.
std::vector<float> halton_point(std::uint32_t i, std::uint32_t dims);
std::vector<float> halton_point(std::uint32_t i, std::uint32_t dims, const FaurePermutations& sigma);
std::vector<float> halton_point(std::uint32_t i, std::uint32_t dims,
                                std::span<const std::uint32_t> linear_factors);

/// Per-prime linear scramble factors, factor = base - 1 for every prime.
std::vector<std::uint32_t> default_linear_factors(std::uint32_t dims);

/// Reads "base factor" pairs (one per line, '#' comments allowed) and
/// returns per-prime-index factors for the first dims primes; bases missing
/// from the file keep the default factor.
std::vector<std::uint32_t> load_linear_factors(std::istream& in, std::uint32_t dims);

/// Linearly scrambled Halton over the first dims primes, evaluated through
/// per-base multi-digit tables (base 2 inverts 16 digits per step, base 3
/// ten, and so on down to one digit for bases beyond 251).
class TabledHalton {
public:
    TabledHalton(std::uint32_t dims, std::span<const std::uint32_t> linear_factors);
    explicit TabledHalton(std::uint32_t dims);

    std::uint32_t dims() const { return static_cast<std::uint32_t>(tables_.size()); }
    std::uint32_t component_fixed(std::uint32_t i, std::uint32_t j) const;
    float component(std::uint32_t i, std::uint32_t j) const;

private:
    std::vector<MultiDigitTable> tables_;
};

} // namespace qmc
