// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#include "qmc/primes.hpp"

#include <array>
#include <stdexcept>

namespace qmc {
namespace {

// Both tables are produced at compile time by trial division; the 1000th
// prime is 7919, so the search space is tiny.
consteval std::array<std::uint32_t, kPrimeTableSize> make_primes()
{
    std::array<std::uint32_t, kPrimeTableSize> p{};
    std::size_t found = 0;
    for (std::uint32_t n = 2; found < kPrimeTableSize; ++n) {
        bool is_prime = true;
        for (std::size_t j = 0; j < found && p[j] * p[j] <= n; ++j) {
            if (n % p[j] == 0) {
                is_prime = false;
                break;
            }
        }
        if (is_prime)
            p[found++] = n;
    }
    return p;
}

constexpr std::array<std::uint32_t, kPrimeTableSize> kPrimes = make_primes();

consteval std::array<std::uint32_t, kPrimeTableSize> make_max_powers()
{
    std::array<std::uint32_t, kPrimeTableSize> mp{};
    for (std::size_t j = 0; j < kPrimeTableSize; ++j) {
        std::uint64_t power = kPrimes[j];
        while (power * kPrimes[j] <= 0xffffffffull)
            power *= kPrimes[j];
        mp[j] = static_cast<std::uint32_t>(power);
    }
    return mp;
}

constexpr std::array<std::uint32_t, kPrimeTableSize> kMaxPowers = make_max_powers();

} // namespace

std::uint32_t prime(std::uint32_t index)
{
    if (index >= kPrimeTableSize)
        throw std::out_of_range("prime: index beyond the bundled prime table");
    return kPrimes[index];
}

std::uint32_t prime_max_power(std::uint32_t index)
{
    if (index >= kPrimeTableSize)
        throw std::out_of_range("prime_max_power: index beyond the bundled prime table");
    return kMaxPowers[index];
}

std::uint32_t max_power_fitting_u32(std::uint32_t base)
{
    if (base < 2)
        throw std::invalid_argument("max_power_fitting_u32: base must be >= 2");
    std::uint64_t power = base;
    while (power * base <= 0xffffffffull)
        power *= base;
    return static_cast<std::uint32_t>(power);
}

} // namespace qmc
