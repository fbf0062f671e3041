// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include <cstddef>
#include <cstdint>

namespace qmc {

inline constexpr std::size_t kPrimeTableSize = 1000;

/// The index-th prime (prime(0) == 2). Throws std::out_of_range beyond the
/// table.
std::uint32_t prime(std::uint32_t index);

/// Largest power of prime(index) that fits into an unsigned 32-bit integer.
/// Multiplying it by the prime once more overflows 32 bits.
std::uint32_t prime_max_power(std::uint32_t index);

/// Largest power of an arbitrary base >= 2 that fits into 32 bits.
std::uint32_t max_power_fitting_u32(std::uint32_t base);

} // namespace qmc
