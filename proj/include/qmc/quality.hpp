// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include "qmc/imageplane.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace qmc {

/// Neumaier-compensated running sum: the compensation also captures the
/// case where the added term is larger than the running sum.
struct CompensatedSum {
    double sum = 0.0;
    double compensation = 0.0;

    void add(double v)
    {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v))
            compensation += (sum - t) + v;
        else
            compensation += (v - t) + sum;
        sum = t;
    }

    double value() const { return sum + compensation; }
};

enum class AccumMode { kahan, integer_fixed };

AccumMode accum_mode_from_name(std::string_view name);

/// Test function over the unit cube with a closed-form integral.
struct TestIntegrand {
    std::string name;
    std::uint32_t dims = 0;
    std::function<double(std::span<const float>)> evaluate;
    double exact_integral = 0.0;
};

/// product-sine: prod_j (pi/2) sin(pi x_j), integral 1; product-poly:
/// prod_j 3 x_j^2, integral 1; indicator: prod_j [x_j < c_j] with
/// c_j = 0.7, integral 0.7^s.
std::vector<TestIntegrand> builtin_integrands(std::uint32_t dims);
TestIntegrand builtin_integrand(std::string_view name, std::uint32_t dims);

/// Warnock's closed form of the L2-star discrepancy; O(N^2 s), exact up to
/// round-off (tiny negative squares clamp to zero). Points are stored
/// row-major, n rows of dims components.
double l2_star_discrepancy(std::span<const float> points, std::size_t n, std::size_t dims);

/// Minimum pairwise wrap-around (toroidal) Euclidean distance; O(N^2 s).
double min_toroidal_distance(std::span<const float> points, std::size_t n, std::size_t dims);

struct StratificationResult {
    bool ok = false;
    std::vector<std::uint32_t> histogram; // 2^m interval occupancy
};

/// True iff each of the 2^m dyadic intervals holds exactly one of the first
/// 2^m values of the stream's dimension j.
StratificationResult check_1d_stratification(const SampleStream& stream, std::uint32_t j,
                                             std::uint32_t m);

/// Partial result tagged with its partition rank; reduction combines the
/// values in rank order so the result is independent of worker count and
/// completion order.
struct RankedPartial {
    std::uint32_t rank = 0;
    double value = 0.0;
};

double reduce_deterministic(std::vector<RankedPartial> partials);

struct RankedIntPartial {
    std::uint32_t rank = 0;
    std::int64_t value = 0;
};

/// Integer partials are exactly associative within range; any order gives
/// identical bits.
std::int64_t reduce_deterministic(const std::vector<RankedIntPartial>& partials);

struct IntegrationRow {
    std::uint64_t n = 0;
    double estimate = 0.0;
    double abs_error = 0.0;
    double seconds = 0.0;
};

/// (1/N) sum f(x_i) with the selected accumulation mode. Index space is cut
/// into fixed 4096-index chunks regardless of worker count; chunk partials
/// are combined in rank order, so results are bit-identical for any number
/// of workers. Integer mode quantizes integrand values to 2^-32 fixed point
/// before an exactly associative 64-bit sum. Non-finite integrand values
/// abort with a diagnostic.
IntegrationRow integrate(const SampleStream& stream, const TestIntegrand& f, std::uint64_t n,
                         AccumMode mode, std::uint32_t workers = 1);

} // namespace qmc
