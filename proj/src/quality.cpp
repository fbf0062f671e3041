// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#include "qmc/quality.hpp"

#include "qmc/errors.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace qmc {

AccumMode accum_mode_from_name(std::string_view name)
{
    if (name == "kahan")
        return AccumMode::kahan;
    if (name == "int")
        return AccumMode::integer_fixed;
    throw ConfigError("accumulation mode must be 'kahan' or 'int'");
}

std::vector<TestIntegrand> builtin_integrands(std::uint32_t dims)
{
    if (dims == 0)
        throw std::invalid_argument("builtin_integrands: dims must be >= 1");
    std::vector<TestIntegrand> fs;

    fs.push_back(TestIntegrand{
        "product-sine", dims,
        [](std::span<const float> x) {
            double v = 1.0;
            for (float xi : x)
                v *= 0.5 * std::numbers::pi * std::sin(std::numbers::pi * xi);
            return v;
        },
        1.0});

    fs.push_back(TestIntegrand{
        "product-poly", dims,
        [](std::span<const float> x) {
            double v = 1.0;
            for (float xi : x)
                v *= 3.0 * static_cast<double>(xi) * xi;
            return v;
        },
        1.0});

    constexpr double c = 0.7;
    fs.push_back(TestIntegrand{
        "indicator", dims,
        [](std::span<const float> x) {
            for (float xi : x)
                if (!(xi < c))
                    return 0.0;
            return 1.0;
        },
        std::pow(c, dims)});

    return fs;
}

TestIntegrand builtin_integrand(std::string_view name, std::uint32_t dims)
{
    for (TestIntegrand& f : builtin_integrands(dims))
        if (f.name == name)
            return std::move(f);
    throw ConfigError("unknown integrand: " + std::string(name));
}

double l2_star_discrepancy(std::span<const float> points, std::size_t n, std::size_t dims)
{
    if (n == 0 || dims == 0)
        throw std::invalid_argument("l2_star_discrepancy: empty point set");
    if (points.size() != n * dims)
        throw std::invalid_argument("l2_star_discrepancy: point span size mismatch");

    const auto row = [&](std::size_t i) { return points.subspan(i * dims, dims); };

    CompensatedSum single;
    for (std::size_t i = 0; i < n; ++i) {
        double prod = 1.0;
        for (float x : row(i))
            prod *= (1.0 - static_cast<double>(x) * x) * 0.5;
        single.add(prod);
    }

    // Sum over all ordered pairs = diagonal + twice the upper triangle.
    CompensatedSum pairs;
    for (std::size_t i = 0; i < n; ++i) {
        const auto xi = row(i);
        double diag = 1.0;
        for (float x : xi)
            diag *= 1.0 - static_cast<double>(x);
        pairs.add(diag);
        for (std::size_t k = i + 1; k < n; ++k) {
            const auto xk = row(k);
            double prod = 1.0;
            for (std::size_t j = 0; j < dims; ++j)
                prod *= 1.0 - static_cast<double>(std::max(xi[j], xk[j]));
            pairs.add(2.0 * prod);
        }
    }

    const double nd = static_cast<double>(n);
    const double t2 = std::pow(3.0, -static_cast<double>(dims)) -
                      2.0 / nd * single.value() + pairs.value() / (nd * nd);
    return std::sqrt(std::max(t2, 0.0));
}

double min_toroidal_distance(std::span<const float> points, std::size_t n, std::size_t dims)
{
    if (n < 2)
        throw std::invalid_argument("min_toroidal_distance: need at least two points");
    if (points.size() != n * dims)
        throw std::invalid_argument("min_toroidal_distance: point span size mismatch");
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = i + 1; k < n; ++k) {
            double d2 = 0.0;
            for (std::size_t j = 0; j < dims; ++j) {
                double d = std::abs(static_cast<double>(points[i * dims + j]) -
                                    static_cast<double>(points[k * dims + j]));
                d = std::min(d, 1.0 - d);
                d2 += d * d;
            }
            best = std::min(best, d2);
        }
    }
    return std::sqrt(best);
}

StratificationResult check_1d_stratification(const SampleStream& stream, std::uint32_t j,
                                             std::uint32_t m)
{
    if (m > 20)
        throw std::invalid_argument("check_1d_stratification: m must be <= 20");
    const std::uint32_t buckets = 1u << m;
    StratificationResult result;
    result.histogram.assign(buckets, 0u);
    for (std::uint32_t i = 0; i < buckets; ++i) {
        const float v = stream.sample(i, j);
        // v * 2^m is exact: scaling by a power of two only shifts the
        // exponent, so the bucket of v is exact.
        const auto bucket = static_cast<std::uint32_t>(v * static_cast<float>(buckets));
        ++result.histogram[bucket];
    }
    result.ok = std::all_of(result.histogram.begin(), result.histogram.end(),
                            [](std::uint32_t c) { return c == 1; });
    return result;
}

double reduce_deterministic(std::vector<RankedPartial> partials)
{
    std::sort(partials.begin(), partials.end(),
              [](const RankedPartial& a, const RankedPartial& b) { return a.rank < b.rank; });
    CompensatedSum sum;
    for (const RankedPartial& p : partials)
        sum.add(p.value);
    return sum.value();
}

std::int64_t reduce_deterministic(const std::vector<RankedIntPartial>& partials)
{
    std::int64_t sum = 0;
    for (const RankedIntPartial& p : partials)
        sum += p.value;
    return sum;
}

namespace {

constexpr std::uint64_t kChunk = 4096; // fixed reduction granularity

double chunk_sum_kahan(const SampleStream& stream, const TestIntegrand& f, std::uint64_t begin,
                       std::uint64_t end, std::vector<float>& x)
{
    CompensatedSum sum;
    for (std::uint64_t i = begin; i < end; ++i) {
        for (std::uint32_t j = 0; j < f.dims; ++j)
            x[j] = stream.sample(i, j);
        const double v = f.evaluate(x);
        if (!std::isfinite(v))
            throw std::runtime_error("integrate: non-finite value of '" + f.name +
                                     "' at index " + std::to_string(i));
        sum.add(v);
    }
    return sum.value();
}

std::int64_t chunk_sum_integer(const SampleStream& stream, const TestIntegrand& f,
                               std::uint64_t begin, std::uint64_t end, std::vector<float>& x)
{
    std::int64_t sum = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
        for (std::uint32_t j = 0; j < f.dims; ++j)
            x[j] = stream.sample(i, j);
        const double v = f.evaluate(x);
        if (!std::isfinite(v))
            throw std::runtime_error("integrate: non-finite value of '" + f.name +
                                     "' at index " + std::to_string(i));
        sum += std::llround(v * 4294967296.0); // 2^-32 fixed point
    }
    return sum;
}

} // namespace

IntegrationRow integrate(const SampleStream& stream, const TestIntegrand& f, std::uint64_t n,
                         AccumMode mode, std::uint32_t workers)
{
    if (n == 0)
        throw std::invalid_argument("integrate: n must be >= 1");
    if (stream.dims() < f.dims)
        throw std::invalid_argument("integrate: stream has fewer dimensions than the integrand");
    if (workers == 0)
        workers = 1;

    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t chunks = (n + kChunk - 1) / kChunk;
    std::vector<double> partial_f(mode == AccumMode::kahan ? chunks : 0);
    std::vector<std::int64_t> partial_i(mode == AccumMode::integer_fixed ? chunks : 0);

    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto run_chunks = [&](std::uint32_t rank) {
        std::vector<float> x(f.dims);
        try {
            for (std::uint64_t c = rank; c < chunks; c += workers) {
                const std::uint64_t begin = c * kChunk;
                const std::uint64_t end = std::min(n, begin + kChunk);
                if (mode == AccumMode::kahan)
                    partial_f[c] = chunk_sum_kahan(stream, f, begin, end, x);
                else
                    partial_i[c] = chunk_sum_integer(stream, f, begin, end, x);
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    };

    if (workers == 1) {
        run_chunks(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint32_t w = 0; w < workers; ++w)
            pool.emplace_back(run_chunks, w);
        for (std::thread& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);

    double estimate = 0.0;
    if (mode == AccumMode::kahan) {
        CompensatedSum total;
        for (double p : partial_f)
            total.add(p);
        estimate = total.value() / static_cast<double>(n);
    } else {
        std::int64_t total = 0;
        for (std::int64_t p : partial_i)
            total += p;
        estimate = static_cast<double>(total) / 4294967296.0 / static_cast<double>(n);
    }

    const auto stop = std::chrono::steady_clock::now();
    IntegrationRow row;
    row.n = n;
    row.estimate = estimate;
    row.abs_error = std::abs(estimate - f.exact_integral);
    row.seconds = std::chrono::duration<double>(stop - start).count();
    return row;
}

} // namespace qmc
