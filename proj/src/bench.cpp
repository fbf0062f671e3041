// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#include "qmc/bench.hpp"

#include "qmc/digitalnet.hpp"
#include "qmc/errors.hpp"
#include "qmc/imageplane.hpp"
#include "qmc/render.hpp"

#include <bit>
#include <chrono>

namespace qmc {

namespace {

constexpr std::uint32_t kTile = 128;
constexpr std::uint32_t kIndicesPerPixel = 16;
constexpr std::uint32_t kOrder = 7; // Hilbert curve over the 128x128 tile

struct Sink {
    std::uint64_t value = 0;

    void fold(float v) { value = std::rotl(value, 7) ^ std::bit_cast<std::uint32_t>(v); }
};

// kernel(px, py, index, dim) -> component; kept a template so the hot loop
// inlines the kernel and the measurement has no call overhead.
template <typename Kernel>
std::uint64_t walk(Kernel&& kernel, std::uint64_t count, std::uint32_t dims, Sink& sink)
{
    std::uint64_t done = 0;
    std::uint32_t px = 0, py = 0;
    while (done < count) {
        for (std::uint32_t i = 0; i < kIndicesPerPixel && done < count; ++i) {
            for (std::uint32_t j = 0; j < dims && done < count; ++j) {
                sink.fold(kernel(px, py, i, j));
                ++done;
            }
        }
        if (++px == kTile) {
            px = 0;
            py = (py + 1) % kTile;
        }
    }
    return done;
}

template <typename Kernel>
BenchResult measure(std::string_view name, Kernel&& kernel, std::uint64_t count,
                    std::uint32_t dims)
{
    Sink warm;
    walk(kernel, std::max<std::uint64_t>(count / 8, 1), dims, warm);

    Sink sink;
    const auto start = std::chrono::steady_clock::now();
    const std::uint64_t done = walk(kernel, count, dims, sink);
    const auto stop = std::chrono::steady_clock::now();

    BenchResult result;
    result.kernel = std::string(name);
    result.evaluations = done;
    result.seconds = std::chrono::duration<double>(stop - start).count();
    result.components_per_second =
        result.seconds > 0.0 ? static_cast<double>(done) / result.seconds : 0.0;
    result.checksum = sink.value;
    return result;
}

inline std::uint32_t global_index(std::uint32_t px, std::uint32_t py, std::uint32_t i)
{
    return (py * kTile + px) * kIndicesPerPixel + i;
}

} // namespace

BenchResult run_bench_kernel(std::string_view kernel_name, std::uint64_t count,
                             std::uint32_t dims)
{
    if (count == 0)
        throw ConfigError("bench: count must be >= 1");
    if (dims == 0)
        throw ConfigError("bench: dims must be >= 1");

    if (kernel_name == "sobol") {
        const GeneratorMatrixSet matrices = build_matrices(builtin_direction_numbers(), dims);
        return measure(
            kernel_name,
            [&matrices](std::uint32_t px, std::uint32_t py, std::uint32_t i, std::uint32_t j) {
                return sobol_component(global_index(px, py, i), j, matrices);
            },
            count, dims);
    }
    if (kernel_name == "halton") {
        return measure(
            kernel_name,
            [](std::uint32_t px, std::uint32_t py, std::uint32_t i, std::uint32_t j) {
                return radical_inverse(global_index(px, py, i), j);
            },
            count, dims);
    }
    if (kernel_name == "halton-tabled") {
        const TabledHalton tabled(dims);
        return measure(
            kernel_name,
            [&tabled](std::uint32_t px, std::uint32_t py, std::uint32_t i, std::uint32_t j) {
                return tabled.component(global_index(px, py, i), j);
            },
            count, dims);
    }
    if (kernel_name == "lattice") {
        const GeneratorVector g = lfsr_generator_vector(kDefaultGeneratorSeed, dims);
        return measure(
            kernel_name,
            [&g](std::uint32_t px, std::uint32_t py, std::uint32_t i, std::uint32_t j) {
                return lattice_component(global_index(px, py, i), g.g[j]);
            },
            count, dims);
    }
    if (kernel_name == "pixel-shifted-lattice") {
        const GeneratorVector g = lfsr_generator_vector(kDefaultGeneratorSeed, dims);
        // The shift is recomputed once per pixel change, as a renderer would.
        struct ShiftCache {
            std::uint32_t px = 0xffffffffu, py = 0xffffffffu, shift = 0;
        } cache;
        return measure(
            kernel_name,
            [&g, &cache](std::uint32_t px, std::uint32_t py, std::uint32_t i, std::uint32_t j) {
                if (cache.px != px || cache.py != py) {
                    cache.px = px;
                    cache.py = py;
                    cache.shift = hilbert_phi3_fixed(PixelCoord{px, py, kOrder});
                }
                return map_u32_to_unifloat(
                    pixel_shifted_lattice_component_fixed(i, j, cache.shift, g));
            },
            count, dims);
    }
    if (kernel_name == "pixel-random-lattice") {
        return measure(
            kernel_name,
            [](std::uint32_t px, std::uint32_t py, std::uint32_t i, std::uint32_t j) {
                return random_lattice_component(i, j, px, py);
            },
            count, dims);
    }
    throw ConfigError("bench: unknown kernel '" + std::string(kernel_name) + "'");
}

} // namespace qmc
