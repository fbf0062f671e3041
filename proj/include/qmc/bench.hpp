// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace qmc {

/// Throughput measurement of one component-generation kernel. The kernel
/// walks pixels of a 128x128 tile, 16 indices per pixel, `dims` components
/// per index, until `count` component evaluations are done. The checksum
/// folds every produced value, so everything except the timing is
/// deterministic.
struct BenchResult {
    std::string kernel;
    std::uint64_t evaluations = 0;
    double seconds = 0.0;
    double components_per_second = 0.0;
    std::uint64_t checksum = 0;
};

/// Kernels: "sobol", "halton", "halton-tabled" (linearly scrambled through
/// multi-digit tables, the tabled-inversion baseline), "lattice",
/// "pixel-shifted-lattice", "pixel-random-lattice".
BenchResult run_bench_kernel(std::string_view kernel, std::uint64_t count, std::uint32_t dims);

} // namespace qmc
