// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#pragma once

#include "qmc/image.hpp"
#include "qmc/imageplane.hpp"
#include "qmc/quality.hpp"

#include <cstdint>
#include <memory>
#include <string>

namespace qmc {

/// Seed of the default generator vector used whenever no --gv file is
/// given: lfsr_generator_vector(kDefaultGeneratorSeed, dims).
inline constexpr std::uint32_t kDefaultGeneratorSeed = 0xace1u;

/// The synthetic image-plane scene in normalized [0,1)^2 coordinates: a
/// sine gradient plus a disk indicator. Per-pixel averages have a cheap
/// high-accuracy reference (closed-form sine integral, subdivided disk
/// area), so render output can be checked against ground truth.
inline constexpr double kSceneDiskCenterX = 0.5;
inline constexpr double kSceneDiskCenterY = 0.5;
inline constexpr double kSceneDiskRadius = 0.3;
inline constexpr double kSceneDiskWeight = 0.25;

double scene_value(double x, double y);

struct RenderJob {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::uint32_t spp = 1;
    SamplerKind kind = SamplerKind::pixel_shifted_lattice;
    std::string integrand = "scene";
    std::uint32_t workers = 1;
    AccumMode accum = AccumMode::kahan;
    std::uint32_t seed = 0;

    // Sampler resources; empty fields fall back to the bundled defaults
    // (LFSR generator vector, built-in direction numbers, white-noise xor
    // tables derived from the seed).
    GeneratorVector generator;
    std::shared_ptr<const GeneratorMatrixSet> matrices;
    std::shared_ptr<const XorTables> tables;
};

/// Smallest Hilbert order whose 2^order x 2^order curve covers the image.
std::uint32_t hilbert_order_for(std::uint32_t width, std::uint32_t height);

/// Integrates the scene over every pixel footprint with the job's sampler;
/// pixel-parallel, output bytes independent of the worker count.
ImageBuffer render(const RenderJob& job);

} // namespace qmc
