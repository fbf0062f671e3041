// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#include "qmc/render.hpp"

#include "qmc/errors.hpp"

#include <bit>
#include <cmath>
#include <mutex>
#include <numbers>
#include <thread>
#include <vector>

namespace qmc {

double scene_value(double x, double y)
{
    const double s = std::sin(8.0 * std::numbers::pi * x) * std::sin(8.0 * std::numbers::pi * y);
    double v = 0.5 * (1.0 + s);
    const double dx = x - kSceneDiskCenterX;
    const double dy = y - kSceneDiskCenterY;
    if (dx * dx + dy * dy < kSceneDiskRadius * kSceneDiskRadius)
        v += kSceneDiskWeight;
    return v;
}

std::uint32_t hilbert_order_for(std::uint32_t width, std::uint32_t height)
{
    std::uint32_t order = 1;
    while ((1u << order) < width || (1u << order) < height)
        ++order;
    return order;
}

namespace {

StreamParams pixel_params(const RenderJob& job, const GeneratorVector& generator,
                          const std::shared_ptr<const GeneratorMatrixSet>& matrices,
                          const std::shared_ptr<const XorTables>& tables, std::uint32_t order,
                          std::uint32_t px, std::uint32_t py)
{
    StreamParams params;
    params.dims = 2;
    params.pixel = PixelCoord{px, py, order};
    params.spp = job.spp;
    params.width = job.width;
    params.height = job.height;
    params.generator = generator;
    params.matrices = matrices;
    params.tables = tables;
    if (job.kind == SamplerKind::sobol && job.seed != 0) {
        params.sobol_scrambles = {pixel_hash(0, job.seed, 0), pixel_hash(1, job.seed, 0)};
    }
    return params;
}

float render_pixel(const SampleStream& stream, const RenderJob& job, std::uint32_t px,
                   std::uint32_t py)
{
    const double inv_w = 1.0 / job.width;
    const double inv_h = 1.0 / job.height;
    if (job.accum == AccumMode::kahan) {
        CompensatedSum sum;
        for (std::uint32_t i = 0; i < job.spp; ++i) {
            const double u = stream.sample(i, 0);
            const double v = stream.sample(i, 1);
            sum.add(scene_value((px + u) * inv_w, (py + v) * inv_h));
        }
        return static_cast<float>(sum.value() / job.spp);
    }
    std::int64_t sum = 0;
    for (std::uint32_t i = 0; i < job.spp; ++i) {
        const double u = stream.sample(i, 0);
        const double v = stream.sample(i, 1);
        sum += std::llround(scene_value((px + u) * inv_w, (py + v) * inv_h) * 4294967296.0);
    }
    return static_cast<float>(static_cast<double>(sum) / 4294967296.0 / job.spp);
}

} // namespace

ImageBuffer render(const RenderJob& job)
{
    if (job.width == 0 || job.height == 0)
        throw ConfigError("render: image must be at least 1x1");
    if (job.spp == 0)
        throw ConfigError("render: spp must be >= 1");
    if (job.integrand != "scene")
        throw ConfigError("render: unknown integrand id '" + job.integrand + "'");

    const std::uint32_t order = hilbert_order_for(job.width, job.height);

    GeneratorVector generator = job.generator;
    if (generator.g.empty())
        generator = lfsr_generator_vector(job.seed != 0 ? job.seed : kDefaultGeneratorSeed, 2);

    std::shared_ptr<const GeneratorMatrixSet> matrices = job.matrices;
    if (!matrices)
        matrices = std::make_shared<GeneratorMatrixSet>(
            build_matrices(builtin_direction_numbers(), 2));

    std::shared_ptr<const XorTables> tables = job.tables;
    if (!tables && job.kind == SamplerKind::sobol_xor_table)
        tables = std::make_shared<XorTables>(white_noise_xor_tables(
            2, std::max(1u, std::bit_ceil(job.spp)), job.seed));

    ImageBuffer image = make_image(job.width, job.height);
    const std::uint64_t pixels = static_cast<std::uint64_t>(job.width) * job.height;
    const std::uint32_t workers = std::max(1u, job.workers);

    std::exception_ptr failure;
    std::mutex failure_mutex;
    const auto run = [&](std::uint32_t rank) {
        try {
            for (std::uint64_t p = rank; p < pixels; p += workers) {
                const std::uint32_t px = static_cast<std::uint32_t>(p % job.width);
                const std::uint32_t py = static_cast<std::uint32_t>(p / job.width);
                const SampleStream stream = make_stream(
                    job.kind, pixel_params(job, generator, matrices, tables, order, px, py));
                image.values[p] = render_pixel(stream, job, px, py);
            }
        } catch (...) {
            const std::lock_guard<std::mutex> lock(failure_mutex);
            if (!failure)
                failure = std::current_exception();
        }
    };

    if (workers == 1) {
        run(0);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (std::uint32_t w = 0; w < workers; ++w)
            pool.emplace_back(run, w);
        for (std::thread& t : pool)
            t.join();
    }
    if (failure)
        std::rethrow_exception(failure);
    return image;
}

} // namespace qmc
