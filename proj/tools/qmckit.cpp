// SPDX-License-Identifier: Apache-2.0
// Copyright Contributors to the qmckit Project.

#include "qmc/bench.hpp"
#include "qmc/errors.hpp"
#include "qmc/image.hpp"
#include "qmc/imageplane.hpp"
#include "qmc/quality.hpp"
#include "qmc/render.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <bit>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

using json = nlohmann::json;

struct SamplerOpts {
    std::string sampler = "sobol";
    std::uint32_t dims = 2;
    std::string gv_file;
    std::string dirnums_file;
    std::string scramble = "plain";
    std::string factors_file;
    std::string xor_file;
    std::uint32_t seed = 0;
    std::string pixel = "0,0";
    std::uint32_t order = 8;
    std::uint32_t spp = 16;
    std::string size;
};

void add_sampler_flags(CLI::App* cmd, SamplerOpts& opts)
{
    cmd->add_option("--sampler", opts.sampler, "sampler kind")->capture_default_str();
    cmd->add_option("--dims", opts.dims, "dimensions")->capture_default_str();
    cmd->add_option("--gv", opts.gv_file, "generator vector file, one component per line");
    cmd->add_option("--dirnums", opts.dirnums_file, "direction number file (d s a m_i layout)");
    cmd->add_option("--scramble", opts.scramble, "halton scrambling: plain, faure, linear")
        ->capture_default_str();
    cmd->add_option("--factors", opts.factors_file, "linear scramble factor file (base factor)");
    cmd->add_option("--xor-tables", opts.xor_file, "xor table file (XQT1)");
    cmd->add_option("--seed", opts.seed, "randomization seed (0 = plain)")->capture_default_str();
    cmd->add_option("--pixel", opts.pixel, "pixel context X,Y")->capture_default_str();
    cmd->add_option("--order", opts.order, "hilbert order of the pixel grid")
        ->capture_default_str();
}

std::pair<std::uint32_t, std::uint32_t> parse_pair(const std::string& text, char separator,
                                                   const char* what)
{
    const auto pos = text.find(separator);
    if (pos == std::string::npos)
        throw qmc::ConfigError(std::string(what) + ": expected two values separated by '" +
                               separator + "'");
    try {
        const unsigned long a = std::stoul(text.substr(0, pos));
        const unsigned long b = std::stoul(text.substr(pos + 1));
        return {static_cast<std::uint32_t>(a), static_cast<std::uint32_t>(b)};
    } catch (const std::exception&) {
        throw qmc::ConfigError(std::string(what) + ": malformed value '" + text + "'");
    }
}

std::ifstream open_input(const std::string& path, bool binary = false)
{
    std::ifstream in(path, binary ? std::ios::binary : std::ios::in);
    if (!in)
        throw qmc::ConfigError("cannot open '" + path + "' for reading");
    return in;
}

qmc::GeneratorVector resolve_generator(const SamplerOpts& opts)
{
    if (!opts.gv_file.empty()) {
        auto in = open_input(opts.gv_file);
        return qmc::load_generator_vector(in);
    }
    const std::uint32_t seed = opts.seed != 0 ? opts.seed : qmc::kDefaultGeneratorSeed;
    return qmc::lfsr_generator_vector(seed, std::max(opts.dims, 2u));
}

std::shared_ptr<const qmc::GeneratorMatrixSet> resolve_matrices(const SamplerOpts& opts)
{
    if (!opts.dirnums_file.empty()) {
        auto in = open_input(opts.dirnums_file);
        const qmc::DirectionNumberSet dns = qmc::parse_direction_numbers(in);
        return std::make_shared<qmc::GeneratorMatrixSet>(qmc::build_matrices(dns, opts.dims));
    }
    return std::make_shared<qmc::GeneratorMatrixSet>(
        qmc::build_matrices(qmc::builtin_direction_numbers(), opts.dims));
}

std::vector<std::uint32_t> resolve_factors(const SamplerOpts& opts)
{
    if (opts.factors_file.empty())
        return {};
    auto in = open_input(opts.factors_file);
    return qmc::load_linear_factors(in, opts.dims);
}

std::vector<std::uint32_t> sobol_scrambles_from_seed(std::uint32_t seed, std::uint32_t dims)
{
    std::vector<std::uint32_t> scrambles;
    if (seed == 0)
        return scrambles;
    scrambles.reserve(dims);
    for (std::uint32_t j = 0; j < dims; ++j)
        scrambles.push_back(qmc::pixel_hash(j, seed, 0x5eedu));
    return scrambles;
}

std::shared_ptr<const qmc::XorTables> resolve_xor_tables(const SamplerOpts& opts,
                                                         std::uint32_t point_count)
{
    point_count = std::bit_ceil(std::max(point_count, 1u));
    if (opts.xor_file.empty())
        return std::make_shared<qmc::XorTables>(
            qmc::white_noise_xor_tables(opts.dims, point_count, opts.seed));
    const qmc::GeneratorMatrixSet matrices =
        qmc::build_matrices(qmc::builtin_direction_numbers(), opts.dims);
    const auto scrambles = sobol_scrambles_from_seed(opts.seed, opts.dims);
    std::vector<std::uint32_t> points(static_cast<std::size_t>(point_count) * opts.dims);
    for (std::uint32_t i = 0; i < point_count; ++i)
        for (std::uint32_t j = 0; j < opts.dims; ++j)
            points[static_cast<std::size_t>(i) * opts.dims + j] = qmc::sobol_component_fixed(
                i, j, matrices, scrambles.empty() ? 0u : scrambles[j]);
    auto in = open_input(opts.xor_file, true);
    return std::make_shared<qmc::XorTables>(
        qmc::load_xor_tables(in, opts.dims, std::move(points), point_count));
}

/// Builds the stream a command works with; point_count bounds the index
/// range of table-backed kinds.
qmc::SampleStream resolve_stream(const SamplerOpts& opts, std::uint32_t point_count)
{
    const qmc::SamplerKind kind = qmc::sampler_kind_from_name(opts.sampler);
    qmc::StreamParams params;
    params.dims = opts.dims;
    params.scramble = opts.scramble;
    params.spp = opts.spp;
    const auto [px, py] = parse_pair(opts.pixel, ',', "--pixel");
    params.pixel = qmc::PixelCoord{px, py, opts.order};
    if (!opts.size.empty()) {
        const auto [w, h] = parse_pair(opts.size, 'x', "--size");
        params.width = w;
        params.height = h;
    }
    switch (kind) {
    case qmc::SamplerKind::sobol:
        params.matrices = resolve_matrices(opts);
        params.sobol_scrambles = sobol_scrambles_from_seed(opts.seed, opts.dims);
        break;
    case qmc::SamplerKind::halton:
    case qmc::SamplerKind::halton_hilbert:
        params.linear_factors = resolve_factors(opts);
        break;
    case qmc::SamplerKind::lattice:
    case qmc::SamplerKind::pixel_shifted_lattice:
        params.generator = resolve_generator(opts);
        break;
    case qmc::SamplerKind::pixel_random_lattice:
        break;
    case qmc::SamplerKind::image_plane_halton:
        if (opts.size.empty())
            throw qmc::ConfigError("image-plane-halton requires --size WxH");
        params.linear_factors = resolve_factors(opts);
        break;
    case qmc::SamplerKind::sobol_xor_table:
        params.tables = resolve_xor_tables(opts, point_count);
        break;
    }
    return qmc::make_stream(kind, std::move(params));
}

class OutputFile {
public:
    OutputFile(const std::string& path, bool binary)
    {
        if (path.empty() || path == "-") {
            stream_ = &std::cout;
            return;
        }
        file_.open(path, binary ? std::ios::binary : std::ios::out);
        if (!file_)
            throw qmc::ConfigError("cannot open '" + path + "' for writing");
        stream_ = &file_;
    }

    std::ostream& stream() { return *stream_; }

private:
    std::ofstream file_;
    std::ostream* stream_ = nullptr;
};

void write_f32_le(std::ostream& out, float v)
{
    const auto bits = std::bit_cast<std::uint32_t>(v);
    const char bytes[4] = {
        static_cast<char>(bits & 0xff),
        static_cast<char>((bits >> 8) & 0xff),
        static_cast<char>((bits >> 16) & 0xff),
        static_cast<char>((bits >> 24) & 0xff),
    };
    out.write(bytes, 4);
}

int cmd_points(const SamplerOpts& opts, std::uint64_t n, const std::string& format,
               const std::string& out_path)
{
    if (format != "csv" && format != "bin")
        throw qmc::ConfigError("points: --format must be csv or bin");
    const qmc::SampleStream stream =
        resolve_stream(opts, static_cast<std::uint32_t>(std::min<std::uint64_t>(n, 1u << 30)));
    OutputFile out(out_path, format == "bin");
    for (std::uint64_t i = 0; i < n; ++i) {
        if (format == "csv") {
            std::string line;
            char buf[32];
            for (std::uint32_t j = 0; j < opts.dims; ++j) {
                std::snprintf(buf, sizeof buf, "%.9f", stream.sample(i, j));
                if (j)
                    line += ',';
                line += buf;
            }
            line += '\n';
            out.stream() << line;
        } else {
            for (std::uint32_t j = 0; j < opts.dims; ++j)
                write_f32_le(out.stream(), stream.sample(i, j));
        }
    }
    return 0;
}

int cmd_render(SamplerOpts opts, const std::string& size, std::uint32_t workers,
               const std::string& accum, const std::string& format, const std::string& out_path,
               const std::string& integrand)
{
    if (format != "pgm" && format != "ppm")
        throw qmc::ConfigError("render: --format must be pgm or ppm");
    const auto [w, h] = parse_pair(size, 'x', "--size");
    opts.size = size;
    opts.dims = 2;

    qmc::RenderJob job;
    job.width = w;
    job.height = h;
    job.spp = opts.spp;
    job.kind = qmc::sampler_kind_from_name(opts.sampler);
    job.integrand = integrand;
    job.workers = workers;
    job.accum = qmc::accum_mode_from_name(accum);
    job.seed = opts.seed;
    if (!opts.gv_file.empty())
        job.generator = resolve_generator(opts);
    if (!opts.dirnums_file.empty())
        job.matrices = resolve_matrices(opts);
    if (!opts.xor_file.empty())
        job.tables = resolve_xor_tables(opts, opts.spp);

    const qmc::ImageBuffer image = qmc::render(job);
    OutputFile out(out_path, true);
    if (format == "pgm")
        qmc::write_pgm(image, out.stream());
    else
        qmc::write_ppm(image, out.stream());
    return 0;
}

int cmd_check(const std::string& gv_file, std::uint32_t m_max)
{
    auto in = open_input(gv_file);
    const qmc::GeneratorVector g = qmc::load_generator_vector(in);
    const qmc::AdmissibilityReport report = qmc::check_admissible(g, m_max);
    for (const qmc::AdmissibilityLevel& level : report.levels) {
        std::printf("m=%2u unique=%s duplicates(first 2^(m-1))=%u duplicates(first 2^m)=%u "
                    "symmetry_pairs=%zu small_components=%zu\n",
                    level.m, level.unique_mod_ok ? "ok" : "VIOLATED",
                    level.duplicate_pairs_half, level.duplicate_pairs_full,
                    level.symmetry_collisions.size(), level.small_component_warnings.size());
        for (const auto& [j, k] : level.symmetry_collisions)
            std::printf("    symmetry: g[%u] = 2^%u - g[%u] (mod 2^%u)\n", j, level.m, k,
                        level.m);
        for (std::uint32_t j : level.small_component_warnings)
            std::printf("    small: g[%u] mod 2^%u below 2^%u/64\n", j, level.m, level.m);
    }
    if (!report.all_unique()) {
        std::printf("FAIL: duplicate components mod 2^m\n");
        return 1;
    }
    std::printf("OK: components unique mod 2^m for m <= %u\n", m_max);
    return 0;
}

int cmd_bench(const std::string& a, const std::string& b, std::uint64_t count,
              std::uint32_t dims, const std::string& format, const std::string& out_path)
{
    const qmc::BenchResult ra = qmc::run_bench_kernel(a, count, dims);
    const qmc::BenchResult rb = qmc::run_bench_kernel(b, count, dims);
    const double ratio = rb.components_per_second > 0.0
                             ? ra.components_per_second / rb.components_per_second
                             : 0.0;
    OutputFile out(out_path, false);
    if (format == "json") {
        json doc;
        doc["a"] = {{"kernel", ra.kernel},
                    {"evaluations", ra.evaluations},
                    {"seconds", ra.seconds},
                    {"components_per_second", ra.components_per_second},
                    {"checksum", ra.checksum}};
        doc["b"] = {{"kernel", rb.kernel},
                    {"evaluations", rb.evaluations},
                    {"seconds", rb.seconds},
                    {"components_per_second", rb.components_per_second},
                    {"checksum", rb.checksum}};
        doc["ratio_a_over_b"] = ratio;
        out.stream() << doc.dump(2) << "\n";
    } else {
        char line[256];
        std::snprintf(line, sizeof line, "A %-24s %12.3e comps/s checksum %016llx\n",
                      ra.kernel.c_str(), ra.components_per_second,
                      static_cast<unsigned long long>(ra.checksum));
        out.stream() << line;
        std::snprintf(line, sizeof line, "B %-24s %12.3e comps/s checksum %016llx\n",
                      rb.kernel.c_str(), rb.components_per_second,
                      static_cast<unsigned long long>(rb.checksum));
        out.stream() << line;
        std::snprintf(line, sizeof line, "ratio A/B = %.3f\n", ratio);
        out.stream() << line;
    }
    return 0;
}

int cmd_integrate(const SamplerOpts& opts, const std::string& integrand,
                  const std::string& schedule, std::uint32_t workers, const std::string& accum,
                  const std::string& format, const std::string& out_path)
{
    if (format != "csv" && format != "json")
        throw qmc::ConfigError("integrate: --format must be csv or json");
    std::vector<std::uint64_t> ns;
    std::stringstream ss(schedule);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty())
            continue;
        std::uint64_t value = 0;
        try {
            value = std::stoull(token);
        } catch (const std::exception&) {
            throw qmc::ConfigError("integrate: malformed schedule entry '" + token + "'");
        }
        if (value == 0)
            throw qmc::ConfigError("integrate: schedule entries must be >= 1");
        if (!ns.empty() && value <= ns.back())
            throw qmc::ConfigError("integrate: schedule must be strictly increasing");
        ns.push_back(value);
    }
    if (ns.empty())
        throw qmc::ConfigError("integrate: empty schedule");

    const qmc::TestIntegrand f = qmc::builtin_integrand(integrand, opts.dims);
    const qmc::AccumMode mode = qmc::accum_mode_from_name(accum);
    const std::uint32_t max_points =
        static_cast<std::uint32_t>(std::min<std::uint64_t>(ns.back(), 1u << 30));
    const qmc::SampleStream stream = resolve_stream(opts, max_points);

    std::vector<qmc::IntegrationRow> rows;
    rows.reserve(ns.size());
    for (std::uint64_t n : ns)
        rows.push_back(qmc::integrate(stream, f, n, mode, workers));

    OutputFile out(out_path, false);
    if (format == "json") {
        json doc;
        doc["sampler"] = opts.sampler;
        doc["integrand"] = f.name;
        doc["dims"] = opts.dims;
        doc["exact"] = f.exact_integral;
        doc["accum"] = accum;
        doc["rows"] = json::array();
        for (const qmc::IntegrationRow& row : rows)
            doc["rows"].push_back({{"n", row.n},
                                   {"estimate", row.estimate},
                                   {"abs_error", row.abs_error},
                                   {"seconds", row.seconds}});
        out.stream() << doc.dump(2) << "\n";
    } else {
        out.stream() << "n,estimate,exact,abs_error,seconds\n";
        for (const qmc::IntegrationRow& row : rows) {
            char line[160];
            std::snprintf(line, sizeof line, "%llu,%.17g,%.17g,%.17g,%.6f\n",
                          static_cast<unsigned long long>(row.n), row.estimate,
                          f.exact_integral, row.abs_error, row.seconds);
            out.stream() << line;
        }
    }
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"quasi-Monte Carlo point generation, quality checks, and benchmarks"};
    app.require_subcommand(1);

    SamplerOpts opts;
    int exit_code = 0;

    auto* points = app.add_subcommand("points", "write sample points");
    std::uint64_t n = 16;
    std::string points_format = "csv";
    std::string points_out = "-";
    add_sampler_flags(points, opts);
    points->add_option("--n", n, "number of points")->capture_default_str();
    points->add_option("--spp", opts.spp, "samples per pixel (halton-hilbert block size)")
        ->capture_default_str();
    points->add_option("--size", opts.size, "image size WxH (image-plane halton)");
    points->add_option("--format", points_format, "csv or bin")->capture_default_str();
    points->add_option("--out", points_out, "output file, - for stdout")->capture_default_str();
    points->callback([&]() { exit_code = cmd_points(opts, n, points_format, points_out); });

    auto* render = app.add_subcommand("render", "render the synthetic scene");
    std::string size = "64x64";
    std::uint32_t workers = 1;
    std::string accum = "kahan";
    std::string render_format = "pgm";
    std::string render_out = "image.pgm";
    std::string integrand = "scene";
    add_sampler_flags(render, opts);
    render->add_option("--spp", opts.spp, "samples per pixel")->capture_default_str();
    render->add_option("--size", size, "image size WxH")->capture_default_str();
    render->add_option("--workers", workers, "worker threads")->capture_default_str();
    render->add_option("--accum", accum, "kahan or int")->capture_default_str();
    render->add_option("--format", render_format, "pgm or ppm")->capture_default_str();
    render->add_option("--out", render_out, "output image file")->capture_default_str();
    render->add_option("--integrand", integrand, "scene function id")->capture_default_str();
    render->callback([&]() {
        exit_code = cmd_render(opts, size, workers, accum, render_format, render_out, integrand);
    });

    auto* check = app.add_subcommand("check", "admissibility report of a generator vector");
    std::string gv_file;
    std::uint32_t m_max = 16;
    check->add_option("--gv", gv_file, "generator vector file")->required();
    check->add_option("--m-max", m_max, "largest scale 2^m")->capture_default_str();
    check->callback([&]() { exit_code = cmd_check(gv_file, m_max); });

    auto* bench = app.add_subcommand("bench", "compare component generation throughput");
    std::string bench_a = "pixel-shifted-lattice";
    std::string bench_b = "halton-tabled";
    std::uint64_t count = 8000000;
    std::uint32_t bench_dims = 32;
    std::string bench_format = "text";
    std::string bench_out = "-";
    bench->add_option("--sampler-a", bench_a, "kernel A")->capture_default_str();
    bench->add_option("--sampler-b", bench_b, "kernel B")->capture_default_str();
    bench->add_option("--count", count, "component evaluations per kernel")
        ->capture_default_str();
    bench->add_option("--dims", bench_dims, "dimensions")->capture_default_str();
    bench->add_option("--format", bench_format, "text or json")->capture_default_str();
    bench->add_option("--out", bench_out, "output file, - for stdout")->capture_default_str();
    bench->callback([&]() {
        exit_code = cmd_bench(bench_a, bench_b, count, bench_dims, bench_format, bench_out);
    });

    auto* integrate = app.add_subcommand("integrate", "integration convergence report");
    std::string int_integrand = "product-sine";
    std::string schedule = "256,1024,4096";
    std::uint32_t int_workers = 1;
    std::string int_accum = "kahan";
    std::string int_format = "csv";
    std::string int_out = "-";
    add_sampler_flags(integrate, opts);
    integrate->add_option("--spp", opts.spp, "samples per pixel (halton-hilbert block size)")
        ->capture_default_str();
    integrate->add_option("--size", opts.size, "image size WxH (image-plane halton)");
    integrate->add_option("--integrand", int_integrand, "product-sine, product-poly, indicator")
        ->capture_default_str();
    integrate->add_option("--schedule", schedule, "comma-separated N values")
        ->capture_default_str();
    integrate->add_option("--workers", int_workers, "worker threads")->capture_default_str();
    integrate->add_option("--accum", int_accum, "kahan or int")->capture_default_str();
    integrate->add_option("--format", int_format, "csv or json")->capture_default_str();
    integrate->add_option("--out", int_out, "output file, - for stdout")->capture_default_str();
    integrate->callback([&]() {
        exit_code = cmd_integrate(opts, int_integrand, schedule, int_workers, int_accum,
                                  int_format, int_out);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const qmc::ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return exit_code;
}
