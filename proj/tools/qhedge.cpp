// qhedge: quantum image encodings and Hadamard edge detection from the shell.
//
//   qhedge edges  [options] <input> <output-prefix>
//   qhedge encode [options] <input>
//
// Exit codes: 0 success, 2 input error, 3 pipeline contract error.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "qhedge/encoders.hpp"
#include "qhedge/imageio.hpp"
#include "qhedge/manifest.hpp"
#include "qhedge/pipeline.hpp"

namespace {

using namespace qhedge;

constexpr int kExitInput = 2;
constexpr int kExitPipeline = 3;

struct EdgesArgs {
    std::string input;
    std::string output;
    std::string method = "frqi";
    std::string branch = "max-prob";
    std::uint64_t seed = 0;
    std::string boundary = "clipped";
    std::optional<double> threshold;
    std::string thr_mode = "signed-max";
    std::string first_edge = "per-grid";
    std::string ancilla = "plus";
    bool compare = false;
    std::string pad = "zero";
    bool rgb_angle = false;
    bool timing = false;
};

struct EncodeArgs {
    std::string input;
    std::string method = "frqi";
    std::string pad = "zero";
    bool rgb_angle = false;
    bool all = false;
    std::string out;
};

// input | traditional | modified, separated by 2-pixel mid-gray bars.
std::vector<std::uint8_t> montage(const GrayImage &img, const EdgeMap &trad, const EdgeMap &mod,
                                  std::size_t &width) {
    constexpr std::size_t gap = 2;
    const std::size_t side = img.side();
    width = 3 * side + 2 * gap;
    std::vector<std::uint8_t> out(width * side, 128);
    const auto a = io::to_gray8(img);
    const auto b = io::to_gray8(trad);
    const auto c = io::to_gray8(mod);
    for (std::size_t r = 0; r < side; ++r) {
        for (std::size_t col = 0; col < side; ++col) {
            out[r * width + col] = a[r * side + col];
            out[r * width + side + gap + col] = b[r * side + col];
            out[r * width + 2 * (side + gap) + col] = c[r * side + col];
        }
    }
    return out;
}

int run_edges_cmd(const EdgesArgs &args) {
    const auto start = std::chrono::steady_clock::now();

    RunManifest manifest;
    manifest.input = args.input;
    manifest.load.fit = names::parse<io::FitMode>(args.pad);
    manifest.load.rgb_angle = args.rgb_angle;

    EdgeOptions &opts = manifest.options;
    opts.pipeline.method = names::parse<EncodingMethod>(args.method);
    opts.pipeline.branch = {names::parse<BranchPolicy>(args.branch), args.seed};
    opts.pipeline.boundary = names::parse<BoundaryMode>(args.boundary);
    opts.pipeline.ancilla = names::parse<AncillaPrep>(args.ancilla);
    opts.threshold_mode = names::parse<ThresholdMode>(args.thr_mode);
    opts.first_edge = names::parse<FirstEdgeScope>(args.first_edge);
    if (args.threshold) {
        if (!(*args.threshold >= 0.0))
            throw ValidationError("--threshold must be non-negative");
        opts.threshold_override = args.threshold;
    }

    const io::Raster raster = io::read_raster(args.input);
    manifest.source_width = raster.width;
    manifest.source_height = raster.height;
    const GrayImage img = io::raster_to_gray(raster, manifest.load);
    manifest.side = img.side();

    const EdgeRun run = run_edges(img, opts);

    const std::string prefix = args.output;
    auto emit = [&](const std::string &suffix) {
        manifest.outputs.push_back(std::filesystem::path(prefix + suffix).filename().string());
        return prefix + suffix;
    };
    io::save_edge_map(run.edges, emit(".edges.pgm"));
    io::save_edge_map(run.horizontal.modified, emit(".h.pgm"));
    io::save_edge_map(run.vertical.modified, emit(".v.pgm"));
    if (args.compare) {
        io::save_edge_map(run.traditional, emit(".traditional.pgm"));
        std::size_t width = 0;
        const auto strip = montage(img, run.traditional, run.edges, width);
        io::save_gray8(emit(".montage.pgm"), width, img.side(), strip);
    }
    const std::string manifest_path = emit(".manifest.json");

    if (args.timing) {
        const auto elapsed = std::chrono::steady_clock::now() - start;
        manifest.timing_ms = std::chrono::duration<double, std::milli>(elapsed).count();
    }
    std::ofstream out(manifest_path, std::ios::trunc);
    if (!out)
        throw InputError("cannot open " + manifest_path + " for writing");
    out << to_json(manifest, run).dump(2) << '\n';

    std::cerr << "qhedge: " << run.edges.count() << " edge pixels (" << run.traditional.count()
              << " traditional) on a " << img.side() << "x" << img.side() << " image\n";
    return 0;
}

std::string bitstring(std::size_t index, std::size_t width) {
    std::string s(width, '0');
    for (std::size_t q = 0; q < width; ++q)
        if ((index >> q) & 1u)
            s[width - 1 - q] = '1';
    return s;
}

int run_encode_cmd(const EncodeArgs &args) {
    io::LoadOptions load;
    load.fit = names::parse<io::FitMode>(args.pad);
    load.rgb_angle = args.rgb_angle;
    const GrayImage img = io::load_image(args.input, load);

    std::optional<StateVector> state;
    if (args.method == "qpie") {
        state = qpie_encode(img);
    } else if (args.method == "frqi") {
        state = frqi_encode(intensities_to_angles(img));
    } else if (args.method == "neqr") {
        std::vector<std::uint8_t> levels;
        levels.reserve(img.size());
        for (double v : img.pixels())
            levels.push_back(static_cast<std::uint8_t>(std::lround(v * 255.0)));
        state = neqr_encode(ByteImage(img.side(), std::move(levels))).state();
    } else {
        throw ValidationError("unknown encoding '" + args.method + "'");
    }

    std::ofstream file;
    if (!args.out.empty()) {
        file.open(args.out, std::ios::trunc);
        if (!file)
            throw InputError("cannot open " + args.out + " for writing");
    }
    std::ostream &os = args.out.empty() ? std::cout : file;
    os << "index,bitstring,real,imag\n" << std::setprecision(12);
    const auto amps = state->amplitudes();
    for (std::size_t i = 0; i < amps.size(); ++i) {
        if (!args.all && std::abs(amps[i]) <= kIdentityTolerance)
            continue;
        os << i << ',' << bitstring(i, state->num_qubits()) << ',' << amps[i].real() << ','
           << amps[i].imag() << '\n';
    }
    return 0;
}

} // namespace

int main(int argc, char **argv) {
    CLI::App app{"Quantum image encodings and Hadamard edge detection"};
    app.require_subcommand(1);

    EdgesArgs ea;
    auto *edges = app.add_subcommand("edges", "Detect edges and write edge maps plus a manifest");
    edges->add_option("input", ea.input, "PGM/PPM/PNG input image")->required();
    edges->add_option("output", ea.output, "Output path prefix")->required();
    edges->add_option("--method", ea.method, "Encoding")
        ->check(CLI::IsMember(names::choices<EncodingMethod>()));
    edges->add_option("--branch", ea.branch, "Measurement branch policy (frqi)")
        ->check(CLI::IsMember(names::choices<BranchPolicy>()));
    edges->add_option("--seed", ea.seed, "Seed for --branch sampled");
    edges->add_option("--boundary", ea.boundary, "Row-end handling")
        ->check(CLI::IsMember(names::choices<BoundaryMode>()));
    edges->add_option("--threshold", ea.threshold, "Fixed threshold replacing the dynamic one");
    edges->add_option("--thr-mode", ea.thr_mode, "Dynamic threshold maximum")
        ->check(CLI::IsMember(names::choices<ThresholdMode>()));
    edges->add_option("--first-edge", ea.first_edge, "Scope of the first-edge sign")
        ->check(CLI::IsMember(names::choices<FirstEdgeScope>()));
    edges->add_option("--ancilla", ea.ancilla, "Ancilla preparation before its Hadamard")
        ->check(CLI::IsMember(names::choices<AncillaPrep>()));
    edges->add_flag("--compare", ea.compare, "Also write the traditional map and a montage");
    edges->add_option("--pad", ea.pad, "Fit to a power-of-two square by zero padding or cropping")
        ->check(CLI::IsMember(names::choices<io::FitMode>()));
    edges->add_flag("--rgb-angle", ea.rgb_angle, "Use the base-256 RGB angle map for color input");
    edges->add_flag("--timing", ea.timing, "Record wall time in the manifest");

    EncodeArgs ca;
    auto *encode = app.add_subcommand("encode", "Print the statevector of an encoded image");
    encode->add_option("input", ca.input, "PGM/PPM/PNG input image")->required();
    encode->add_option("--method", ca.method, "Encoding")
        ->check(CLI::IsMember({"qpie", "frqi", "neqr"}));
    encode->add_option("--pad", ca.pad, "Fit mode")->check(
        CLI::IsMember(names::choices<io::FitMode>()));
    encode->add_flag("--rgb-angle", ca.rgb_angle, "Use the base-256 RGB angle map");
    encode->add_flag("--all", ca.all, "Include zero amplitudes");
    encode->add_option("--out", ca.out, "Write CSV here instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*edges)
            return run_edges_cmd(ea);
        return run_encode_cmd(ca);
    } catch (const Error &e) {
        std::cerr << "qhedge: " << e.what() << '\n';
        return e.is_input_error() ? kExitInput : kExitPipeline;
    } catch (const std::exception &e) {
        std::cerr << "qhedge: " << e.what() << '\n';
        return kExitPipeline;
    }
}
