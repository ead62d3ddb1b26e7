// handdepth: run the hand pipeline on depth frames, synthesize scenes,
// benchmark against ground truth and convert between frame formats.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "handdepth/benchmark.hpp"
#include "handdepth/errors.hpp"
#include "handdepth/frame_io.hpp"
#include "handdepth/pipeline.hpp"
#include "handdepth/synth.hpp"

namespace fs = std::filesystem;
using namespace handdepth;

namespace {

constexpr int kExitFormat = 1;
constexpr int kExitConfig = 2;

struct RawDims {
    int width = 0;
    int height = 0;
};

std::optional<RawDims> parse_dims(const std::string& text) {
    if (text.empty())
        return std::nullopt;
    int w = 0;
    int h = 0;
    char sep = 0;
    if (std::sscanf(text.c_str(), "%d%c%d", &w, &sep, &h) != 3 || (sep != 'x' && sep != 'X') ||
        w < 1 || h < 1)
        throw ConfigError("--raw-dims expects WxH, got \"" + text + "\"");
    return RawDims{w, h};
}

bool is_raw_path(const fs::path& p) {
    return p.extension() == ".r16" || p.extension() == ".raw";
}

DepthFrame load_frame(const fs::path& path, const std::optional<RawDims>& dims) {
    const Bytes bytes = read_file(path.string());
    if (is_raw_path(path)) {
        if (!dims)
            throw ConfigError("raw input " + path.string() + " needs --raw-dims WxH");
        return read_raw(bytes, dims->width, dims->height);
    }
    PgmDecode decoded = read_pgm(bytes);
    if (decoded.clamped)
        std::cerr << "warning: " << path.string() << ": " << decoded.clamped
                  << " samples above 2047 clamped to the sentinel\n";
    return std::move(decoded.frame);
}

std::vector<fs::path> list_inputs(const fs::path& input) {
    if (!fs::is_directory(input))
        return {input};
    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(input))
        if (entry.is_regular_file() &&
            (entry.path().extension() == ".pgm" || is_raw_path(entry.path())))
            files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    return files;
}

PipelineConfig load_config(const std::string& path) {
    if (path.empty())
        return {};
    const Bytes bytes = read_file(path);
    return config_from_json(std::string(bytes.begin(), bytes.end()));
}

std::string frame_name(std::size_t i, const char* ext) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "frame_%04zu%s", i, ext);
    return buf;
}

nlohmann::ordered_json truth_json(const std::vector<GroundTruth>& truths) {
    nlohmann::ordered_json hands = nlohmann::ordered_json::array();
    for (const GroundTruth& t : truths) {
        nlohmann::ordered_json tips = nlohmann::ordered_json::array();
        for (const Point& p : t.fingertips)
            tips.push_back({{"x", p.x}, {"y", p.y}});
        hands.push_back({{"palm_center", {{"x", t.palm_center.x}, {"y", t.palm_center.y}}},
                         {"palm_inradius", t.palm_inradius},
                         {"fingertips", tips},
                         {"finger_widths", t.finger_widths},
                         {"orientation_deg", t.orientation_deg}});
    }
    return hands;
}

Corpus load_or_generate(const std::string& spec_path, int generate, std::uint64_t seed) {
    if (!spec_path.empty()) {
        const Bytes bytes = read_file(spec_path);
        return corpus_from_json(std::string(bytes.begin(), bytes.end()));
    }
    CorpusOptions options;
    options.count = generate;
    options.seed = seed;
    return generate_corpus(options);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Depth-frame hand analysis: palm centers and fingertips"};
    app.require_subcommand(1);

    std::string input, raw_dims, config_path, out_report, out_overlay_dir;
    std::optional<int> max_hands, threads;
    std::uint64_t seed = 1;

    auto* detect = app.add_subcommand("detect", "Detect hands in depth frames");
    detect->add_option("--input", input, "Frame file or directory of .pgm/.r16 frames")->required();
    detect->add_option("--raw-dims", raw_dims, "Dimensions of headerless raw frames, WxH");
    detect->add_option("--config", config_path, "Pipeline config JSON");
    detect->add_option("--out-report", out_report, "JSON Lines report path (default stdout)");
    detect->add_option("--out-overlay-dir", out_overlay_dir, "Directory for annotated PPM overlays");
    detect->add_option("--max-hands", max_hands, "Hands per frame")->check(CLI::Range(1, 2));
    detect->add_option("--threads", threads, "Worker threads")->check(CLI::PositiveNumber);

    std::string spec_path, out_dir;
    int generate = 0;
    auto* synth = app.add_subcommand("synth", "Render a scene corpus to frames plus ground truth");
    synth->add_option("--spec", spec_path, "Corpus JSON (HandSpec fields)");
    synth->add_option("--generate", generate, "Generate the standard corpus with N scenes");
    synth->add_option("--seed", seed, "Seed for --generate");
    synth->add_option("--out-dir", out_dir, "Output directory")->required();

    std::string bench_out;
    auto* bench = app.add_subcommand("bench", "Score the pipeline on a synthetic corpus");
    bench->add_option("--spec", spec_path, "Corpus JSON");
    bench->add_option("--generate", generate, "Generate the standard corpus with N scenes");
    bench->add_option("--seed", seed, "Seed for --generate");
    bench->add_option("--config", config_path, "Pipeline config JSON");
    bench->add_option("--max-hands", max_hands, "Hands per frame")->check(CLI::Range(1, 2));
    bench->add_option("--out", bench_out, "Metrics JSON path (default stdout)");

    std::string to_format, output;
    auto* convert = app.add_subcommand("convert", "Convert a frame between pgm, raw and overlay");
    convert->add_option("--input", input, "Frame file")->required();
    convert->add_option("--raw-dims", raw_dims, "Dimensions of a headerless raw input, WxH");
    convert->add_option("--to", to_format, "pgm | raw | overlay")
        ->required()
        ->check(CLI::IsMember({"pgm", "raw", "overlay"}));
    convert->add_option("--output", output, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (*detect) {
            PipelineConfig config = load_config(config_path);
            if (max_hands)
                config.max_hands = *max_hands;
            if (threads)
                config.threads = *threads;
            if (!out_overlay_dir.empty())
                config.write_overlays = true;
            config.validate();
            const auto dims = parse_dims(raw_dims);
            const auto files = list_inputs(input);
            std::vector<DepthFrame> frames;
            for (const auto& f : files)
                frames.push_back(load_frame(f, dims));
            const auto outputs = run_pipeline(frames, config);

            std::string lines;
            for (std::size_t i = 0; i < outputs.size(); ++i) {
                for (const auto& w : outputs[i].warnings)
                    std::cerr << "warning: frame " << i << ": " << w << "\n";
                lines += write_report(outputs[i].report) + "\n";
            }
            if (out_report.empty())
                std::cout << lines;
            else
                write_file(out_report, lines);
            if (config.write_overlays && !out_overlay_dir.empty()) {
                fs::create_directories(out_overlay_dir);
                for (std::size_t i = 0; i < outputs.size(); ++i)
                    write_file((fs::path(out_overlay_dir) / frame_name(i, ".ppm")).string(),
                               outputs[i].overlay);
            }
        } else if (*synth) {
            if (spec_path.empty() == (generate == 0))
                throw ConfigError("synth needs exactly one of --spec or --generate");
            const Corpus corpus = load_or_generate(spec_path, generate, seed);
            fs::create_directories(out_dir);
            nlohmann::ordered_json truth = nlohmann::ordered_json::array();
            for (std::size_t i = 0; i < corpus.scenes.size(); ++i) {
                const RenderedScene scene = render(corpus, corpus.scenes[i]);
                write_file((fs::path(out_dir) / frame_name(i, ".pgm")).string(), write_pgm(scene.frame));
                truth.push_back({{"frame", frame_name(i, ".pgm")}, {"hands", truth_json(scene.truths)}});
            }
            write_file((fs::path(out_dir) / "ground_truth.json").string(), truth.dump(2) + "\n");
            write_file((fs::path(out_dir) / "corpus.json").string(), corpus_to_json(corpus));
        } else if (*bench) {
            if (spec_path.empty() && generate == 0)
                generate = 200;
            PipelineConfig config = load_config(config_path);
            if (max_hands)
                config.max_hands = *max_hands;
            config.validate();
            const Corpus corpus = load_or_generate(spec_path, generate, seed);
            const auto start = std::chrono::steady_clock::now();
            const BenchmarkMetrics metrics = run_benchmark(corpus, config);
            const double seconds =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
            std::cerr << "benchmarked " << metrics.scenes << " scenes in " << seconds << " s\n";
            if (bench_out.empty())
                std::cout << metrics.to_json();
            else
                write_file(bench_out, metrics.to_json());
        } else if (*convert) {
            const DepthFrame frame = load_frame(input, parse_dims(raw_dims));
            if (to_format == "pgm")
                write_file(output, write_pgm(frame));
            else if (to_format == "raw")
                write_file(output, write_raw(frame));
            else
                write_file(output, write_overlay(frame, {}));
        }
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
    } catch (const FormatError& e) {
        std::cerr << "format error: " << e.what() << "\n";
        return kExitFormat;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitFormat;
    }
    return 0;
}
