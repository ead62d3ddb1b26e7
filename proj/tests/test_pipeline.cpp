#include <doctest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <string>

#include "handdepth/benchmark.hpp"
#include "handdepth/errors.hpp"
#include "handdepth/frame_io.hpp"
#include "handdepth/pipeline.hpp"
#include "handdepth/synth.hpp"

using namespace handdepth;

namespace {

HandSpec hand_at(double x, double y, int fingers = 5) {
    HandSpec h;
    h.palm_center = {x, y};
    h.palm_radius = 18;
    h.finger_count = fingers;
    for (int i = 0; i < fingers; ++i) {
        h.finger_lengths.push_back(24);
        h.finger_widths.push_back(7);
    }
    h.base_depth_cm = 80;
    return h;
}

double dist(Point a, Point b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

}  // namespace

TEST_CASE("frame without valid depth yields no hands") {
    const DepthFrame empty(64, 48);
    const FrameAnalysis a = analyze_frame(empty, {});
    CHECK(a.hands.empty());
    const auto out = run_pipeline(std::span<const DepthFrame>(&empty, 1), {});
    REQUIRE(out.size() == 1);
    CHECK(out[0].report.hands.empty());
    CHECK(write_report(out[0].report) == R"({"frame_index":0,"hands":[]})");
}

TEST_CASE("five-finger hand gives five tips near ground truth") {
    const RenderedHand r = render_hand(hand_at(100, 100), 200, 200, 200.0);
    const FrameAnalysis a = analyze_frame(r.frame, {});
    REQUIRE(a.hands.size() == 1);
    const HandAnalysis& h = a.hands[0];
    REQUIRE(h.fingertips.tips.size() == 5);
    CHECK(dist(h.palm_center.position, r.truth.palm_center) <= 0.25 * 18);
    for (const Point& t : r.truth.fingertips) {
        double best = 1e9;
        for (const Fingertip& f : h.fingertips.tips)
            best = std::min(best, dist(f.position, t));
        CHECK(best <= 3.5);
    }
}

TEST_CASE("two hands are labelled Right/white and Left/pink") {
    const RenderedScene s =
        render_scene({hand_at(70, 100), hand_at(230, 100, 3)}, 300, 200, 200.0, 1, 0.0);
    const auto out = run_pipeline(std::span<const DepthFrame>(&s.frame, 1), {});
    REQUIRE(out[0].report.hands.size() == 2);
    const HandReport& right = out[0].report.hands[0];
    const HandReport& left = out[0].report.hands[1];
    CHECK(right.id == HandId::Right);
    CHECK(right.overlay_color == kWhite);
    CHECK(right.palm.position.x > 150);
    CHECK(right.fingertips.tips.size() == 3);
    CHECK(left.id == HandId::Left);
    CHECK(left.overlay_color == kPink);
    CHECK(left.fingertips.tips.size() == 5);
}

TEST_CASE("max_hands = 1 keeps the nearest hand as Single") {
    HandSpec far = hand_at(230, 100, 3);
    far.base_depth_cm = 100;
    const RenderedScene s = render_scene({hand_at(70, 100), far}, 300, 200, 200.0, 1, 0.0);
    PipelineConfig cfg;
    cfg.max_hands = 1;
    const auto out = run_pipeline(std::span<const DepthFrame>(&s.frame, 1), cfg);
    REQUIRE(out[0].report.hands.size() == 1);
    CHECK(out[0].report.hands[0].id == HandId::Single);
    CHECK(out[0].report.hands[0].palm.position.x < 150);
}

TEST_CASE("config JSON round trip and validation") {
    PipelineConfig c;
    c.band_cm = 12.5;
    c.calibration.raw_valid_max = 1050;
    c.threads = 3;
    CHECK(config_from_json(config_to_json(c)) == c);
    CHECK(config_from_json("{}") == PipelineConfig{});
    CHECK_THROWS_AS(config_from_json(R"({"band":3})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"calibration":{"q":1}})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"band_cm":-1})"), ConfigError);
    CHECK_THROWS_AS(config_from_json(R"({"max_hands":3})"), ConfigError);
    CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
}

TEST_CASE("pipeline output does not depend on thread count") {
    CorpusOptions o;
    o.count = 12;
    o.seed = 5;
    const Corpus c = generate_corpus(o);
    std::vector<DepthFrame> frames;
    for (const SceneSpec& s : c.scenes)
        frames.push_back(render(c, s).frame);
    PipelineConfig one;
    one.write_overlays = true;
    PipelineConfig four = one;
    four.threads = 4;
    const auto a = run_pipeline(frames, one);
    const auto b = run_pipeline(frames, four);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(write_report(a[i].report) == write_report(b[i].report));
        CHECK(a[i].overlay == b[i].overlay);
        CHECK_FALSE(a[i].overlay.empty());
    }
}

TEST_CASE("empty corpus benchmark has zero metrics") {
    const BenchmarkMetrics m = run_benchmark(Corpus{}, {});
    CHECK(m.scenes == 0);
    CHECK(m.true_tips == 0);
    CHECK(m.count_recall() == 0.0);
    CHECK(m.count_precision() == 0.0);
    CHECK(m.per_orientation.size() == 8);
}

TEST_CASE("small corpus benchmark scores perfectly without noise") {
    CorpusOptions o;
    o.count = 10;
    o.dropout_rate = 0.0;
    const BenchmarkMetrics m = run_benchmark(generate_corpus(o), {});
    CHECK(m.scenes == 10);
    CHECK(m.count_recall() == 1.0);
    CHECK(m.count_precision() == 1.0);
    CHECK(m.palm_within_fraction() == 1.0);
}

#ifdef HANDDEPTH_CLI_PATH
namespace {

int run(const std::string& args) {
    const std::string cmd = std::string(HANDDEPTH_CLI_PATH) + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("command line exit codes") {
    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / "handdepth_cli_test";
    fs::remove_all(dir);
    fs::create_directories(dir);
    const std::string d = dir.string();

    CHECK(run("synth --generate 3 --seed 2 --out-dir " + d + "/synth") == 0);
    CHECK(fs::exists(dir / "synth" / "frame_0000.pgm"));
    CHECK(fs::exists(dir / "synth" / "ground_truth.json"));
    CHECK(run("detect --input " + d + "/synth --out-report " + d + "/r.jsonl --out-overlay-dir " +
              d + "/ov") == 0);
    CHECK(fs::exists(dir / "ov" / "frame_0000.ppm"));
    CHECK(run("convert --input " + d + "/synth/frame_0001.pgm --to raw --output " + d +
              "/f.r16") == 0);
    CHECK(run("detect --input " + d + "/f.r16 --raw-dims 320x240 --out-report " + d +
              "/r2.jsonl") == 0);
    CHECK(run("bench --spec " + d + "/synth/corpus.json --out " + d + "/m.json") == 0);

    write_file(d + "/bad.pgm", std::string("P2\n1 1\n255\n0\n"));
    CHECK(run("detect --input " + d + "/bad.pgm") == 1);
    write_file(d + "/bad.json", std::string(R"({"band_cm":-4})"));
    CHECK(run("detect --input " + d + "/synth --config " + d + "/bad.json") == 2);
    CHECK(run("detect --input " + d + "/f.r16") == 2);
    CHECK(run("--no-such-flag") == 2);
    fs::remove_all(dir);
}
#endif
