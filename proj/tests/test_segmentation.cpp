#include <doctest.h>

#include <map>
#include <random>

#include "handdepth/errors.hpp"
#include "handdepth/segmentation.hpp"
#include "handdepth/synth.hpp"
#include "oracles.hpp"

using namespace handdepth;

namespace {

// Same partition, same raster-order labels.
bool matches_flood_fill(const BinaryMask& m) {
    const std::vector<int> expected = oracle::flood_labels(m);
    std::vector<int> got(expected.size(), 0);
    for (const Blob& b : connected_components(m))
        for (const Point& p : b.pixels)
            got[static_cast<std::size_t>(p.y) * m.width() + p.x] = b.label;
    return got == expected;
}

HandSpec five_finger_hand() {
    HandSpec h;
    h.palm_center = {80, 70};
    h.palm_radius = 16;
    h.finger_count = 5;
    h.finger_lengths = {22, 26, 28, 26, 20};
    h.finger_widths = {6, 6, 6, 6, 6};
    h.base_depth_cm = 80;
    h.tip_slope = 2;
    return h;
}

}  // namespace

TEST_CASE("depth_threshold basics") {
    const DepthFrame uniform(8, 6, 600);
    const HandSeed seed{{3, 3}, 600};
    CHECK(depth_threshold(uniform, seed, 15.0).count() == 48);

    DepthFrame sparse(8, 6, kSentinel);
    sparse.set(3, 3, 600);
    const BinaryMask only = depth_threshold(sparse, seed, 15.0);
    CHECK(only.count() == 1);
    CHECK(only.test(3, 3));

    CHECK_THROWS_AS(depth_threshold(uniform, HandSeed{{0, 0}, kSentinel}, 15.0), DomainError);
    CHECK_THROWS_AS(depth_threshold(uniform, seed, 0.0), std::invalid_argument);
}

TEST_CASE("depth_threshold isolates a synthetic hand exactly") {
    const RenderedHand r = render_hand(five_finger_hand(), 160, 140, 200.0);
    HandSeed seed = find_hand_seeds(r.frame, {1, 50, 20.0}).at(0);
    CHECK(depth_threshold(r.frame, seed, 15.0) == r.truth.support);
}

TEST_CASE("depth_threshold is idempotent on a frame of seed depth") {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 20; ++i) {
        std::vector<RawDepth> s(30 * 20);
        for (auto& v : s)
            v = static_cast<RawDepth>(400 + rng() % 400);
        const DepthFrame f(30, 20, s);
        const HandSeed seed{{4, 4}, f.at(4, 4)};
        const BinaryMask once = depth_threshold(f, seed, 10.0);
        DepthFrame again(30, 20, kSentinel);
        for (int y = 0; y < 20; ++y)
            for (int x = 0; x < 30; ++x)
                if (once.test(x, y))
                    again.set(x, y, seed.depth_raw);
        REQUIRE(depth_threshold(again, seed, 10.0) == once);
    }
}

TEST_CASE("connected_components basics") {
    CHECK(connected_components(BinaryMask(5, 5)).empty());
    BinaryMask diag(3, 3);
    diag.set(0, 0);
    diag.set(1, 1);
    const auto blobs = connected_components(diag);
    REQUIRE(blobs.size() == 1);
    CHECK(blobs[0].area() == 2);
    CHECK(blobs[0].bbox == BoundingBox{0, 0, 1, 1});
    CHECK(blobs[0].centroid.x == doctest::Approx(0.5));
}

TEST_CASE("connected_components U shape merges late") {
    BinaryMask u(5, 3);
    for (int y = 0; y < 3; ++y) {
        u.set(0, y);
        u.set(4, y);
    }
    for (int x = 0; x < 5; ++x)
        u.set(x, 2);
    u.set(2, 0);  // separate island, second in raster order
    const auto blobs = connected_components(u);
    REQUIRE(blobs.size() == 2);
    CHECK(blobs[0].pixels.front() == Point{0, 0});
    CHECK(blobs[1].pixels.front() == Point{2, 0});
    CHECK(matches_flood_fill(u));
}

TEST_CASE("connected_components equals flood fill on all 4x4 masks") {
    for (unsigned bits = 0; bits < (1u << 16); ++bits)
        REQUIRE(matches_flood_fill(oracle::mask_4x4(bits)));
}

TEST_CASE("connected_components equals flood fill on random masks") {
    std::mt19937_64 rng(2024);
    for (int i = 0; i < 300; ++i) {
        const double density = 0.2 + 0.6 * static_cast<double>(i % 7) / 6.0;
        const BinaryMask m = oracle::random_mask(rng, 16 + i % 17, 16 + i % 13, density);
        REQUIRE(matches_flood_fill(m));
        // Blobs partition the foreground.
        std::size_t total = 0;
        for (const Blob& b : connected_components(m))
            total += b.area();
        REQUIRE(total == m.count());
    }
}

TEST_CASE("select_hand_blob") {
    BinaryMask m(6, 3);
    m.set(0, 0);
    m.set(4, 2);
    m.set(5, 2);
    const auto blobs = connected_components(m);
    CHECK(select_hand_blob(blobs, HandSeed{{5, 2}, 1}).label == 2);
    CHECK(select_hand_blob(blobs, HandSeed{{0, 0}, 1}).contains({0, 0}));
    CHECK_THROWS_AS(select_hand_blob(blobs, HandSeed{{2, 1}, 1}), NotFound);
}

TEST_CASE("find_hand_seeds") {
    CHECK_THROWS_AS(find_hand_seeds(DepthFrame(20, 20), {}), NotFound);
    CHECK_THROWS_AS(find_hand_seeds(DepthFrame(20, 20, 500), {3, 10, 20.0}), std::invalid_argument);

    SUBCASE("one hand") {
        const RenderedHand r = render_hand(five_finger_hand(), 160, 140, 200.0);
        const auto seeds = find_hand_seeds(r.frame, {2, 50, 20.0});
        REQUIRE(seeds.size() == 1);
        CHECK(r.truth.support.test(seeds[0].position));
        // The seed is the nearest sample.
        for (RawDepth v : r.frame.samples())
            CHECK(v >= seeds[0].depth_raw);
    }

    SUBCASE("two hands at similar depth") {
        HandSpec a = five_finger_hand();
        HandSpec b = five_finger_hand();
        a.palm_center = {70, 80};
        b.palm_center = {210, 80};
        b.base_depth_cm = 84;
        const RenderedScene s = render_scene({a, b}, 280, 150, 200.0, 1, 0.0);
        const auto seeds = find_hand_seeds(s.frame, {2, 50, 20.0});
        REQUIRE(seeds.size() == 2);
        const bool first_in_a = s.truths[0].support.test(seeds[0].position);
        CHECK(s.truths[first_in_a ? 1 : 0].support.test(seeds[1].position));

        // Each seed selects its own blob.
        for (const HandSeed& seed : seeds) {
            const auto blobs = connected_components(depth_threshold(s.frame, seed, 15.0));
            const Blob& blob = select_hand_blob(blobs, seed);
            const GroundTruth& t = s.truths[s.truths[0].support.test(seed.position) ? 0 : 1];
            CHECK(blob.area() == t.support.count());
        }
    }

    SUBCASE("small components are ignored") {
        DepthFrame f(30, 30, 1000);
        f.set(2, 2, 500);
        CHECK_THROWS_AS(find_hand_seeds(f, {1, 5, 20.0}), NotFound);
    }
}
