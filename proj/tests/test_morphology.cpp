#include <doctest.h>

#include <random>

#include "handdepth/errors.hpp"
#include "handdepth/morphology.hpp"
#include "handdepth/synth.hpp"
#include "oracles.hpp"

using namespace handdepth;

namespace {

BinaryMask disk_mask(int w, int h, Point c, int r) {
    BinaryMask m(w, h);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if ((x - c.x) * (x - c.x) + (y - c.y) * (y - c.y) <= r * r)
                m.set(x, y);
    return m;
}

}  // namespace

TEST_CASE("disk element") {
    const DiskElement zero(0);
    CHECK(zero.offsets.size() == 1);
    const DiskElement two(2);
    CHECK(two.offsets.size() == 13);
    for (const Point& p : two.offsets) {
        bool mirrored = false;
        for (const Point& q : two.offsets)
            mirrored = mirrored || (q.x == -p.x && q.y == -p.y);
        CHECK(mirrored);
    }
}

TEST_CASE("erode and dilate edge cases") {
    std::mt19937_64 rng(3);
    const BinaryMask m = oracle::random_mask(rng, 12, 9, 0.5);
    CHECK(erode(m, DiskElement(0)) == m);
    CHECK(dilate(m, DiskElement(0)) == m);
    const BinaryMask full(10, 10, true);
    CHECK(is_subset(dilate(erode(full, DiskElement(2)), DiskElement(2)), full));
    CHECK(erode(full, DiskElement(1)).count() == 64);  // border meets outside background
    CHECK(dilate(BinaryMask(5, 5), DiskElement(3)).empty());
}

TEST_CASE("erode and dilate equal the set-definition oracle") {
    std::mt19937_64 rng(77);
    for (int i = 0; i < 300; ++i) {
        const BinaryMask m = oracle::random_mask(rng, 24, 24, 0.3 + 0.5 * (i % 5) / 4.0);
        const int r = 1 + i % 3;
        REQUIRE(erode(m, DiskElement(r)) == oracle::brute_erode(m, r));
        REQUIRE(dilate(m, DiskElement(r)) == oracle::brute_dilate(m, r));
    }
}

TEST_CASE("opening is anti-extensive and idempotent; duality on padded masks") {
    std::mt19937_64 rng(78);
    for (int i = 0; i < 200; ++i) {
        const BinaryMask m = oracle::random_mask(rng, 20, 18, 0.65);
        const DiskElement e(1 + i % 4);
        const BinaryMask once = open(m, e);
        REQUIRE(is_subset(once, m));
        REQUIRE(open(once, e) == once);

        const BinaryMask padded = pad(m, e.radius + 1);
        REQUIRE(erode(padded, e) == complement(dilate(complement(padded), e)));
    }
}

TEST_CASE("extract_palm") {
    const BinaryMask disk = disk_mask(48, 48, {24, 24}, 20);
    const BinaryMask palm = extract_palm(disk, 10);
    CHECK(palm == oracle::brute_dilate(oracle::brute_erode(disk, 10), 10));
    CHECK(is_subset(disk_mask(48, 48, {24, 24}, 19), palm));
    CHECK(is_subset(palm, disk));
    CHECK_THROWS_AS(extract_palm(disk, 21), EmptyResult);
    CHECK_THROWS_AS(extract_palm(disk, 0), std::invalid_argument);
}

TEST_CASE("extract_palm on a synthetic hand keeps the palm and drops tips") {
    HandSpec h;
    h.palm_center = {70, 75};
    h.palm_radius = 18;
    h.finger_count = 5;
    h.finger_lengths = {20, 26, 30, 26, 18};
    h.finger_widths = {7, 7, 7, 7, 7};
    h.orientation_deg = 25;
    const RenderedHand r = render_hand(h, 150, 150, 200.0);
    const BinaryMask palm =
        extract_palm(r.truth.support, static_cast<int>(std::lround(0.7 * h.palm_radius)));
    CHECK(palm.test(r.truth.palm_center));
    for (const Point& tip : r.truth.fingertips)
        CHECK_FALSE(palm.test(tip));
    CHECK(is_subset(palm, r.truth.support));

    const auto fingers = finger_masks(r.truth.support, palm, r.truth.palm_center,
                                      default_min_finger_area(r.truth.support.count()));
    CHECK(fingers.size() == 5);
    // Disjoint from each other and from the palm, ordered by angle.
    for (std::size_t i = 0; i < fingers.size(); ++i)
        for (const Point& p : fingers[i].pixels) {
            REQUIRE_FALSE(palm.test(p));
            for (std::size_t j = i + 1; j < fingers.size(); ++j)
                REQUIRE_FALSE(fingers[j].contains(p));
        }
}

TEST_CASE("finger_masks") {
    const BinaryMask disk = disk_mask(30, 30, {15, 15}, 10);
    CHECK(finger_masks(disk, disk, {15, 15}, 4).empty());

    HandSpec h;
    h.palm_center = {60, 60};
    h.palm_radius = 16;
    h.finger_count = 2;
    h.finger_lengths = {24, 24};
    h.finger_widths = {6, 6};
    h.orientation_deg = 137;
    const RenderedHand r = render_hand(h, 120, 120, 200.0);
    const BinaryMask palm = extract_palm(r.truth.support, auto_radius(h.palm_radius));
    CHECK(finger_masks(r.truth.support, palm, r.truth.palm_center,
                       default_min_finger_area(r.truth.support.count()))
              .size() == 2);
}

TEST_CASE("finger_masks keeps the five largest, ordered by angle") {
    BinaryMask hand(40, 40);
    BinaryMask palm(40, 40);
    // Six separate bars of different sizes around (20, 20).
    const Point starts[] = {{2, 2}, {10, 2}, {18, 2}, {26, 2}, {2, 30}, {30, 30}};
    for (int i = 0; i < 6; ++i)
        for (int k = 0; k <= i + 1; ++k)
            hand.set(starts[i].x, starts[i].y + k);
    const auto kept = finger_masks(hand, palm, {20, 20}, 1);
    REQUIRE(kept.size() == 5);
    for (const Blob& b : kept)
        CHECK(b.area() >= 3);
    for (std::size_t i = 1; i < kept.size(); ++i)
        CHECK(std::atan2(kept[i - 1].centroid.y - 20, kept[i - 1].centroid.x - 20) <=
              std::atan2(kept[i].centroid.y - 20, kept[i].centroid.x - 20));
}

TEST_CASE("auto_radius") {
    CHECK(auto_radius(20) == 14);
    CHECK(auto_radius(1) == 1);
    CHECK(auto_radius(20, 0.5) == 10);
    CHECK_THROWS_AS(auto_radius(20, 1.0), std::invalid_argument);
    CHECK(default_min_finger_area(10) == 4);
    CHECK(default_min_finger_area(2000) == 20);
}

TEST_CASE("auto radius separates fingers up to half the inradius wide") {
    for (double frac : {0.2, 0.3, 0.4, 0.5}) {
        for (double orient : {0.0, 33.0, 90.0, 211.0}) {
            HandSpec h;
            h.palm_center = {80, 80};
            h.palm_radius = 20;
            h.finger_count = 3;
            h.finger_lengths = {25, 30, 25};
            h.finger_widths = std::vector<double>(3, frac * h.palm_radius);
            h.finger_angles_deg = {-50, 0, 50};
            h.orientation_deg = orient;
            const RenderedHand r = render_hand(h, 160, 160, 250.0);
            const BinaryMask palm = extract_palm(r.truth.support, auto_radius(h.palm_radius));
            CAPTURE(frac);
            CAPTURE(orient);
            CHECK(palm.test(r.truth.palm_center));
            for (const Point& tip : r.truth.fingertips)
                CHECK_FALSE(palm.test(tip));
            CHECK(finger_masks(r.truth.support, palm, r.truth.palm_center,
                               default_min_finger_area(r.truth.support.count()))
                      .size() == 3);
        }
    }
}
