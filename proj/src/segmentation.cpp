#include "handdepth/segmentation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "handdepth/errors.hpp"

namespace handdepth {
namespace {

// Calibrated depth for every raw value in the valid domain.
std::vector<double> depth_table(const CalibrationParams& params) {
    std::vector<double> table(static_cast<std::size_t>(params.raw_valid_max) + 1);
    for (int r = 0; r <= params.raw_valid_max; ++r)
        table[r] = raw_to_cm(r, params);
    return table;
}

int find_root(std::vector<int>& parent, int i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

void unite(std::vector<int>& parent, int a, int b) {
    a = find_root(parent, a);
    b = find_root(parent, b);
    // Smaller label wins so each root is the component's first provisional label.
    if (a < b)
        parent[b] = a;
    else if (b < a)
        parent[a] = b;
}

}  // namespace

BinaryMask depth_threshold(const DepthFrame& frame, const HandSeed& seed, double band_cm,
                           const CalibrationParams& params) {
    if (!(band_cm > 0.0))
        throw std::invalid_argument("band_cm must be positive");
    if (!is_valid_raw(seed.depth_raw, params))
        throw DomainError("seed depth " + std::to_string(seed.depth_raw) + " is not a valid raw value");
    const auto table = depth_table(params);
    const double seed_cm = table[seed.depth_raw];
    BinaryMask mask(frame.width(), frame.height());
    for (int y = 0; y < frame.height(); ++y)
        for (int x = 0; x < frame.width(); ++x) {
            const int raw = frame.at(x, y);
            if (is_valid_raw(raw, params) && std::abs(table[raw] - seed_cm) <= band_cm)
                mask.set(x, y);
        }
    return mask;
}

std::vector<Blob> connected_components(const BinaryMask& mask) {
    const int w = mask.width();
    const int h = mask.height();
    std::vector<int> labels(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), 0);
    std::vector<int> parent{0};
    auto at = [&](int x, int y) -> int& { return labels[static_cast<std::size_t>(y) * w + x]; };

    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x) {
            if (!mask.test(x, y))
                continue;
            // Already-visited 8-neighbours: W, NW, N, NE.
            int neighbours[4];
            int n = 0;
            if (x > 0 && at(x - 1, y))
                neighbours[n++] = at(x - 1, y);
            if (y > 0) {
                if (x > 0 && at(x - 1, y - 1))
                    neighbours[n++] = at(x - 1, y - 1);
                if (at(x, y - 1))
                    neighbours[n++] = at(x, y - 1);
                if (x + 1 < w && at(x + 1, y - 1))
                    neighbours[n++] = at(x + 1, y - 1);
            }
            if (n == 0) {
                const int label = static_cast<int>(parent.size());
                parent.push_back(label);
                at(x, y) = label;
                continue;
            }
            int smallest = *std::min_element(neighbours, neighbours + n);
            at(x, y) = smallest;
            for (int i = 0; i < n; ++i)
                unite(parent, smallest, neighbours[i]);
        }
    }

    // Roots are increasing in raster order of first pixel; compact them.
    std::vector<int> final_label(parent.size(), 0);
    int next = 0;
    for (std::size_t i = 1; i < parent.size(); ++i)
        if (find_root(parent, static_cast<int>(i)) == static_cast<int>(i))
            final_label[i] = ++next;

    std::vector<std::vector<Point>> pixels(static_cast<std::size_t>(next));
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (const int l = at(x, y))
                pixels[final_label[find_root(parent, l)] - 1].push_back({x, y});

    std::vector<Blob> blobs;
    blobs.reserve(pixels.size());
    for (std::size_t i = 0; i < pixels.size(); ++i)
        blobs.push_back(Blob::from_pixels(static_cast<int>(i) + 1, std::move(pixels[i])));
    return blobs;
}

const Blob& select_hand_blob(const std::vector<Blob>& blobs, const HandSeed& seed) {
    for (const Blob& blob : blobs)
        if (blob.contains(seed.position))
            return blob;
    throw NotFound("seed (" + std::to_string(seed.position.x) + ", " +
                   std::to_string(seed.position.y) + ") lies on background");
}

std::vector<HandSeed> find_hand_seeds(const DepthFrame& frame, const SeedSearch& search,
                                      const CalibrationParams& params) {
    if (search.max_hands < 1 || search.max_hands > 2)
        throw std::invalid_argument("max_hands must be 1 or 2");
    if (!(search.slab_cm > 0.0))
        throw std::invalid_argument("slab_cm must be positive");

    int nearest = -1;
    for (RawDepth raw : frame.samples())
        if (is_valid_raw(raw, params) && (nearest < 0 || raw < nearest))
            nearest = raw;
    if (nearest < 0)
        throw NotFound("frame has no valid depth sample");

    const auto table = depth_table(params);
    const double limit_cm = table[nearest] + search.slab_cm;
    BinaryMask slab(frame.width(), frame.height());
    for (int y = 0; y < frame.height(); ++y)
        for (int x = 0; x < frame.width(); ++x) {
            const int raw = frame.at(x, y);
            if (is_valid_raw(raw, params) && table[raw] <= limit_cm)
                slab.set(x, y);
        }

    std::vector<Blob> blobs = connected_components(slab);
    std::erase_if(blobs, [&](const Blob& b) {
        return b.area() < static_cast<std::size_t>(std::max(search.min_area, 1));
    });
    if (blobs.empty())
        throw NotFound("no component reaches min_area " + std::to_string(search.min_area));
    std::stable_sort(blobs.begin(), blobs.end(),
                     [](const Blob& a, const Blob& b) { return a.area() > b.area(); });

    std::vector<HandSeed> seeds;
    for (const Blob& blob : blobs) {
        if (static_cast<int>(seeds.size()) == search.max_hands)
            break;
        // Pixels are in raster order, so strict < keeps the first tie.
        HandSeed seed{blob.pixels.front(), frame.at(blob.pixels.front())};
        for (const Point& p : blob.pixels)
            if (frame.at(p) < seed.depth_raw)
                seed = {p, frame.at(p)};
        seeds.push_back(seed);
    }
    return seeds;
}

}  // namespace handdepth
