#pragma once

// Brute-force reference implementations. They follow the textbook set
// definitions directly and share no code with the library algorithms.

#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "handdepth/mask.hpp"

namespace oracle {

using handdepth::BinaryMask;
using handdepth::Point;

/// Squared distance from each foreground pixel to the nearest background
/// pixel, where background includes a one-pixel ring around the mask.
inline std::vector<std::int64_t> brute_distance(const BinaryMask& m) {
    const int w = m.width();
    const int h = m.height();
    std::vector<Point> background;
    for (int y = -1; y <= h; ++y)
        for (int x = -1; x <= w; ++x) {
            const bool inside = x >= 0 && y >= 0 && x < w && y < h;
            if (!inside || !m.test(x, y))
                background.push_back({x, y});
        }
    std::vector<std::int64_t> out(static_cast<std::size_t>(w) * h, 0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!m.test(x, y))
                continue;
            std::int64_t best = std::numeric_limits<std::int64_t>::max();
            for (const Point& b : background) {
                const std::int64_t dx = x - b.x;
                const std::int64_t dy = y - b.y;
                best = std::min(best, dx * dx + dy * dy);
            }
            out[static_cast<std::size_t>(y) * w + x] = best;
        }
    return out;
}

/// erode: p kept iff p + d is in-bounds foreground for every d in the disk.
inline BinaryMask brute_erode(const BinaryMask& m, int r) {
    BinaryMask out(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) {
            bool keep = true;
            for (int dy = -r; dy <= r && keep; ++dy)
                for (int dx = -r; dx <= r && keep; ++dx)
                    if (dx * dx + dy * dy <= r * r && !m.test_or_background(x + dx, y + dy))
                        keep = false;
            out.set(x, y, keep);
        }
    return out;
}

/// dilate: p set iff p - d is in-bounds foreground for some d in the disk.
inline BinaryMask brute_dilate(const BinaryMask& m, int r) {
    BinaryMask out(m.width(), m.height());
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x) {
            bool hit = false;
            for (int dy = -r; dy <= r && !hit; ++dy)
                for (int dx = -r; dx <= r && !hit; ++dx)
                    if (dx * dx + dy * dy <= r * r && m.test_or_background(x - dx, y - dy))
                        hit = true;
            out.set(x, y, hit);
        }
    return out;
}

/// Component label per pixel (0 = background) from a recursive-free flood
/// fill started at each unlabelled pixel in raster order.
inline std::vector<int> flood_labels(const BinaryMask& m) {
    const int w = m.width();
    const int h = m.height();
    std::vector<int> label(static_cast<std::size_t>(w) * h, 0);
    int next = 0;
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x) {
            if (!m.test(x, y) || label[static_cast<std::size_t>(y) * w + x])
                continue;
            ++next;
            std::vector<Point> queue{{x, y}};
            label[static_cast<std::size_t>(y) * w + x] = next;
            for (std::size_t i = 0; i < queue.size(); ++i) {
                const Point p = queue[i];
                for (int dy = -1; dy <= 1; ++dy)
                    for (int dx = -1; dx <= 1; ++dx) {
                        const int qx = p.x + dx;
                        const int qy = p.y + dy;
                        if (!m.test_or_background(qx, qy))
                            continue;
                        int& l = label[static_cast<std::size_t>(qy) * w + qx];
                        if (!l) {
                            l = next;
                            queue.push_back({qx, qy});
                        }
                    }
            }
        }
    return label;
}

inline BinaryMask random_mask(std::mt19937_64& rng, int w, int h, double density) {
    BinaryMask m(w, h);
    const auto threshold = static_cast<std::uint64_t>(density * 18446744073709551615.0);
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            m.set(x, y, rng() < threshold);
    return m;
}

/// All 2^16 masks of size 4x4; bit i is pixel (i % 4, i / 4).
inline BinaryMask mask_4x4(unsigned bits) {
    BinaryMask m(4, 4);
    for (int i = 0; i < 16; ++i)
        m.set(i % 4, i / 4, (bits >> i) & 1u);
    return m;
}

}  // namespace oracle
