#include "handdepth/mask.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <vector>

namespace handdepth {

BinaryMask::BinaryMask(int width, int height, bool fill) : width_(width), height_(height) {
    if (width < 0 || height < 0)
        throw std::invalid_argument("mask dimensions must be non-negative");
    bits_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height),
                 fill ? 1 : 0);
}

std::size_t BinaryMask::count() const noexcept {
    return static_cast<std::size_t>(std::count(bits_.begin(), bits_.end(), std::uint8_t{1}));
}

namespace {

void require_same_shape(const BinaryMask& a, const BinaryMask& b) {
    if (a.width() != b.width() || a.height() != b.height())
        throw std::invalid_argument("mask dimensions differ");
}

template <typename Op>
BinaryMask combine(const BinaryMask& a, const BinaryMask& b, Op op) {
    require_same_shape(a, b);
    BinaryMask out(a.width(), a.height());
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x)
            out.set(x, y, op(a.test(x, y), b.test(x, y)));
    return out;
}

}  // namespace

BinaryMask complement(const BinaryMask& mask) {
    BinaryMask out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            out.set(x, y, !mask.test(x, y));
    return out;
}

BinaryMask intersection(const BinaryMask& a, const BinaryMask& b) {
    return combine(a, b, [](bool p, bool q) { return p && q; });
}

BinaryMask difference(const BinaryMask& a, const BinaryMask& b) {
    return combine(a, b, [](bool p, bool q) { return p && !q; });
}

bool is_subset(const BinaryMask& a, const BinaryMask& b) {
    require_same_shape(a, b);
    for (int y = 0; y < a.height(); ++y)
        for (int x = 0; x < a.width(); ++x)
            if (a.test(x, y) && !b.test(x, y))
                return false;
    return true;
}

BinaryMask pad(const BinaryMask& mask, int border) {
    return crop(mask, -border, -border, mask.width() + 2 * border, mask.height() + 2 * border);
}

BinaryMask crop(const BinaryMask& mask, int x0, int y0, int width, int height) {
    BinaryMask out(width, height);
    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x)
            if (mask.test_or_background(x + x0, y + y0))
                out.set(x, y);
    return out;
}

BinaryMask fill_holes(const BinaryMask& mask) {
    // Flood the background from the border with 4-connectivity, the dual of
    // 8-connected foreground.
    const int w = mask.width();
    const int h = mask.height();
    BinaryMask outside(w, h);
    std::vector<Point> stack;
    auto push = [&](int x, int y) {
        if (x < 0 || y < 0 || x >= w || y >= h || mask.test(x, y) || outside.test(x, y))
            return;
        outside.set(x, y);
        stack.push_back({x, y});
    };
    for (int x = 0; x < w; ++x) {
        push(x, 0);
        push(x, h - 1);
    }
    for (int y = 0; y < h; ++y) {
        push(0, y);
        push(w - 1, y);
    }
    while (!stack.empty()) {
        const Point p = stack.back();
        stack.pop_back();
        push(p.x + 1, p.y);
        push(p.x - 1, p.y);
        push(p.x, p.y + 1);
        push(p.x, p.y - 1);
    }
    return complement(outside);
}

bool Blob::contains(Point p) const {
    if (!bbox.contains(p))
        return false;
    return std::binary_search(pixels.begin(), pixels.end(), p, raster_less);
}

Blob Blob::from_pixels(int label, std::vector<Point> pixels) {
    Blob blob;
    blob.label = label;
    std::sort(pixels.begin(), pixels.end(), raster_less);
    blob.pixels = std::move(pixels);
    if (blob.pixels.empty())
        return blob;
    BoundingBox box{blob.pixels.front().x, blob.pixels.front().y, blob.pixels.front().x,
                    blob.pixels.front().y};
    double sx = 0.0;
    double sy = 0.0;
    for (const Point& p : blob.pixels) {
        box.min_x = std::min(box.min_x, p.x);
        box.min_y = std::min(box.min_y, p.y);
        box.max_x = std::max(box.max_x, p.x);
        box.max_y = std::max(box.max_y, p.y);
        sx += p.x;
        sy += p.y;
    }
    blob.bbox = box;
    const double n = static_cast<double>(blob.pixels.size());
    blob.centroid = {sx / n, sy / n};
    return blob;
}

BinaryMask blob_to_mask(const Blob& blob, int width, int height, int x0, int y0) {
    BinaryMask out(width, height);
    for (const Point& p : blob.pixels) {
        const Point q{p.x - x0, p.y - y0};
        if (out.contains(q))
            out.set(q);
    }
    return out;
}

}  // namespace handdepth
