#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "handdepth/types.hpp"

namespace handdepth {

/// Row-major foreground flags.
class BinaryMask {
public:
    BinaryMask() = default;
    BinaryMask(int width, int height, bool fill = false);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return bits_.size(); }

    bool contains(Point p) const noexcept {
        return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_;
    }

    bool test(int x, int y) const { return bits_[index(x, y)] != 0; }
    bool test(Point p) const { return test(p.x, p.y); }
    /// Out-of-bounds reads as background.
    bool test_or_background(int x, int y) const {
        return x >= 0 && y >= 0 && x < width_ && y < height_ && test(x, y);
    }
    void set(int x, int y, bool on = true) { bits_[index(x, y)] = on ? 1 : 0; }
    void set(Point p, bool on = true) { set(p.x, p.y, on); }

    std::size_t count() const noexcept;
    bool empty() const noexcept { return count() == 0; }

    std::span<const std::uint8_t> bits() const noexcept { return bits_; }

    friend bool operator==(const BinaryMask&, const BinaryMask&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::uint8_t> bits_;
};

BinaryMask complement(const BinaryMask& mask);
BinaryMask intersection(const BinaryMask& a, const BinaryMask& b);
/// a \ b
BinaryMask difference(const BinaryMask& a, const BinaryMask& b);
/// True when every foreground pixel of a is foreground in b.
bool is_subset(const BinaryMask& a, const BinaryMask& b);

/// Surrounds the mask with `border` background pixels on every side.
BinaryMask pad(const BinaryMask& mask, int border);
/// Sub-rectangle [x0, x0+width) x [y0, y0+height); outside pixels read as background.
BinaryMask crop(const BinaryMask& mask, int x0, int y0, int width, int height);

/// Background connected components that do not touch the border become foreground.
BinaryMask fill_holes(const BinaryMask& mask);

struct BoundingBox {
    int min_x = 0;
    int min_y = 0;
    int max_x = -1;
    int max_y = -1;

    int width() const noexcept { return max_x - min_x + 1; }
    int height() const noexcept { return max_y - min_y + 1; }
    bool contains(Point p) const noexcept {
        return p.x >= min_x && p.x <= max_x && p.y >= min_y && p.y <= max_y;
    }

    friend bool operator==(const BoundingBox&, const BoundingBox&) = default;
};

/// One 8-connected component. Pixels are stored in raster order.
struct Blob {
    int label = 0;
    std::vector<Point> pixels;
    BoundingBox bbox;
    PointF centroid;

    std::size_t area() const noexcept { return pixels.size(); }
    bool contains(Point p) const;

    /// Builds bbox and centroid from pixels (sorted into raster order).
    static Blob from_pixels(int label, std::vector<Point> pixels);
};

/// Rasterizes a blob into a width x height mask, offset by (-x0, -y0).
BinaryMask blob_to_mask(const Blob& blob, int width, int height, int x0 = 0, int y0 = 0);

}  // namespace handdepth
