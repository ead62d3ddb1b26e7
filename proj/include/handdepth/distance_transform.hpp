#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "handdepth/mask.hpp"
#include "handdepth/types.hpp"

namespace handdepth {

/// Row-major squared Euclidean distances, integer-exact.
class DistanceMap {
public:
    static constexpr std::int64_t kInfinite = std::numeric_limits<std::int64_t>::max();

    DistanceMap() = default;
    DistanceMap(int width, int height, std::int64_t fill = 0);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }

    std::int64_t at(int x, int y) const { return values_[index(x, y)]; }
    std::int64_t at(Point p) const { return at(p.x, p.y); }
    void set(int x, int y, std::int64_t v) { values_[index(x, y)] = v; }

    std::span<const std::int64_t> values() const noexcept { return values_; }

    friend bool operator==(const DistanceMap&, const DistanceMap&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<std::int64_t> values_;
};

/// Squared distance from every pixel to the nearest `sources` pixel.
/// Pixels are kInfinite when the mask has no source at all.
///
/// Separable two-pass lower envelope of parabolas (columns, then rows).
/// Envelope intersections are compared as exact rationals.
DistanceMap squared_distance_to(const BinaryMask& sources);

/// Squared distance from each foreground pixel to the nearest background
/// pixel; background holds 0. The mask is surrounded by a one-pixel
/// background border first, so masks touching the edge are well defined.
DistanceMap distance_transform(const BinaryMask& mask);

}  // namespace handdepth
