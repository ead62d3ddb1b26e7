#pragma once

#include <cstdint>

namespace handdepth {

struct Point {
    int x = 0;
    int y = 0;

    friend bool operator==(const Point&, const Point&) = default;
};

/// Raster order: smaller y first, then smaller x.
inline bool raster_less(Point a, Point b) {
    return a.y != b.y ? a.y < b.y : a.x < b.x;
}

struct PointF {
    double x = 0.0;
    double y = 0.0;
};

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;

    friend bool operator==(const Rgb&, const Rgb&) = default;
};

inline constexpr Rgb kWhite{255, 255, 255};
inline constexpr Rgb kPink{255, 105, 180};

}  // namespace handdepth
