#include "handdepth/palm_center.hpp"

#include <cmath>
#include <stdexcept>

#include "handdepth/errors.hpp"

namespace handdepth {

PalmCenter find_palm_center(const DistanceMap& dist, const Blob& region) {
    if (region.pixels.empty())
        throw std::invalid_argument("palm center of an empty region");
    // Region pixels are in raster order; strict > keeps the first of a tie.
    Point best = region.pixels.front();
    std::int64_t best_value = -1;
    for (const Point& p : region.pixels) {
        const std::int64_t v = dist.at(p);
        if (v > best_value) {
            best_value = v;
            best = p;
        }
    }
    if (best_value <= 1)
        throw DegenerateHand("hand is thinner than two pixels everywhere");
    return {best, std::sqrt(static_cast<double>(best_value))};
}

}  // namespace handdepth
