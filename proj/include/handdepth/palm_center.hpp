#pragma once

#include "handdepth/distance_transform.hpp"
#include "handdepth/mask.hpp"
#include "handdepth/types.hpp"

namespace handdepth {

struct PalmCenter {
    Point position;
    double inradius_px = 0.0;  ///< sqrt of the maximum squared distance
};

/// Argmax of `dist` over the pixels of `region`, ties to smallest y then
/// smallest x. Throws DegenerateHand when the maximum squared distance is
/// at most 1, and std::invalid_argument for an empty region.
PalmCenter find_palm_center(const DistanceMap& dist, const Blob& region);

}  // namespace handdepth
