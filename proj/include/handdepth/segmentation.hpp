#pragma once

#include <vector>

#include "handdepth/depth_model.hpp"
#include "handdepth/frame.hpp"
#include "handdepth/mask.hpp"
#include "handdepth/types.hpp"

namespace handdepth {

/// A pixel assumed to lie on a hand, with its raw depth.
struct HandSeed {
    Point position;
    RawDepth depth_raw = 0;

    friend bool operator==(const HandSeed&, const HandSeed&) = default;
};

/// Foreground = valid samples whose calibrated depth is within band_cm of the
/// seed depth. Throws DomainError when the seed depth is not a valid raw value
/// and std::invalid_argument when band_cm <= 0.
BinaryMask depth_threshold(const DepthFrame& frame, const HandSeed& seed, double band_cm,
                           const CalibrationParams& params = {});

/// Maximal 8-connected components, labelled 1..n in raster order of each
/// component's first pixel.
std::vector<Blob> connected_components(const BinaryMask& mask);

/// The blob containing seed.position. Throws NotFound if it lies on background.
const Blob& select_hand_blob(const std::vector<Blob>& blobs, const HandSeed& seed);

struct SeedSearch {
    int max_hands = 2;       ///< 1 or 2
    int min_area = 150;      ///< pixels
    double slab_cm = 20.0;   ///< depth slab behind the nearest valid sample
};

/// Stand-in for an external hand detector: assumes hands are the objects
/// nearest to the camera. Thresholds the frame at nearest depth + slab,
/// keeps components of at least min_area pixels, largest first, and seeds
/// each at its nearest-depth pixel (ties in raster order).
/// Throws NotFound when no component qualifies.
std::vector<HandSeed> find_hand_seeds(const DepthFrame& frame, const SeedSearch& search,
                                      const CalibrationParams& params = {});

}  // namespace handdepth
