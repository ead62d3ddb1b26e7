#pragma once

#include <cstddef>
#include <vector>

#include "handdepth/mask.hpp"
#include "handdepth/types.hpp"

namespace handdepth {

/// Closed disk {(dx, dy) : dx^2 + dy^2 <= radius^2}.
struct DiskElement {
    int radius = 0;
    std::vector<Point> offsets;

    explicit DiskElement(int radius);
};

/// Minkowski erosion; pixels outside the mask count as background.
BinaryMask erode(const BinaryMask& mask, const DiskElement& elem);
/// Minkowski dilation; pixels outside the mask count as background.
BinaryMask dilate(const BinaryMask& mask, const DiskElement& elem);
/// Erosion followed by dilation with the same element.
BinaryMask open(const BinaryMask& mask, const DiskElement& elem);

/// Removes the fingers with a disk opening, leaving the palm body.
/// Throws EmptyResult when the disk does not fit anywhere in the hand.
BinaryMask extract_palm(const BinaryMask& hand, int radius);

/// hand \ palm split into 8-connected finger candidates. Components smaller
/// than min_finger_area are dropped, at most the five largest are kept, and
/// the result is ordered by centroid angle around palm_center
/// (atan2 in image coordinates, ascending).
std::vector<Blob> finger_masks(const BinaryMask& hand, const BinaryMask& palm, Point palm_center,
                               std::size_t min_finger_area);

/// Opening radius for a palm of the given inradius: max(1, round(factor * inradius)).
int auto_radius(double palm_inradius, double factor = 0.7);

/// max(4, round(0.05 * hand_area / 5))
std::size_t default_min_finger_area(std::size_t hand_area);

}  // namespace handdepth
