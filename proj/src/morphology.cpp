#include "handdepth/morphology.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "handdepth/distance_transform.hpp"
#include "handdepth/errors.hpp"
#include "handdepth/segmentation.hpp"

namespace handdepth {

DiskElement::DiskElement(int r) : radius(r) {
    if (r < 0)
        throw std::invalid_argument("disk radius must be non-negative");
    for (int dy = -r; dy <= r; ++dy)
        for (int dx = -r; dx <= r; ++dx)
            if (dx * dx + dy * dy <= r * r)
                offsets.push_back({dx, dy});
}

// Both operators reduce to exact squared distance maps: a pixel survives
// erosion iff the nearest background (including everything outside the
// mask) is farther than r, and joins the dilation iff some foreground pixel
// is within r.

BinaryMask erode(const BinaryMask& mask, const DiskElement& elem) {
    const DistanceMap dist = distance_transform(mask);
    const std::int64_t r2 = static_cast<std::int64_t>(elem.radius) * elem.radius;
    BinaryMask out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (dist.at(x, y) > r2)
                out.set(x, y);
    return out;
}

BinaryMask dilate(const BinaryMask& mask, const DiskElement& elem) {
    const DistanceMap dist = squared_distance_to(mask);
    const std::int64_t r2 = static_cast<std::int64_t>(elem.radius) * elem.radius;
    BinaryMask out(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (dist.at(x, y) <= r2)
                out.set(x, y);
    return out;
}

BinaryMask open(const BinaryMask& mask, const DiskElement& elem) {
    return dilate(erode(mask, elem), elem);
}

BinaryMask extract_palm(const BinaryMask& hand, int radius) {
    if (radius < 1)
        throw std::invalid_argument("palm opening radius must be >= 1");
    BinaryMask palm = open(hand, DiskElement(radius));
    if (palm.empty())
        throw EmptyResult("opening with radius " + std::to_string(radius) +
                          " removed the whole hand");
    return palm;
}

std::vector<Blob> finger_masks(const BinaryMask& hand, const BinaryMask& palm, Point palm_center,
                               std::size_t min_finger_area) {
    std::vector<Blob> parts = connected_components(difference(hand, palm));
    std::erase_if(parts, [&](const Blob& b) { return b.area() < min_finger_area; });
    if (parts.size() > 5) {
        std::stable_sort(parts.begin(), parts.end(),
                         [](const Blob& a, const Blob& b) { return a.area() > b.area(); });
        parts.resize(5);
    }
    auto angle = [&](const Blob& b) {
        return std::atan2(b.centroid.y - palm_center.y, b.centroid.x - palm_center.x);
    };
    std::stable_sort(parts.begin(), parts.end(), [&](const Blob& a, const Blob& b) {
        const double ta = angle(a);
        const double tb = angle(b);
        return ta != tb ? ta < tb : a.label < b.label;
    });
    return parts;
}

int auto_radius(double palm_inradius, double factor) {
    if (!(factor > 0.0 && factor < 1.0))
        throw std::invalid_argument("radius factor must lie in (0, 1)");
    if (!(palm_inradius >= 1.0))
        throw std::invalid_argument("palm inradius must be >= 1");
    return std::max(1, static_cast<int>(std::lround(factor * palm_inradius)));
}

std::size_t default_min_finger_area(std::size_t hand_area) {
    const auto scaled = static_cast<std::size_t>(std::llround(0.05 * static_cast<double>(hand_area) / 5.0));
    return std::max<std::size_t>(4, scaled);
}

}  // namespace handdepth
