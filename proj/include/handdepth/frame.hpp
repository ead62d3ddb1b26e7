#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "handdepth/depth_model.hpp"
#include "handdepth/types.hpp"

namespace handdepth {

/// Row-major grid of raw 11-bit samples.
class DepthFrame {
public:
    DepthFrame() = default;
    /// Throws std::invalid_argument on zero dimensions.
    DepthFrame(int width, int height, RawDepth fill = kSentinel);
    /// Throws std::invalid_argument when the size or a sample is out of range.
    DepthFrame(int width, int height, std::vector<RawDepth> samples);

    int width() const noexcept { return width_; }
    int height() const noexcept { return height_; }
    std::size_t size() const noexcept { return samples_.size(); }

    bool contains(Point p) const noexcept {
        return p.x >= 0 && p.y >= 0 && p.x < width_ && p.y < height_;
    }

    RawDepth at(int x, int y) const { return samples_[index(x, y)]; }
    RawDepth at(Point p) const { return at(p.x, p.y); }
    /// Stores value & 0x7FF.
    void set(int x, int y, RawDepth value) { samples_[index(x, y)] = value & kRawMax; }
    void set(Point p, RawDepth value) { set(p.x, p.y, value); }

    std::span<const RawDepth> samples() const noexcept { return samples_; }

    friend bool operator==(const DepthFrame&, const DepthFrame&) = default;

private:
    std::size_t index(int x, int y) const {
        return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) +
               static_cast<std::size_t>(x);
    }

    int width_ = 0;
    int height_ = 0;
    std::vector<RawDepth> samples_;
};

/// Rotates a frame by quarter_turns * 90 degrees clockwise (image y down).
DepthFrame rotate_quarter(const DepthFrame& frame, int quarter_turns);

/// Where pixel p of a width x height image lands after rotate_quarter.
Point rotate_point_quarter(Point p, int width, int height, int quarter_turns);

}  // namespace handdepth
