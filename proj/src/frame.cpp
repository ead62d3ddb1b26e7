#include "handdepth/frame.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace handdepth {

DepthFrame::DepthFrame(int width, int height, RawDepth fill)
    : width_(width), height_(height) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("frame dimensions must be positive");
    if (fill > kRawMax)
        throw std::invalid_argument("fill value exceeds 11 bits");
    samples_.assign(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill);
}

DepthFrame::DepthFrame(int width, int height, std::vector<RawDepth> samples)
    : width_(width), height_(height), samples_(std::move(samples)) {
    if (width < 1 || height < 1)
        throw std::invalid_argument("frame dimensions must be positive");
    if (samples_.size() != static_cast<std::size_t>(width) * static_cast<std::size_t>(height))
        throw std::invalid_argument("sample count " + std::to_string(samples_.size()) +
                                    " does not match " + std::to_string(width) + "x" +
                                    std::to_string(height));
    for (RawDepth s : samples_)
        if (s > kRawMax)
            throw std::invalid_argument("sample exceeds 11 bits");
}

Point rotate_point_quarter(Point p, int width, int height, int quarter_turns) {
    int turns = ((quarter_turns % 4) + 4) % 4;
    for (; turns > 0; --turns) {
        p = Point{height - 1 - p.y, p.x};
        std::swap(width, height);
    }
    return p;
}

DepthFrame rotate_quarter(const DepthFrame& frame, int quarter_turns) {
    const int turns = ((quarter_turns % 4) + 4) % 4;
    const bool swapped = turns % 2 == 1;
    DepthFrame out(swapped ? frame.height() : frame.width(),
                   swapped ? frame.width() : frame.height());
    for (int y = 0; y < frame.height(); ++y)
        for (int x = 0; x < frame.width(); ++x)
            out.set(rotate_point_quarter({x, y}, frame.width(), frame.height(), turns),
                    frame.at(x, y));
    return out;
}

}  // namespace handdepth
