#include "handdepth/fingertips.hpp"

#include <stdexcept>
#include <string>

#include "handdepth/errors.hpp"

namespace handdepth {

Fingertip detect_fingertip(const DepthFrame& frame, const Blob& finger, int finger_index,
                           const CalibrationParams& params) {
    bool found = false;
    Point best;
    int best_raw = 0;
    for (const Point& p : finger.pixels) {
        if (!frame.contains(p))
            throw std::invalid_argument("finger pixel outside frame");
        const int raw = frame.at(p);
        if (!is_valid_raw(raw, params))
            continue;
        if (!found || raw < best_raw) {
            found = true;
            best = p;
            best_raw = raw;
        }
    }
    if (!found)
        throw NoValidDepth("finger " + std::to_string(finger_index) + " has no valid depth sample");
    return {best, raw_to_cm(best_raw, params), finger_index};
}

FingertipSet detect_fingertips(const DepthFrame& frame, const std::vector<Blob>& fingers,
                               const CalibrationParams& params) {
    FingertipSet set;
    for (std::size_t i = 0; i < fingers.size(); ++i) {
        try {
            set.tips.push_back(detect_fingertip(frame, fingers[i], static_cast<int>(i), params));
        } catch (const NoValidDepth&) {
        }
    }
    return set;
}

int tips_toward_camera_margin(const DepthFrame& frame, const Blob& finger,
                              const CalibrationParams& params) {
    int lowest = -1;
    int second = -1;
    int valid = 0;
    for (const Point& p : finger.pixels) {
        const int raw = frame.at(p);
        if (!is_valid_raw(raw, params))
            continue;
        ++valid;
        if (lowest < 0 || raw < lowest) {
            if (lowest >= 0)
                second = lowest;
            lowest = raw;
        } else if (raw > lowest && (second < 0 || raw < second)) {
            second = raw;
        }
    }
    if (valid < 2)
        throw NoValidDepth("margin needs at least two valid samples");
    return second < 0 ? 0 : second - lowest;
}

}  // namespace handdepth
