#include "handdepth/depth_model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "handdepth/errors.hpp"

namespace handdepth {

void CalibrationParams::validate() const {
    if (!std::isfinite(h) || !std::isfinite(k) || !std::isfinite(l) || !std::isfinite(o))
        throw DomainError("calibration parameters must be finite");
    if (h <= 0.0 || k <= 0.0)
        throw DomainError("calibration requires H > 0 and K > 0");
    const int upper = valid_domain(*this);
    if (raw_valid_max < 0 || raw_valid_max > upper)
        throw DomainError("raw_valid_max " + std::to_string(raw_valid_max) +
                          " outside [0, " + std::to_string(upper) + "]");
}

int valid_domain(const CalibrationParams& params) {
    const double pole = (std::numbers::pi / 2.0 - params.l) / params.h;
    if (!(pole > 0.0))
        throw DomainError("empty calibration domain: H*0 + L is already at or past pi/2");
    if (pole > 2046.0)
        return 2046;
    // Strict inequality: an integral pole is itself excluded.
    int r = static_cast<int>(std::ceil(pole)) - 1;
    while (r + 1 <= 2046 && params.h * (r + 1) + params.l < std::numbers::pi / 2.0)
        ++r;
    while (r >= 0 && !(params.h * r + params.l < std::numbers::pi / 2.0))
        --r;
    if (r < 0)
        throw DomainError("empty calibration domain");
    return r;
}

double raw_to_cm(int raw, const CalibrationParams& params) {
    if (raw == kSentinel)
        throw DomainError("raw value 2047 is the no-measurement sentinel");
    if (raw < 0 || raw > params.raw_valid_max)
        throw DomainError("raw value " + std::to_string(raw) + " outside valid domain [0, " +
                          std::to_string(params.raw_valid_max) + "]");
    return params.k * std::tan(params.h * raw + params.l) - params.o;
}

RawDepth cm_to_raw(double depth_cm, const CalibrationParams& params) {
    if (!std::isfinite(depth_cm))
        throw DomainError("depth must be finite");
    const double raw = (std::atan((depth_cm + params.o) / params.k) - params.l) / params.h;
    const double rounded = std::round(raw);
    if (rounded < 0.0 || rounded > params.raw_valid_max)
        throw DomainError("depth " + std::to_string(depth_cm) +
                          " cm maps outside the valid raw domain");
    return static_cast<RawDepth>(rounded);
}

}  // namespace handdepth
