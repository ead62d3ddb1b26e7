#pragma once

#include <cstdint>

namespace handdepth {

/// Raw 11-bit disparity sample.
using RawDepth = std::uint16_t;

inline constexpr RawDepth kRawMax = 2047;
/// No-measurement marker. Never converts to a metric depth.
inline constexpr RawDepth kSentinel = 2047;

/// Tangent calibration  d = K * tan(H * raw + L) - O  (d in cm).
///
/// The tangent has a pole inside the 11-bit range, so conversions are only
/// defined on [0, raw_valid_max]. raw_valid_max must not exceed
/// valid_domain() of the same parameters.
struct CalibrationParams {
    double h = 3.5e-4;  ///< radians per raw unit
    double k = 12.36;   ///< cm
    double l = 1.18;    ///< radians
    double o = 3.7;     ///< cm
    int raw_valid_max = 1100;

    /// Throws DomainError when a field is non-finite, H or K is not positive,
    /// or raw_valid_max lies outside [0, valid_domain()].
    void validate() const;

    friend bool operator==(const CalibrationParams&, const CalibrationParams&) = default;
};

/// Largest raw r with H*r + L < pi/2, clamped to 2046. Throws DomainError
/// when no raw value is below the pole.
int valid_domain(const CalibrationParams& params);

/// True when raw is not the sentinel and lies in [0, raw_valid_max].
inline bool is_valid_raw(int raw, const CalibrationParams& params) {
    return raw >= 0 && raw != kSentinel && raw <= params.raw_valid_max;
}

double raw_to_cm(int raw, const CalibrationParams& params = {});

/// Inverse of raw_to_cm, rounded to the nearest raw step.
RawDepth cm_to_raw(double depth_cm, const CalibrationParams& params = {});

}  // namespace handdepth
