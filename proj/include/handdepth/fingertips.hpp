#pragma once

#include <vector>

#include "handdepth/depth_model.hpp"
#include "handdepth/frame.hpp"
#include "handdepth/mask.hpp"
#include "handdepth/types.hpp"

namespace handdepth {

struct Fingertip {
    Point position;
    double depth_cm = 0.0;
    int finger_index = 0;
};

/// Tips ordered by finger_index; at most five.
struct FingertipSet {
    std::vector<Fingertip> tips;
};

/// The pixel of minimum raw depth within the finger mask (the point closest
/// to the camera), ties to smallest y then smallest x. Invalid samples are
/// skipped. Throws NoValidDepth when the mask holds no valid sample.
Fingertip detect_fingertip(const DepthFrame& frame, const Blob& finger, int finger_index,
                           const CalibrationParams& params = {});

/// One tip per finger; finger_index follows input order. Fingers without a
/// valid sample are omitted.
FingertipSet detect_fingertips(const DepthFrame& frame, const std::vector<Blob>& fingers,
                               const CalibrationParams& params = {});

/// Second-smallest distinct raw depth minus the smallest over the finger's
/// valid samples; 0 flags an ambiguous minimum. Throws NoValidDepth with
/// fewer than two valid samples.
int tips_toward_camera_margin(const DepthFrame& frame, const Blob& finger,
                              const CalibrationParams& params = {});

}  // namespace handdepth
