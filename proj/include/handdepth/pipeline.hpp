#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "handdepth/depth_model.hpp"
#include "handdepth/fingertips.hpp"
#include "handdepth/frame.hpp"
#include "handdepth/frame_io.hpp"
#include "handdepth/mask.hpp"
#include "handdepth/palm_center.hpp"
#include "handdepth/segmentation.hpp"
#include "handdepth/tracker.hpp"

namespace handdepth {

struct PipelineConfig {
    CalibrationParams calibration;
    double band_cm = 15.0;
    double slab_cm = 20.0;
    int min_area = 150;
    double radius_factor = 0.7;
    /// 0 selects max(4, round(0.05 * hand_area / 5)) per hand.
    int min_finger_area = 0;
    int max_hands = 2;
    int max_misses = 5;
    /// Worker threads for per-frame analysis; output does not depend on it.
    int threads = 1;
    bool write_overlays = false;

    /// Throws ConfigError for out-of-range values.
    void validate() const;

    friend bool operator==(const PipelineConfig&, const PipelineConfig&) = default;
};

std::string config_to_json(const PipelineConfig& config);
/// Missing keys keep their defaults; unknown keys throw ConfigError.
PipelineConfig config_from_json(std::string_view text);

/// Everything computed for one hand, in frame coordinates.
struct HandAnalysis {
    HandSeed seed;
    Blob hand;                 ///< hole-filled hand blob
    PalmCenter hand_center;    ///< argmax of the hand distance map
    int opening_radius = 0;
    Blob palm;
    PalmCenter palm_center;    ///< argmax restricted to the palm
    std::vector<Blob> fingers;
    FingertipSet fingertips;
};

struct FrameAnalysis {
    std::vector<HandAnalysis> hands;
    std::vector<std::string> warnings;
};

/// Seed, segment and measure every hand in one frame. Pure; no tracking.
/// Per-hand failures become warnings and drop that hand.
FrameAnalysis analyze_frame(const DepthFrame& frame, const PipelineConfig& config);

/// Stateful identity labelling across frames; feed frames in order.
class HandTracker {
public:
    explicit HandTracker(int max_misses = 5) { state_.max_misses = max_misses; }

    DetectionReport step(const FrameAnalysis& analysis, int frame_index);
    const TrackState& state() const noexcept { return state_; }

private:
    TrackState state_;
};

struct FrameOutput {
    DetectionReport report;
    Bytes overlay;                      ///< empty unless write_overlays
    std::vector<std::string> warnings;
};

/// Analyses frames on config.threads workers, then labels and tracks them
/// strictly in input order.
std::vector<FrameOutput> run_pipeline(std::span<const DepthFrame> frames,
                                      const PipelineConfig& config);

}  // namespace handdepth
