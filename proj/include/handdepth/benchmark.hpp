#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "handdepth/pipeline.hpp"
#include "handdepth/synth.hpp"

namespace handdepth {

/// Accuracy of detected hands against synthetic ground truth.
///
/// Detected hands are paired with true hands by nearest palm center.
/// Within a hand, min(detected, true) tips are matched by the assignment of
/// least total distance; count recall and precision are matched / true and
/// matched / detected. A matched tip is within tolerance when its error is
/// at most max(2, finger width / 2) pixels. A palm center is within
/// tolerance when its error is at most 0.25 x the true palm radius.
struct BenchmarkMetrics {
    struct Bin {
        double start_deg = 0.0;
        double end_deg = 0.0;
        std::size_t hands = 0;
        std::size_t true_tips = 0;
        std::size_t detected_tips = 0;
        std::size_t matched_tips = 0;
        std::size_t palms_within = 0;
    };

    std::size_t scenes = 0;
    std::size_t true_hands = 0;
    std::size_t detected_hands = 0;
    std::size_t matched_hands = 0;

    std::size_t true_tips = 0;
    std::size_t detected_tips = 0;
    std::size_t matched_tips = 0;
    std::size_t tips_within_tolerance = 0;
    double tip_error_sum_px = 0.0;
    double tip_error_max_px = 0.0;

    std::size_t palms_evaluated = 0;
    std::size_t palms_within_tolerance = 0;
    double palm_error_ratio_sum = 0.0;
    double palm_error_ratio_max = 0.0;

    std::vector<Bin> per_orientation;  ///< eight 45-degree bins

    double count_recall() const;
    double count_precision() const;
    /// Share of matched tips inside their tolerance.
    double tip_within_fraction() const;
    /// Share of true hands whose palm center is inside tolerance.
    double palm_within_fraction() const;

    std::string to_json() const;
};

/// Scores one scene's detections into `metrics`.
void score_scene(const std::vector<GroundTruth>& truths, const DetectionReport& report,
                 BenchmarkMetrics& metrics);

/// Renders every scene, runs each as an independent single-frame sequence
/// and accumulates metrics.
BenchmarkMetrics run_benchmark(const Corpus& corpus, const PipelineConfig& config);

}  // namespace handdepth
