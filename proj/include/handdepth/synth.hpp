#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "handdepth/depth_model.hpp"
#include "handdepth/frame.hpp"
#include "handdepth/mask.hpp"
#include "handdepth/types.hpp"

namespace handdepth {

/// Parametric hand: a palm disk with up to five fingers. Each finger is a
/// rectangle running radially from half the palm radius out to
/// palm_radius + length, capped by a half-disc of diameter width.
/// Pixels belong to a shape when their center lies inside it.
struct HandSpec {
    PointF palm_center;
    double palm_radius = 20.0;
    int finger_count = 0;
    std::vector<double> finger_lengths;  ///< beyond the palm edge, pixels
    std::vector<double> finger_widths;
    /// Relative to orientation. Empty selects a fan 42 degrees apart
    /// centred on the orientation.
    std::vector<double> finger_angles_deg;
    /// 0 points the fan up (-y); positive angles turn clockwise on screen.
    double orientation_deg = 0.0;
    double base_depth_cm = 80.0;
    /// Raw units per pixel of distance from the tip; every other finger
    /// pixel is at least one raw unit farther than its tip.
    double tip_slope = 2.0;

    /// Absolute finger angles in degrees.
    std::vector<double> absolute_finger_angles() const;
};

struct GroundTruth {
    Point palm_center;
    double palm_inradius = 0.0;
    std::vector<Point> fingertips;  ///< one per finger, spec order
    std::vector<double> finger_widths;
    double orientation_deg = 0.0;
    BinaryMask support;
};

struct RenderedHand {
    DepthFrame frame;
    GroundTruth truth;
};

struct RenderedScene {
    DepthFrame frame;
    std::vector<GroundTruth> truths;
};

/// Throws GeometryError when the hand leaves the frame or fingers overlap,
/// DomainError when depths fall outside the calibration domain or the
/// background is less than 50 cm behind the hand.
RenderedHand render_hand(const HandSpec& spec, int width, int height, double background_depth_cm,
                         const CalibrationParams& params = {});

/// Composites up to two hands (nearest depth wins), then replaces a
/// dropout_rate fraction of hand pixels with the sentinel using a seeded
/// mt19937_64 stream. Throws GeometryError on overlapping supports.
RenderedScene render_scene(const std::vector<HandSpec>& specs, int width, int height,
                           double background_depth_cm, std::uint64_t noise_seed,
                           double dropout_rate, const CalibrationParams& params = {});

struct SceneSpec {
    std::vector<HandSpec> hands;
    std::uint64_t seed = 0;
    double dropout_rate = 0.0;
};

/// Reproducible benchmark corpus: scenes share frame size and background.
struct Corpus {
    int width = 320;
    int height = 240;
    double background_depth_cm = 250.0;
    std::vector<SceneSpec> scenes;
};

RenderedScene render(const Corpus& corpus, const SceneSpec& scene,
                     const CalibrationParams& params = {});

/// Options for the generated single-hand accuracy corpus.
struct CorpusOptions {
    int count = 200;
    std::uint64_t seed = 1;
    int width = 320;
    int height = 240;
    double min_depth_cm = 60.0;
    double max_depth_cm = 150.0;
    int min_fingers = 1;
    int max_fingers = 5;
    double dropout_rate = 0.02;
    double tip_slope = 1.0;
    double background_depth_cm = 250.0;
};

/// Hand size shrinks with depth like a real hand seen by a 320x240 sensor
/// (palm radius 1600 / depth_cm pixels). Orientation is uniform over
/// [0, 360).
Corpus generate_corpus(const CorpusOptions& options);

std::string corpus_to_json(const Corpus& corpus);
/// Throws ConfigError on missing or unknown fields.
Corpus corpus_from_json(std::string_view text);

}  // namespace handdepth
