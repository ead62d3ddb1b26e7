#include "handdepth/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <json.hpp>

#include "handdepth/distance_transform.hpp"
#include "handdepth/errors.hpp"
#include "handdepth/morphology.hpp"

namespace handdepth {

void PipelineConfig::validate() const {
    try {
        calibration.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what());
    }
    if (!(band_cm > 0.0))
        throw ConfigError("band_cm must be positive");
    if (!(slab_cm > 0.0))
        throw ConfigError("slab_cm must be positive");
    if (min_area < 1)
        throw ConfigError("min_area must be at least 1");
    if (!(radius_factor > 0.0 && radius_factor < 1.0))
        throw ConfigError("radius_factor must lie in (0, 1)");
    if (min_finger_area < 0)
        throw ConfigError("min_finger_area must be non-negative");
    if (max_hands < 1 || max_hands > 2)
        throw ConfigError("max_hands must be 1 or 2");
    if (max_misses < 1)
        throw ConfigError("max_misses must be at least 1");
    if (threads < 1)
        throw ConfigError("threads must be at least 1");
}

namespace {

using nlohmann::json;

template <typename T>
void read_key(const json& j, const char* key, T& out) {
    if (j.contains(key))
        out = j.at(key).get<T>();
}

void check_keys(const json& j, std::initializer_list<const char*> known, const char* where) {
    if (!j.is_object())
        throw ConfigError(std::string(where) + " must be a JSON object");
    for (const auto& item : j.items())
        if (std::none_of(known.begin(), known.end(),
                         [&](const char* k) { return item.key() == k; }))
            throw ConfigError("unknown config key \"" + item.key() + "\" in " + where);
}

}  // namespace

std::string config_to_json(const PipelineConfig& c) {
    json j = json::object();
    j["calibration"] = {{"h", c.calibration.h},
                        {"k", c.calibration.k},
                        {"l", c.calibration.l},
                        {"o", c.calibration.o},
                        {"raw_valid_max", c.calibration.raw_valid_max}};
    j["band_cm"] = c.band_cm;
    j["slab_cm"] = c.slab_cm;
    j["min_area"] = c.min_area;
    j["radius_factor"] = c.radius_factor;
    j["min_finger_area"] = c.min_finger_area;
    j["max_hands"] = c.max_hands;
    j["max_misses"] = c.max_misses;
    j["threads"] = c.threads;
    j["write_overlays"] = c.write_overlays;
    return j.dump(2) + "\n";
}

PipelineConfig config_from_json(std::string_view text) {
    PipelineConfig c;
    try {
        const json j = json::parse(text);
        check_keys(j,
                   {"calibration", "band_cm", "slab_cm", "min_area", "radius_factor",
                    "min_finger_area", "max_hands", "max_misses", "threads", "write_overlays"},
                   "config");
        if (j.contains("calibration")) {
            const json& cal = j.at("calibration");
            check_keys(cal, {"h", "k", "l", "o", "raw_valid_max"}, "calibration");
            read_key(cal, "h", c.calibration.h);
            read_key(cal, "k", c.calibration.k);
            read_key(cal, "l", c.calibration.l);
            read_key(cal, "o", c.calibration.o);
            read_key(cal, "raw_valid_max", c.calibration.raw_valid_max);
        }
        read_key(j, "band_cm", c.band_cm);
        read_key(j, "slab_cm", c.slab_cm);
        read_key(j, "min_area", c.min_area);
        read_key(j, "radius_factor", c.radius_factor);
        read_key(j, "min_finger_area", c.min_finger_area);
        read_key(j, "max_hands", c.max_hands);
        read_key(j, "max_misses", c.max_misses);
        read_key(j, "threads", c.threads);
        read_key(j, "write_overlays", c.write_overlays);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config JSON: ") + e.what());
    }
    c.validate();
    return c;
}

namespace {

Blob shift(const Blob& b, int dx, int dy) {
    std::vector<Point> pixels;
    pixels.reserve(b.pixels.size());
    for (const Point& p : b.pixels)
        pixels.push_back({p.x + dx, p.y + dy});
    return Blob::from_pixels(b.label, std::move(pixels));
}

Blob mask_to_blob(const BinaryMask& mask, int dx, int dy) {
    std::vector<Point> pixels;
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            if (mask.test(x, y))
                pixels.push_back({x + dx, y + dy});
    return Blob::from_pixels(1, std::move(pixels));
}

HandAnalysis analyze_hand(const DepthFrame& frame, const HandSeed& seed, const Blob& blob,
                          const PipelineConfig& config) {
    HandAnalysis out;
    out.seed = seed;

    // Work in the hand's bounding box with a background margin.
    constexpr int kMargin = 2;
    const int x0 = blob.bbox.min_x - kMargin;
    const int y0 = blob.bbox.min_y - kMargin;
    const int w = blob.bbox.width() + 2 * kMargin;
    const int h = blob.bbox.height() + 2 * kMargin;
    // Dropouts inside the hand are missing samples, not background.
    const BinaryMask hand = fill_holes(blob_to_mask(blob, w, h, x0, y0));
    const Blob local_hand = mask_to_blob(hand, 0, 0);
    out.hand = shift(local_hand, x0, y0);

    const DistanceMap dist = distance_transform(hand);
    const PalmCenter local_center = find_palm_center(dist, local_hand);
    out.hand_center = {{local_center.position.x + x0, local_center.position.y + y0},
                       local_center.inradius_px};

    out.opening_radius = auto_radius(local_center.inradius_px, config.radius_factor);
    const BinaryMask palm = extract_palm(hand, out.opening_radius);
    const Blob local_palm = mask_to_blob(palm, 0, 0);
    out.palm = shift(local_palm, x0, y0);

    const PalmCenter palm_center = find_palm_center(dist, local_palm);
    out.palm_center = {{palm_center.position.x + x0, palm_center.position.y + y0},
                       palm_center.inradius_px};

    const std::size_t min_finger = config.min_finger_area > 0
                                       ? static_cast<std::size_t>(config.min_finger_area)
                                       : default_min_finger_area(local_hand.area());
    for (const Blob& f : finger_masks(hand, palm, palm_center.position, min_finger))
        out.fingers.push_back(shift(f, x0, y0));
    out.fingertips = detect_fingertips(frame, out.fingers, config.calibration);
    return out;
}

}  // namespace

FrameAnalysis analyze_frame(const DepthFrame& frame, const PipelineConfig& config) {
    FrameAnalysis result;
    std::vector<HandSeed> seeds;
    try {
        seeds = find_hand_seeds(frame, {config.max_hands, config.min_area, config.slab_cm},
                                config.calibration);
    } catch (const NotFound& e) {
        result.warnings.push_back(e.what());
        return result;
    }

    std::vector<int> used_labels;
    for (const HandSeed& seed : seeds) {
        try {
            const BinaryMask band = depth_threshold(frame, seed, config.band_cm, config.calibration);
            const std::vector<Blob> blobs = connected_components(band);
            const Blob& blob = select_hand_blob(blobs, seed);
            if (std::find(used_labels.begin(), used_labels.end(), blob.label) != used_labels.end()) {
                result.warnings.push_back("two seeds fell on the same hand blob");
                continue;
            }
            used_labels.push_back(blob.label);
            result.hands.push_back(analyze_hand(frame, seed, blob, config));
        } catch (const Error& e) {
            result.warnings.push_back(e.what());
        }
    }
    return result;
}

DetectionReport HandTracker::step(const FrameAnalysis& analysis, int frame_index) {
    std::vector<HandObservation> observations;
    for (const HandAnalysis& h : analysis.hands)
        observations.push_back({h.palm_center, h.fingertips, h.hand.area()});
    DetectionReport report;
    report.frame_index = frame_index;
    report.hands = label_hands(observations, state_);
    state_ = update(std::move(state_), report.hands, frame_index);
    return report;
}

std::vector<FrameOutput> run_pipeline(std::span<const DepthFrame> frames,
                                      const PipelineConfig& config) {
    config.validate();
    std::vector<FrameAnalysis> analyses(frames.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < frames.size(); i = next++)
            analyses[i] = analyze_frame(frames[i], config);
    };
    const auto workers = std::min<std::size_t>(static_cast<std::size_t>(config.threads), frames.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::jthread> pool;
        for (std::size_t t = 0; t < workers; ++t)
            pool.emplace_back(worker);
    }

    std::vector<FrameOutput> out(frames.size());
    HandTracker tracker(config.max_misses);
    for (std::size_t i = 0; i < frames.size(); ++i) {
        out[i].report = tracker.step(analyses[i], static_cast<int>(i));
        out[i].warnings = std::move(analyses[i].warnings);
        if (config.write_overlays)
            out[i].overlay = write_overlay(frames[i], out[i].report.hands,
                                           config.calibration.raw_valid_max);
    }
    return out;
}

}  // namespace handdepth
