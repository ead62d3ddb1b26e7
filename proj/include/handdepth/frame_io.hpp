#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "handdepth/frame.hpp"
#include "handdepth/tracker.hpp"

namespace handdepth {

using Bytes = std::vector<std::uint8_t>;

struct DetectionReport {
    int frame_index = 0;
    std::vector<HandReport> hands;  ///< 0-2 entries
};

struct PgmDecode {
    DepthFrame frame;
    std::size_t clamped = 0;  ///< samples above 2047 replaced by the sentinel
};

/// Binary 16-bit PGM ("P5", maxval 256..65535, big-endian samples).
/// Throws FormatError with the byte offset of the first problem.
PgmDecode read_pgm(std::span<const std::uint8_t> bytes);

/// Canonical form: "P5\n<w> <h>\n2047\n" followed by big-endian samples.
Bytes write_pgm(const DepthFrame& frame);

/// Headerless little-endian 16-bit samples; bits above 11 are masked off.
DepthFrame read_raw(std::span<const std::uint8_t> bytes, int width, int height);
Bytes write_raw(const DepthFrame& frame);

/// Compact JSON with fixed key order and two-decimal floats. Hands are
/// emitted Right before Left; fingertips by increasing x, then y.
std::string write_report(const DetectionReport& report);

/// Binary PPM ("P6"). Depth is drawn as gray (near = bright, raw 0 maps to
/// 255 and raw_valid_max to 0; invalid samples black). Each fingertip is a
/// 3x3 square and each palm center a cross spanning 7 pixels, in the hand's
/// overlay color. Marks are clipped to the frame.
Bytes write_overlay(const DepthFrame& frame, const std::vector<HandReport>& hands,
                    int raw_valid_max = 1100);

Bytes read_file(const std::string& path);
void write_file(const std::string& path, std::span<const std::uint8_t> bytes);
void write_file(const std::string& path, const std::string& text);

}  // namespace handdepth
