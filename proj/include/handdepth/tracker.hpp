#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

#include "handdepth/fingertips.hpp"
#include "handdepth/palm_center.hpp"
#include "handdepth/types.hpp"

namespace handdepth {

enum class HandId { Single, Right, Left };

std::string_view to_string(HandId id);
Rgb overlay_color(HandId id);

/// Per-hand result of one frame.
struct HandReport {
    HandId id = HandId::Single;
    Rgb overlay_color = kWhite;
    PalmCenter palm;
    FingertipSet fingertips;
    std::size_t blob_area = 0;
};

/// What the detector knows about a hand before identities are assigned.
struct HandObservation {
    PalmCenter palm;
    FingertipSet fingertips;
    std::size_t blob_area = 0;
};

struct Track {
    /// Right or Left once a two-hand frame resolved it; Single until then.
    HandId side = HandId::Single;
    Point last_center;
    int last_seen = 0;
    int misses = 0;
};

struct TrackState {
    std::vector<Track> tracks;  ///< at most two
    int max_misses = 5;
};

/// One hand: Single, white. Two hands: identities follow the assignment of
/// least total palm displacement against resolved tracks; without resolved
/// history the hand with the greater palm x is Right (non-mirrored image).
/// Output is ordered Right before Left. Throws std::invalid_argument for
/// more than two hands.
std::vector<HandReport> label_hands(const std::vector<HandObservation>& hands,
                                    const TrackState& state);

/// Refreshes matched tracks, ages unmatched ones and drops tracks that
/// reach max_misses consecutive misses.
TrackState update(TrackState state, const std::vector<HandReport>& reports, int frame_index);

}  // namespace handdepth
