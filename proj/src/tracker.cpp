#include "handdepth/tracker.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>

namespace handdepth {
namespace {

double distance(Point a, Point b) {
    return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
}

const Track* find_side(const TrackState& state, HandId side) {
    for (const Track& t : state.tracks)
        if (t.side == side)
            return &t;
    return nullptr;
}

HandReport make_report(const HandObservation& obs, HandId id) {
    return {id, overlay_color(id), obs.palm, obs.fingertips, obs.blob_area};
}

// True when hands[0] should be Right under the x rule.
bool first_is_right_by_x(const std::vector<HandObservation>& hands) {
    const Point a = hands[0].palm.position;
    const Point b = hands[1].palm.position;
    if (a.x != b.x)
        return a.x > b.x;
    return raster_less(b, a);
}

}  // namespace

std::string_view to_string(HandId id) {
    switch (id) {
        case HandId::Right:
            return "Right";
        case HandId::Left:
            return "Left";
        case HandId::Single:
            break;
    }
    return "Single";
}

Rgb overlay_color(HandId id) {
    return id == HandId::Left ? kPink : kWhite;
}

std::vector<HandReport> label_hands(const std::vector<HandObservation>& hands,
                                    const TrackState& state) {
    if (hands.size() > 2)
        throw std::invalid_argument("at most two hands can be labelled");
    if (hands.empty())
        return {};
    if (hands.size() == 1)
        return {make_report(hands[0], HandId::Single)};

    const Track* right = find_side(state, HandId::Right);
    const Track* left = find_side(state, HandId::Left);
    const Point p0 = hands[0].palm.position;
    const Point p1 = hands[1].palm.position;

    bool first_right = first_is_right_by_x(hands);
    if (right && left) {
        const double keep = distance(p0, right->last_center) + distance(p1, left->last_center);
        const double swap = distance(p1, right->last_center) + distance(p0, left->last_center);
        if (keep != swap)
            first_right = keep < swap;
    } else if (right || left) {
        const Track* known = right ? right : left;
        const double d0 = distance(p0, known->last_center);
        const double d1 = distance(p1, known->last_center);
        if (d0 != d1) {
            const bool first_is_known = d0 < d1;
            first_right = (known->side == HandId::Right) == first_is_known;
        }
    }

    const std::size_t r = first_right ? 0 : 1;
    return {make_report(hands[r], HandId::Right), make_report(hands[1 - r], HandId::Left)};
}

TrackState update(TrackState state, const std::vector<HandReport>& reports, int frame_index) {
    std::vector<bool> matched(state.tracks.size(), false);
    std::vector<const HandReport*> pending;

    auto refresh = [&](std::size_t i, const HandReport& rep) {
        matched[i] = true;
        state.tracks[i].last_center = rep.palm.position;
        state.tracks[i].last_seen = frame_index;
        state.tracks[i].misses = 0;
    };

    // Sided reports claim the track of the same side first.
    for (const HandReport& rep : reports) {
        if (rep.id == HandId::Single) {
            pending.push_back(&rep);
            continue;
        }
        bool done = false;
        for (std::size_t i = 0; i < state.tracks.size() && !done; ++i)
            if (!matched[i] && state.tracks[i].side == rep.id) {
                refresh(i, rep);
                done = true;
            }
        if (!done)
            pending.push_back(&rep);
    }

    for (const HandReport* rep : pending) {
        std::optional<std::size_t> nearest;
        for (std::size_t i = 0; i < state.tracks.size(); ++i) {
            if (matched[i])
                continue;
            // A sided report may only adopt an unresolved track.
            if (rep->id != HandId::Single && state.tracks[i].side != HandId::Single)
                continue;
            if (!nearest || distance(state.tracks[i].last_center, rep->palm.position) <
                                distance(state.tracks[*nearest].last_center, rep->palm.position))
                nearest = i;
        }
        if (nearest) {
            refresh(*nearest, *rep);
            if (rep->id != HandId::Single)
                state.tracks[*nearest].side = rep->id;
        } else {
            state.tracks.push_back({rep->id, rep->palm.position, frame_index, 0});
            matched.push_back(true);
        }
    }

    std::vector<Track> kept;
    for (std::size_t i = 0; i < state.tracks.size(); ++i) {
        Track t = state.tracks[i];
        if (!matched[i] && ++t.misses >= state.max_misses)
            continue;
        kept.push_back(t);
    }
    // Oldest tracks go first if more than two survive.
    while (kept.size() > 2) {
        auto stale = std::max_element(kept.begin(), kept.end(), [](const Track& a, const Track& b) {
            return a.misses < b.misses;
        });
        kept.erase(stale);
    }
    state.tracks = std::move(kept);
    return state;
}

}  // namespace handdepth
