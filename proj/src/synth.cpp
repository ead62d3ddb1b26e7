#include "handdepth/synth.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include <json.hpp>

#include "handdepth/errors.hpp"

namespace handdepth {
namespace {

struct Vec {
    double x = 0.0;
    double y = 0.0;
};

// Unit vector for a heading in degrees; 0 is up (-y), clockwise positive.
// Quarter turns are exact so rotated specs rasterize to rotated supports.
Vec heading(double degrees) {
    const double d = std::fmod(std::fmod(degrees, 360.0) + 360.0, 360.0);
    if (d == 0.0)
        return {0.0, -1.0};
    if (d == 90.0)
        return {1.0, 0.0};
    if (d == 180.0)
        return {0.0, 1.0};
    if (d == 270.0)
        return {-1.0, 0.0};
    const double rad = d * std::numbers::pi / 180.0;
    return {std::sin(rad), -std::cos(rad)};
}

// Applies the orientation to a relative heading; exact for quarter turns.
Vec rotate(Vec v, double degrees) {
    const double d = std::fmod(std::fmod(degrees, 360.0) + 360.0, 360.0);
    if (d == 0.0)
        return v;
    if (d == 90.0)
        return {-v.y, v.x};
    if (d == 180.0)
        return {-v.x, -v.y};
    if (d == 270.0)
        return {v.y, -v.x};
    const Vec u = heading(d);
    // Rotation taking up (0,-1) to u.
    return {-v.x * u.y + v.y * -u.x, v.x * u.x + v.y * -u.y};
}

struct Finger {
    Vec axis;
    double t_begin = 0.0;  // along the axis, from the palm center
    double t_end = 0.0;    // rectangle end = cap center
    double half_width = 0.0;
    double width = 0.0;
    double extent = 0.0;   // palm edge to tip, pixels
};

struct HandGeometry {
    double radius = 0.0;
    std::vector<Finger> fingers;
};

bool in_disk(double dx, double dy, double r) {
    return dx * dx + dy * dy <= r * r;
}

bool in_finger(const Finger& f, double dx, double dy) {
    const double t = dx * f.axis.x + dy * f.axis.y;
    if (t < f.t_begin)
        return false;
    if (t <= f.t_end) {
        const double s = dx * -f.axis.y + dy * f.axis.x;
        if (std::abs(s) <= f.half_width)
            return true;
    }
    const double ex = dx - f.axis.x * f.t_end;
    const double ey = dy - f.axis.y * f.t_end;
    return t >= f.t_end && ex * ex + ey * ey <= f.half_width * f.half_width;
}

double relative_angle(const HandSpec& spec, std::size_t i) {
    if (!spec.finger_angles_deg.empty())
        return spec.finger_angles_deg[i];
    return (static_cast<double>(i) - (spec.finger_count - 1) / 2.0) * 42.0;
}

double wrap_radians(double a) {
    a = std::fmod(a, 2.0 * std::numbers::pi);
    return a < 0.0 ? a + 2.0 * std::numbers::pi : a;
}

HandGeometry build_geometry(const HandSpec& spec, int width, int height) {
    if (!(spec.palm_radius > 0.0) || !std::isfinite(spec.palm_radius))
        throw GeometryError("palm radius must be positive");
    if (spec.finger_count < 0 || spec.finger_count > 5)
        throw GeometryError("finger_count must be in [0, 5]");
    const auto n = static_cast<std::size_t>(spec.finger_count);
    if (spec.finger_lengths.size() != n || spec.finger_widths.size() != n)
        throw GeometryError("finger_lengths and finger_widths need finger_count entries");
    if (!spec.finger_angles_deg.empty() && spec.finger_angles_deg.size() != n)
        throw GeometryError("finger_angles_deg needs finger_count entries or none");
    if (!(spec.tip_slope > 0.0))
        throw GeometryError("tip_slope must be positive");

    HandGeometry g;
    g.radius = spec.palm_radius;
    const std::vector<double> angles = spec.absolute_finger_angles();
    for (std::size_t i = 0; i < n; ++i) {
        const double len = spec.finger_lengths[i];
        const double w = spec.finger_widths[i];
        if (!(len > 0.0) || !(w > 0.0))
            throw GeometryError("finger length and width must be positive");
        if (!(w < spec.palm_radius))
            throw GeometryError("finger width must be smaller than the palm radius");
        Finger f;
        const double rel = relative_angle(spec, i);
        f.axis = rotate(heading(rel), spec.orientation_deg);
        f.t_begin = spec.palm_radius / 2.0;
        f.t_end = spec.palm_radius + len;
        f.half_width = w / 2.0;
        f.width = w;
        f.extent = len + w / 2.0;
        g.fingers.push_back(f);
    }

    // Neighbouring fingers need a clear gap at the palm edge.
    if (n >= 2) {
        std::vector<std::pair<double, double>> around;  // (angle rad, width)
        for (std::size_t i = 0; i < n; ++i)
            around.emplace_back(wrap_radians(angles[i] * std::numbers::pi / 180.0),
                                g.fingers[i].width);
        std::sort(around.begin(), around.end());
        for (std::size_t i = 0; i < n; ++i) {
            const auto& a = around[i];
            const auto& b = around[(i + 1) % n];
            const double gap = wrap_radians(b.first - a.first);
            const double need = (a.second + b.second) / 2.0 + 1.0;
            if (spec.palm_radius * gap < need)
                throw GeometryError("fingers are attached too close together");
        }
    }

    // Analytic bounding box of every shape must stay inside the frame.
    const double cx = spec.palm_center.x;
    const double cy = spec.palm_center.y;
    double min_x = cx - g.radius, max_x = cx + g.radius;
    double min_y = cy - g.radius, max_y = cy + g.radius;
    for (const Finger& f : g.fingers) {
        const double ex = cx + f.axis.x * f.t_end;
        const double ey = cy + f.axis.y * f.t_end;
        min_x = std::min(min_x, ex - f.half_width);
        max_x = std::max(max_x, ex + f.half_width);
        min_y = std::min(min_y, ey - f.half_width);
        max_y = std::max(max_y, ey + f.half_width);
    }
    if (min_x < 0.0 || min_y < 0.0 || max_x > width - 1 || max_y > height - 1)
        throw GeometryError("hand does not fit inside the frame");
    return g;
}

struct Raster {
    std::vector<Point> pixels;      // raster order
    std::vector<RawDepth> depth;    // parallel to pixels
    GroundTruth truth;
};

Raster rasterize(const HandSpec& spec, int width, int height, const CalibrationParams& params) {
    const HandGeometry g = build_geometry(spec, width, height);
    const int base_raw = cm_to_raw(spec.base_depth_cm, params);
    const double cx = spec.palm_center.x;
    const double cy = spec.palm_center.y;

    Raster out;
    out.truth.palm_center = {static_cast<int>(std::lround(cx)), static_cast<int>(std::lround(cy))};
    out.truth.palm_inradius = g.radius;
    out.truth.orientation_deg = spec.orientation_deg;
    out.truth.support = BinaryMask(width, height);

    // Tip pixel of each finger: the finger pixel outside the palm nearest to
    // the analytic tip point, ties in raster order.
    std::vector<Point> tips(g.fingers.size());
    std::vector<int> tip_raw(g.fingers.size());
    for (std::size_t i = 0; i < g.fingers.size(); ++i) {
        const Finger& f = g.fingers[i];
        const double reach = f.t_end + f.half_width;
        const double tx = f.axis.x * reach;
        const double ty = f.axis.y * reach;
        double best = std::numeric_limits<double>::infinity();
        const int x0 = static_cast<int>(std::floor(cx + tx - f.width - 1));
        const int x1 = static_cast<int>(std::ceil(cx + tx + f.width + 1));
        const int y0 = static_cast<int>(std::floor(cy + ty - f.width - 1));
        const int y1 = static_cast<int>(std::ceil(cy + ty + f.width + 1));
        for (int y = std::max(0, y0); y <= std::min(height - 1, y1); ++y)
            for (int x = std::max(0, x0); x <= std::min(width - 1, x1); ++x) {
                const double dx = x - cx;
                const double dy = y - cy;
                if (!in_finger(f, dx, dy) || in_disk(dx, dy, g.radius))
                    continue;
                const double d2 = (dx - tx) * (dx - tx) + (dy - ty) * (dy - ty);
                if (d2 < best) {
                    best = d2;
                    tips[i] = {x, y};
                }
            }
        if (!std::isfinite(best))
            throw GeometryError("finger " + std::to_string(i) + " has no pixel beyond the palm");
        tip_raw[i] = base_raw - static_cast<int>(std::ceil(spec.tip_slope * f.extent));
        if (tip_raw[i] < 0)
            throw DomainError("finger " + std::to_string(i) + " tip depth below raw 0");
        out.truth.fingertips.push_back(tips[i]);
        out.truth.finger_widths.push_back(f.width);
    }

    for (int y = 0; y < height; ++y)
        for (int x = 0; x < width; ++x) {
            const double dx = x - cx;
            const double dy = y - cy;
            int raw = -1;
            if (in_disk(dx, dy, g.radius)) {
                raw = base_raw;
            } else {
                for (std::size_t i = 0; i < g.fingers.size(); ++i) {
                    if (!in_finger(g.fingers[i], dx, dy))
                        continue;
                    const double dist = std::hypot(static_cast<double>(x - tips[i].x),
                                                   static_cast<double>(y - tips[i].y));
                    const int v = std::min(
                        base_raw, tip_raw[i] + static_cast<int>(std::ceil(spec.tip_slope * dist)));
                    raw = raw < 0 ? v : std::min(raw, v);
                }
            }
            if (raw < 0)
                continue;
            out.pixels.push_back({x, y});
            out.depth.push_back(static_cast<RawDepth>(raw));
            out.truth.support.set(x, y);
        }
    return out;
}

RawDepth background_raw(const std::vector<HandSpec>& specs, double background_depth_cm,
                        const CalibrationParams& params) {
    for (const HandSpec& s : specs)
        if (background_depth_cm < s.base_depth_cm + 50.0)
            throw DomainError("background must be at least 50 cm behind every hand");
    return cm_to_raw(background_depth_cm, params);
}

}  // namespace

std::vector<double> HandSpec::absolute_finger_angles() const {
    std::vector<double> out;
    for (int i = 0; i < finger_count; ++i)
        out.push_back(orientation_deg + relative_angle(*this, static_cast<std::size_t>(i)));
    return out;
}

RenderedHand render_hand(const HandSpec& spec, int width, int height, double background_depth_cm,
                         const CalibrationParams& params) {
    const RawDepth bg = background_raw({spec}, background_depth_cm, params);
    Raster r = rasterize(spec, width, height, params);
    DepthFrame frame(width, height, bg);
    for (std::size_t i = 0; i < r.pixels.size(); ++i)
        frame.set(r.pixels[i], r.depth[i]);
    return {std::move(frame), std::move(r.truth)};
}

RenderedScene render_scene(const std::vector<HandSpec>& specs, int width, int height,
                           double background_depth_cm, std::uint64_t noise_seed,
                           double dropout_rate, const CalibrationParams& params) {
    if (specs.size() > 2)
        throw GeometryError("a scene holds at most two hands");
    if (!(dropout_rate >= 0.0 && dropout_rate <= 1.0))
        throw DomainError("dropout_rate must lie in [0, 1]");
    const RawDepth bg = background_raw(specs, background_depth_cm, params);
    DepthFrame frame(width, height, bg);
    BinaryMask all(width, height);
    RenderedScene scene;
    for (const HandSpec& spec : specs) {
        Raster r = rasterize(spec, width, height, params);
        for (std::size_t i = 0; i < r.pixels.size(); ++i) {
            if (all.test(r.pixels[i]))
                throw GeometryError("hand supports overlap");
            all.set(r.pixels[i]);
            frame.set(r.pixels[i], std::min(frame.at(r.pixels[i]), r.depth[i]));
        }
        scene.truths.push_back(std::move(r.truth));
    }
    if (dropout_rate > 0.0) {
        std::mt19937_64 rng(noise_seed);
        const long double scaled = std::ldexp(static_cast<long double>(dropout_rate), 64);
        const bool always = dropout_rate >= 1.0;
        const auto threshold = always ? 0 : static_cast<std::uint64_t>(scaled);
        for (int y = 0; y < height; ++y)
            for (int x = 0; x < width; ++x)
                if (all.test(x, y) && (rng() < threshold || always))
                    frame.set(x, y, kSentinel);
    }
    scene.frame = std::move(frame);
    return scene;
}

RenderedScene render(const Corpus& corpus, const SceneSpec& scene, const CalibrationParams& params) {
    return render_scene(scene.hands, corpus.width, corpus.height, corpus.background_depth_cm,
                        scene.seed, scene.dropout_rate, params);
}

namespace {

class Draw {
public:
    explicit Draw(std::uint64_t seed) : rng_(seed) {}

    // 53-bit uniform in [0, 1); independent of the standard library's
    // distribution implementations.
    double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
    int integer(int lo, int hi) {
        return lo + static_cast<int>(rng_() % static_cast<std::uint64_t>(hi - lo + 1));
    }
    std::uint64_t bits() { return rng_(); }

private:
    std::mt19937_64 rng_;
};

}  // namespace

Corpus generate_corpus(const CorpusOptions& o) {
    if (o.min_fingers < 0 || o.max_fingers > 5 || o.min_fingers > o.max_fingers)
        throw ConfigError("finger range must lie within [0, 5]");
    Corpus corpus;
    corpus.width = o.width;
    corpus.height = o.height;
    corpus.background_depth_cm = o.background_depth_cm;
    Draw draw(o.seed);
    for (int i = 0; i < o.count; ++i) {
        HandSpec h;
        h.base_depth_cm = draw.uniform(o.min_depth_cm, o.max_depth_cm);
        h.palm_radius = 1600.0 / h.base_depth_cm;
        h.finger_count = draw.integer(o.min_fingers, o.max_fingers);
        double reach = h.palm_radius;
        for (int f = 0; f < h.finger_count; ++f) {
            h.finger_lengths.push_back(draw.uniform(1.2, 1.6) * h.palm_radius);
            h.finger_widths.push_back(draw.uniform(0.35, 0.45) * h.palm_radius);
            reach = std::max(reach, h.palm_radius + h.finger_lengths.back() +
                                        h.finger_widths.back() / 2.0);
        }
        h.orientation_deg = draw.uniform(0.0, 360.0);
        h.tip_slope = o.tip_slope;
        const int margin = static_cast<int>(std::ceil(reach)) + 1;
        if (2 * margin >= o.width || 2 * margin >= o.height)
            throw ConfigError("frame too small for a hand at " + std::to_string(h.base_depth_cm) + " cm");
        h.palm_center = {static_cast<double>(draw.integer(margin, o.width - 1 - margin)),
                         static_cast<double>(draw.integer(margin, o.height - 1 - margin))};
        SceneSpec scene;
        scene.hands.push_back(std::move(h));
        scene.seed = draw.bits();
        scene.dropout_rate = o.dropout_rate;
        corpus.scenes.push_back(std::move(scene));
    }
    return corpus;
}

namespace {

using nlohmann::json;

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const char* where) {
    if (!obj.is_object())
        throw ConfigError(std::string(where) + " must be a JSON object");
    for (const auto& item : obj.items()) {
        bool ok = false;
        for (const char* k : known)
            ok = ok || item.key() == k;
        if (!ok)
            throw ConfigError("unknown key \"" + item.key() + "\" in " + where);
    }
}

json hand_to_json(const HandSpec& h) {
    json j = json::object();
    j["palm_center"] = {{"x", h.palm_center.x}, {"y", h.palm_center.y}};
    j["palm_radius"] = h.palm_radius;
    j["finger_count"] = h.finger_count;
    j["finger_lengths"] = h.finger_lengths;
    j["finger_widths"] = h.finger_widths;
    j["finger_angles_deg"] = h.finger_angles_deg;
    j["orientation_deg"] = h.orientation_deg;
    j["base_depth_cm"] = h.base_depth_cm;
    j["tip_slope"] = h.tip_slope;
    return j;
}

HandSpec hand_from_json(const json& j) {
    reject_unknown(j,
                   {"palm_center", "palm_radius", "finger_count", "finger_lengths", "finger_widths",
                    "finger_angles_deg", "orientation_deg", "base_depth_cm", "tip_slope"},
                   "hand spec");
    HandSpec h;
    const json& c = j.at("palm_center");
    reject_unknown(c, {"x", "y"}, "palm_center");
    h.palm_center = {c.at("x").get<double>(), c.at("y").get<double>()};
    h.palm_radius = j.at("palm_radius").get<double>();
    h.finger_count = j.at("finger_count").get<int>();
    h.finger_lengths = j.value("finger_lengths", std::vector<double>{});
    h.finger_widths = j.value("finger_widths", std::vector<double>{});
    h.finger_angles_deg = j.value("finger_angles_deg", std::vector<double>{});
    h.orientation_deg = j.value("orientation_deg", 0.0);
    h.base_depth_cm = j.at("base_depth_cm").get<double>();
    h.tip_slope = j.value("tip_slope", 2.0);
    return h;
}

}  // namespace

std::string corpus_to_json(const Corpus& corpus) {
    json scenes = json::array();
    for (const SceneSpec& s : corpus.scenes) {
        json hands = json::array();
        for (const HandSpec& h : s.hands)
            hands.push_back(hand_to_json(h));
        scenes.push_back({{"seed", s.seed}, {"dropout_rate", s.dropout_rate}, {"hands", hands}});
    }
    json j = {{"width", corpus.width},
              {"height", corpus.height},
              {"background_depth_cm", corpus.background_depth_cm},
              {"scenes", scenes}};
    return j.dump(2) + "\n";
}

Corpus corpus_from_json(std::string_view text) {
    try {
        const json j = json::parse(text);
        reject_unknown(j, {"width", "height", "background_depth_cm", "scenes"}, "corpus");
        Corpus c;
        c.width = j.value("width", 320);
        c.height = j.value("height", 240);
        c.background_depth_cm = j.value("background_depth_cm", 250.0);
        for (const json& s : j.at("scenes")) {
            reject_unknown(s, {"seed", "dropout_rate", "hands"}, "scene");
            SceneSpec scene;
            scene.seed = s.value("seed", std::uint64_t{0});
            scene.dropout_rate = s.value("dropout_rate", 0.0);
            for (const json& h : s.at("hands"))
                scene.hands.push_back(hand_from_json(h));
            c.scenes.push_back(std::move(scene));
        }
        return c;
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid corpus JSON: ") + e.what());
    }
}

}  // namespace handdepth
