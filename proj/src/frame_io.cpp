#include "handdepth/frame_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iterator>
#include <stdexcept>

#include "handdepth/errors.hpp"

namespace handdepth {
namespace {

bool is_pnm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderReader {
public:
    explicit HeaderReader(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    std::size_t offset() const { return pos_; }

    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (is_pnm_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else {
                return;
            }
        }
    }

    long number(const char* what) {
        skip_space_and_comments();
        const std::size_t start = pos_;
        long value = 0;
        while (pos_ < bytes_.size() && bytes_[pos_] >= '0' && bytes_[pos_] <= '9') {
            value = value * 10 + (bytes_[pos_] - '0');
            if (value > 1'000'000'000)
                throw FormatError(std::string("PGM ") + what + " too large", start);
            ++pos_;
        }
        if (pos_ == start)
            throw FormatError(std::string("expected PGM ") + what, start);
        return value;
    }

    // Exactly one whitespace byte separates maxval from the raster.
    void single_space() {
        if (pos_ >= bytes_.size() || !is_pnm_space(bytes_[pos_]))
            throw FormatError("expected whitespace after PGM maxval", pos_);
        ++pos_;
    }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

void append(Bytes& out, const std::string& s) {
    out.insert(out.end(), s.begin(), s.end());
}

std::string fixed2(double v) {
    // Avoid "-0.00".
    if (std::abs(v) < 0.005)
        v = 0.0;
    std::array<char, 64> buf{};
    const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                   std::chars_format::fixed, 2);
    return std::string(buf.data(), res.ptr);
}

std::string hand_json(const HandReport& hand) {
    std::vector<Fingertip> tips = hand.fingertips.tips;
    std::stable_sort(tips.begin(), tips.end(), [](const Fingertip& a, const Fingertip& b) {
        return a.position.x != b.position.x ? a.position.x < b.position.x
                                            : a.position.y < b.position.y;
    });
    std::string s = "{\"id\":\"";
    s += to_string(hand.id);
    s += "\",\"overlay_color\":[" + std::to_string(hand.overlay_color.r) + "," +
         std::to_string(hand.overlay_color.g) + "," + std::to_string(hand.overlay_color.b) + "]";
    s += ",\"palm_center\":{\"x\":" + std::to_string(hand.palm.position.x) +
         ",\"y\":" + std::to_string(hand.palm.position.y) + "}";
    s += ",\"palm_radius_px\":" + fixed2(hand.palm.inradius_px);
    s += ",\"fingertips\":[";
    for (std::size_t i = 0; i < tips.size(); ++i) {
        if (i)
            s += ",";
        s += "{\"x\":" + std::to_string(tips[i].position.x) +
             ",\"y\":" + std::to_string(tips[i].position.y) +
             ",\"depth_cm\":" + fixed2(tips[i].depth_cm) + "}";
    }
    s += "]}";
    return s;
}

int hand_rank(HandId id) {
    switch (id) {
        case HandId::Right:
            return 0;
        case HandId::Left:
            return 1;
        case HandId::Single:
            break;
    }
    return 2;
}

}  // namespace

PgmDecode read_pgm(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw FormatError("not a PGM file", 0);
    if (bytes[1] != '5')
        throw FormatError(std::string("unsupported PNM variant P") + static_cast<char>(bytes[1]), 1);
    HeaderReader reader(bytes.subspan(2));
    const long width = reader.number("width");
    const long height = reader.number("height");
    const std::size_t maxval_at = 2 + reader.offset();
    const long maxval = reader.number("maxval");
    if (width < 1 || height < 1)
        throw FormatError("PGM dimensions must be positive", 2);
    if (maxval < 256 || maxval > 65535)
        throw FormatError("PGM maxval must be in [256, 65535] for 16-bit depth", maxval_at);
    reader.single_space();

    const std::size_t data_at = 2 + reader.offset();
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() - data_at < 2 * count)
        throw FormatError("truncated PGM raster: expected " + std::to_string(2 * count) +
                              " bytes",
                          bytes.size());
    PgmDecode out;
    std::vector<RawDepth> samples(count);
    for (std::size_t i = 0; i < count; ++i) {
        const unsigned v = (static_cast<unsigned>(bytes[data_at + 2 * i]) << 8) |
                           bytes[data_at + 2 * i + 1];
        if (v > kRawMax) {
            samples[i] = kSentinel;
            ++out.clamped;
        } else {
            samples[i] = static_cast<RawDepth>(v);
        }
    }
    out.frame = DepthFrame(static_cast<int>(width), static_cast<int>(height), std::move(samples));
    return out;
}

Bytes write_pgm(const DepthFrame& frame) {
    Bytes out;
    append(out, "P5\n" + std::to_string(frame.width()) + " " + std::to_string(frame.height()) +
                    "\n2047\n");
    out.reserve(out.size() + 2 * frame.size());
    for (RawDepth s : frame.samples()) {
        out.push_back(static_cast<std::uint8_t>(s >> 8));
        out.push_back(static_cast<std::uint8_t>(s & 0xFF));
    }
    return out;
}

DepthFrame read_raw(std::span<const std::uint8_t> bytes, int width, int height) {
    if (width < 1 || height < 1)
        throw FormatError("raw frame dimensions must be positive", 0);
    const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    if (bytes.size() != 2 * count)
        throw FormatError("raw frame of " + std::to_string(width) + "x" + std::to_string(height) +
                              " needs " + std::to_string(2 * count) + " bytes, got " +
                              std::to_string(bytes.size()),
                          std::min(bytes.size(), 2 * count));
    std::vector<RawDepth> samples(count);
    for (std::size_t i = 0; i < count; ++i)
        samples[i] = static_cast<RawDepth>((bytes[2 * i] | (bytes[2 * i + 1] << 8)) & kRawMax);
    return DepthFrame(width, height, std::move(samples));
}

Bytes write_raw(const DepthFrame& frame) {
    Bytes out;
    out.reserve(2 * frame.size());
    for (RawDepth s : frame.samples()) {
        out.push_back(static_cast<std::uint8_t>(s & 0xFF));
        out.push_back(static_cast<std::uint8_t>(s >> 8));
    }
    return out;
}

std::string write_report(const DetectionReport& report) {
    std::vector<const HandReport*> hands;
    for (const HandReport& h : report.hands)
        hands.push_back(&h);
    std::stable_sort(hands.begin(), hands.end(), [](const HandReport* a, const HandReport* b) {
        return hand_rank(a->id) < hand_rank(b->id);
    });
    std::string s = "{\"frame_index\":" + std::to_string(report.frame_index) + ",\"hands\":[";
    for (std::size_t i = 0; i < hands.size(); ++i) {
        if (i)
            s += ",";
        s += hand_json(*hands[i]);
    }
    s += "]}";
    return s;
}

Bytes write_overlay(const DepthFrame& frame, const std::vector<HandReport>& hands,
                    int raw_valid_max) {
    const int w = frame.width();
    const int h = frame.height();
    std::vector<Rgb> pixels(frame.size());
    for (std::size_t i = 0; i < frame.size(); ++i) {
        const int raw = frame.samples()[i];
        std::uint8_t g = 0;
        if (raw != kSentinel && raw <= raw_valid_max && raw_valid_max > 0)
            g = static_cast<std::uint8_t>(255 - (255 * raw + raw_valid_max / 2) / raw_valid_max);
        pixels[i] = {g, g, g};
    }
    auto paint = [&](int x, int y, Rgb c) {
        if (x >= 0 && y >= 0 && x < w && y < h)
            pixels[static_cast<std::size_t>(y) * w + x] = c;
    };
    for (const HandReport& hand : hands) {
        for (const Fingertip& tip : hand.fingertips.tips)
            for (int dy = -1; dy <= 1; ++dy)
                for (int dx = -1; dx <= 1; ++dx)
                    paint(tip.position.x + dx, tip.position.y + dy, hand.overlay_color);
        const Point c = hand.palm.position;
        for (int d = -3; d <= 3; ++d) {
            paint(c.x + d, c.y, hand.overlay_color);
            paint(c.x, c.y + d, hand.overlay_color);
        }
    }
    Bytes out;
    append(out, "P6\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n");
    out.reserve(out.size() + 3 * pixels.size());
    for (const Rgb& p : pixels) {
        out.push_back(p.r);
        out.push_back(p.g);
        out.push_back(p.b);
    }
    return out;
}

Bytes read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path);
    return Bytes(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

void write_file(const std::string& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
}

void write_file(const std::string& path, const std::string& text) {
    write_file(path, std::span<const std::uint8_t>(
                         reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

}  // namespace handdepth
