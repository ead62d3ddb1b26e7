#include "handdepth/distance_transform.hpp"

#include <algorithm>
#include <vector>

namespace handdepth {

DistanceMap::DistanceMap(int width, int height, std::int64_t fill)
    : width_(width), height_(height),
      values_(static_cast<std::size_t>(width) * static_cast<std::size_t>(height), fill) {}

namespace {

constexpr std::int64_t kInf = DistanceMap::kInfinite;

// Lower envelope of the parabolas y = f[q] + (x - q)^2 over finite f[q],
// sampled at every integer x. `f` and `out` may not alias.
void envelope_1d(const std::vector<std::int64_t>& f, std::vector<std::int64_t>& out,
                 std::vector<int>& hull) {
    const int n = static_cast<int>(f.size());
    hull.clear();
    auto key = [&](int q) { return f[q] + static_cast<std::int64_t>(q) * q; };
    // Parabola q overtakes v (v < q) at x = (key(q) - key(v)) / (2 (q - v)).
    // Pop the hull top while its own interval would be empty.
    for (int q = 0; q < n; ++q) {
        if (f[q] == kInf)
            continue;
        while (hull.size() >= 2) {
            const int v = hull[hull.size() - 1];
            const int u = hull[hull.size() - 2];
            const std::int64_t num_qv = key(q) - key(v);
            const std::int64_t den_qv = 2 * static_cast<std::int64_t>(q - v);
            const std::int64_t num_vu = key(v) - key(u);
            const std::int64_t den_vu = 2 * static_cast<std::int64_t>(v - u);
            if (num_qv * den_vu <= num_vu * den_qv)
                hull.pop_back();
            else
                break;
        }
        hull.push_back(q);
    }
    if (hull.empty()) {
        std::fill(out.begin(), out.end(), kInf);
        return;
    }
    std::size_t j = 0;
    for (int x = 0; x < n; ++x) {
        auto value = [&](std::size_t k) {
            const std::int64_t d = x - hull[k];
            return f[hull[k]] + d * d;
        };
        while (j + 1 < hull.size() && value(j + 1) <= value(j))
            ++j;
        out[x] = value(j);
    }
}

}  // namespace

DistanceMap squared_distance_to(const BinaryMask& sources) {
    const int w = sources.width();
    const int h = sources.height();
    DistanceMap result(w, h, kInf);
    if (w == 0 || h == 0)
        return result;

    std::vector<int> hull;
    std::vector<std::int64_t> f(h), g(h);
    for (int x = 0; x < w; ++x) {
        for (int y = 0; y < h; ++y)
            f[y] = sources.test(x, y) ? 0 : kInf;
        envelope_1d(f, g, hull);
        for (int y = 0; y < h; ++y)
            result.set(x, y, g[y]);
    }

    f.resize(w);
    g.resize(w);
    for (int y = 0; y < h; ++y) {
        for (int x = 0; x < w; ++x)
            f[x] = result.at(x, y);
        envelope_1d(f, g, hull);
        for (int x = 0; x < w; ++x)
            result.set(x, y, g[x]);
    }
    return result;
}

DistanceMap distance_transform(const BinaryMask& mask) {
    const DistanceMap padded = squared_distance_to(complement(pad(mask, 1)));
    DistanceMap result(mask.width(), mask.height());
    for (int y = 0; y < mask.height(); ++y)
        for (int x = 0; x < mask.width(); ++x)
            result.set(x, y, padded.at(x + 1, y + 1));
    return result;
}

}  // namespace handdepth
