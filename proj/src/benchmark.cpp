#include "handdepth/benchmark.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include <json.hpp>

namespace handdepth {
namespace {

double dist(Point a, Point b) {
    return std::hypot(static_cast<double>(a.x - b.x), static_cast<double>(a.y - b.y));
}

double ratio(std::size_t num, std::size_t den) {
    return den == 0 ? 0.0 : static_cast<double>(num) / static_cast<double>(den);
}

std::vector<BenchmarkMetrics::Bin> empty_bins() {
    std::vector<BenchmarkMetrics::Bin> bins(8);
    for (std::size_t i = 0; i < bins.size(); ++i) {
        bins[i].start_deg = 45.0 * static_cast<double>(i);
        bins[i].end_deg = 45.0 * static_cast<double>(i + 1);
    }
    return bins;
}

// Least-total-distance matching of min(|a|, |b|) pairs; sizes are <= 5 so
// exhaustive search over injections is cheap. Returns pairs (ia, ib).
std::vector<std::pair<std::size_t, std::size_t>> match_points(const std::vector<Point>& a,
                                                              const std::vector<Point>& b) {
    const bool flip = a.size() > b.size();
    const std::vector<Point>& small = flip ? b : a;
    const std::vector<Point>& large = flip ? a : b;
    std::vector<std::size_t> perm(large.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::vector<std::size_t> best;
    double best_cost = std::numeric_limits<double>::infinity();
    do {
        double cost = 0.0;
        for (std::size_t i = 0; i < small.size(); ++i)
            cost += dist(small[i], large[perm[i]]);
        if (cost < best_cost) {
            best_cost = cost;
            best.assign(perm.begin(), perm.begin() + static_cast<std::ptrdiff_t>(small.size()));
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t i = 0; i < best.size(); ++i)
        pairs.push_back(flip ? std::pair{best[i], i} : std::pair{i, best[i]});
    return pairs;
}

}  // namespace

double BenchmarkMetrics::count_recall() const { return ratio(matched_tips, true_tips); }
double BenchmarkMetrics::count_precision() const { return ratio(matched_tips, detected_tips); }
double BenchmarkMetrics::tip_within_fraction() const {
    return ratio(tips_within_tolerance, matched_tips);
}
double BenchmarkMetrics::palm_within_fraction() const {
    return ratio(palms_within_tolerance, true_hands);
}

void score_scene(const std::vector<GroundTruth>& truths, const DetectionReport& report,
                 BenchmarkMetrics& m) {
    if (m.per_orientation.empty())
        m.per_orientation = empty_bins();
    ++m.scenes;
    m.true_hands += truths.size();
    m.detected_hands += report.hands.size();
    for (const HandReport& h : report.hands)
        m.detected_tips += h.fingertips.tips.size();
    for (const GroundTruth& t : truths)
        m.true_tips += t.fingertips.size();

    std::vector<Point> true_centers, found_centers;
    for (const GroundTruth& t : truths)
        true_centers.push_back(t.palm_center);
    for (const HandReport& h : report.hands)
        found_centers.push_back(h.palm.position);

    std::vector<bool> truth_matched(truths.size(), false);
    for (auto [ti, hi] : match_points(true_centers, found_centers)) {
        const GroundTruth& truth = truths[ti];
        const HandReport& hand = report.hands[hi];
        truth_matched[ti] = true;
        ++m.matched_hands;

        double o = std::fmod(truth.orientation_deg, 360.0);
        if (o < 0.0)
            o += 360.0;
        BenchmarkMetrics::Bin& bin = m.per_orientation[std::min<std::size_t>(7, static_cast<std::size_t>(o / 45.0))];
        ++bin.hands;
        bin.true_tips += truth.fingertips.size();
        bin.detected_tips += hand.fingertips.tips.size();

        const double palm_ratio = dist(truth.palm_center, hand.palm.position) / truth.palm_inradius;
        ++m.palms_evaluated;
        m.palm_error_ratio_sum += palm_ratio;
        m.palm_error_ratio_max = std::max(m.palm_error_ratio_max, palm_ratio);
        if (palm_ratio <= 0.25) {
            ++m.palms_within_tolerance;
            ++bin.palms_within;
        }

        std::vector<Point> tips;
        for (const Fingertip& f : hand.fingertips.tips)
            tips.push_back(f.position);
        for (auto [gi, di] : match_points(truth.fingertips, tips)) {
            const double err = dist(truth.fingertips[gi], tips[di]);
            const double tol = std::max(2.0, truth.finger_widths[gi] / 2.0);
            ++m.matched_tips;
            ++bin.matched_tips;
            m.tip_error_sum_px += err;
            m.tip_error_max_px = std::max(m.tip_error_max_px, err);
            if (err <= tol)
                ++m.tips_within_tolerance;
        }
    }
    for (std::size_t ti = 0; ti < truths.size(); ++ti) {
        if (truth_matched[ti])
            continue;
        double o = std::fmod(truths[ti].orientation_deg, 360.0);
        if (o < 0.0)
            o += 360.0;
        BenchmarkMetrics::Bin& bin = m.per_orientation[std::min<std::size_t>(7, static_cast<std::size_t>(o / 45.0))];
        ++bin.hands;
        bin.true_tips += truths[ti].fingertips.size();
    }
}

BenchmarkMetrics run_benchmark(const Corpus& corpus, const PipelineConfig& config) {
    BenchmarkMetrics m;
    m.per_orientation = empty_bins();
    for (const SceneSpec& scene : corpus.scenes) {
        const RenderedScene rendered = render(corpus, scene, config.calibration);
        const std::vector<FrameOutput> out =
            run_pipeline(std::span<const DepthFrame>(&rendered.frame, 1), config);
        score_scene(rendered.truths, out.front().report, m);
    }
    return m;
}

std::string BenchmarkMetrics::to_json() const {
    using nlohmann::ordered_json;
    auto bins = per_orientation.empty() ? empty_bins() : per_orientation;
    ordered_json per = ordered_json::array();
    for (const Bin& b : bins)
        per.push_back({{"start_deg", b.start_deg},
                       {"end_deg", b.end_deg},
                       {"hands", b.hands},
                       {"true_tips", b.true_tips},
                       {"detected_tips", b.detected_tips},
                       {"matched_tips", b.matched_tips},
                       {"count_recall", ratio(b.matched_tips, b.true_tips)},
                       {"count_precision", ratio(b.matched_tips, b.detected_tips)},
                       {"palm_within_fraction", ratio(b.palms_within, b.hands)}});
    ordered_json j;
    j["scenes"] = scenes;
    j["hands"] = {{"true", true_hands}, {"detected", detected_hands}, {"matched", matched_hands}};
    j["fingertips"] = {{"true", true_tips},
                       {"detected", detected_tips},
                       {"matched", matched_tips},
                       {"count_recall", count_recall()},
                       {"count_precision", count_precision()},
                       {"within_tolerance", tips_within_tolerance},
                       {"within_tolerance_fraction", tip_within_fraction()},
                       {"mean_error_px", matched_tips ? tip_error_sum_px / static_cast<double>(matched_tips) : 0.0},
                       {"max_error_px", tip_error_max_px}};
    j["palm_center"] = {{"evaluated", palms_evaluated},
                        {"within_tolerance", palms_within_tolerance},
                        {"within_fraction", palm_within_fraction()},
                        {"mean_error_ratio", palms_evaluated ? palm_error_ratio_sum / static_cast<double>(palms_evaluated) : 0.0},
                        {"max_error_ratio", palm_error_ratio_max}};
    j["per_orientation"] = per;
    return j.dump(2) + "\n";
}

}  // namespace handdepth
