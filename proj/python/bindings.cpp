// pybind11 bindings. Frames are uint16 arrays of shape (height, width),
// masks are bool arrays of the same shape.

#include <cstring>
#include <string>
#include <vector>

#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "handdepth/benchmark.hpp"
#include "handdepth/depth_model.hpp"
#include "handdepth/distance_transform.hpp"
#include "handdepth/errors.hpp"
#include "handdepth/frame_io.hpp"
#include "handdepth/morphology.hpp"
#include "handdepth/pipeline.hpp"
#include "handdepth/segmentation.hpp"
#include "handdepth/synth.hpp"

namespace py = pybind11;
using namespace handdepth;

namespace {

using FrameArray = py::array_t<std::uint16_t, py::array::c_style | py::array::forcecast>;
using MaskArray = py::array_t<bool, py::array::c_style | py::array::forcecast>;

DepthFrame to_frame(const FrameArray& a) {
    if (a.ndim() != 2)
        throw std::invalid_argument("frame must be a 2-D array");
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    std::vector<RawDepth> v(a.data(), a.data() + a.size());
    for (RawDepth& x : v)
        x &= kRawMax;
    return DepthFrame(w, h, std::move(v));
}

py::array_t<std::uint16_t> from_frame(const DepthFrame& f) {
    py::array_t<std::uint16_t> out({f.height(), f.width()});
    std::memcpy(out.mutable_data(), f.samples().data(), f.size() * sizeof(std::uint16_t));
    return out;
}

BinaryMask to_mask(const MaskArray& a) {
    if (a.ndim() != 2)
        throw std::invalid_argument("mask must be a 2-D array");
    const int h = static_cast<int>(a.shape(0));
    const int w = static_cast<int>(a.shape(1));
    BinaryMask m(w, h);
    const bool* p = a.data();
    for (int y = 0; y < h; ++y)
        for (int x = 0; x < w; ++x)
            if (p[static_cast<std::size_t>(y) * w + x])
                m.set(x, y);
    return m;
}

py::array_t<bool> from_mask(const BinaryMask& m) {
    py::array_t<bool> out({m.height(), m.width()});
    bool* p = out.mutable_data();
    for (int y = 0; y < m.height(); ++y)
        for (int x = 0; x < m.width(); ++x)
            p[static_cast<std::size_t>(y) * m.width() + x] = m.test(x, y);
    return out;
}

py::bytes to_bytes(const Bytes& b) {
    return py::bytes(reinterpret_cast<const char*>(b.data()), b.size());
}

Bytes from_bytes(const py::bytes& b) {
    const std::string s = b;
    return Bytes(s.begin(), s.end());
}

py::dict truth_dict(const GroundTruth& t) {
    py::dict d;
    d["palm_center"] = py::make_tuple(t.palm_center.x, t.palm_center.y);
    d["palm_inradius"] = t.palm_inradius;
    py::list tips;
    for (const Point& p : t.fingertips)
        tips.append(py::make_tuple(p.x, p.y));
    d["fingertips"] = tips;
    d["finger_widths"] = t.finger_widths;
    d["orientation_deg"] = t.orientation_deg;
    d["support"] = from_mask(t.support);
    return d;
}

PipelineConfig config_or_default(const std::string& json) {
    return json.empty() ? PipelineConfig{} : config_from_json(json);
}

}  // namespace

PYBIND11_MODULE(_handdepth, m) {
    m.doc() = "Hand, palm and fingertip detection on raw depth frames";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DomainError>(m, "DomainError", error.ptr());
    py::register_exception<FormatError>(m, "FormatError", error.ptr());
    py::register_exception<NotFound>(m, "NotFound", error.ptr());
    py::register_exception<EmptyResult>(m, "EmptyResult", error.ptr());
    py::register_exception<DegenerateHand>(m, "DegenerateHand", error.ptr());
    py::register_exception<NoValidDepth>(m, "NoValidDepth", error.ptr());
    py::register_exception<GeometryError>(m, "GeometryError", error.ptr());
    py::register_exception<ConfigError>(m, "ConfigError", error.ptr());

    m.attr("SENTINEL") = static_cast<int>(kSentinel);

    m.def("raw_to_cm", [](int raw) { return raw_to_cm(raw); }, py::arg("raw"));
    m.def("cm_to_raw", [](double cm) { return cm_to_raw(cm); }, py::arg("cm"));
    m.def("valid_domain", [] { return valid_domain(CalibrationParams{}); });

    m.def("read_pgm", [](const py::bytes& b) {
        const PgmDecode d = read_pgm(from_bytes(b));
        return py::make_tuple(from_frame(d.frame), d.clamped);
    }, py::arg("data"), "Decode a 16-bit P5 PGM; returns (frame, clamped_count).");
    m.def("write_pgm", [](const FrameArray& f) { return to_bytes(write_pgm(to_frame(f))); },
          py::arg("frame"));
    m.def("read_raw", [](const py::bytes& b, int width, int height) {
        return from_frame(read_raw(from_bytes(b), width, height));
    }, py::arg("data"), py::arg("width"), py::arg("height"));
    m.def("write_raw", [](const FrameArray& f) { return to_bytes(write_raw(to_frame(f))); },
          py::arg("frame"));

    m.def("distance_transform", [](const MaskArray& mask) {
        const DistanceMap d = distance_transform(to_mask(mask));
        py::array_t<std::int64_t> out({d.height(), d.width()});
        std::memcpy(out.mutable_data(), d.values().data(), d.values().size() * sizeof(std::int64_t));
        return out;
    }, py::arg("mask"), "Squared Euclidean distance to the nearest background pixel.");
    m.def("erode", [](const MaskArray& mask, int r) {
        return from_mask(erode(to_mask(mask), DiskElement(r)));
    }, py::arg("mask"), py::arg("radius"));
    m.def("dilate", [](const MaskArray& mask, int r) {
        return from_mask(dilate(to_mask(mask), DiskElement(r)));
    }, py::arg("mask"), py::arg("radius"));
    m.def("opening", [](const MaskArray& mask, int r) {
        return from_mask(open(to_mask(mask), DiskElement(r)));
    }, py::arg("mask"), py::arg("radius"));
    m.def("connected_components", [](const MaskArray& mask) {
        const BinaryMask mk = to_mask(mask);
        py::array_t<std::int32_t> out({mk.height(), mk.width()});
        std::int32_t* p = out.mutable_data();
        std::fill(p, p + out.size(), 0);
        for (const Blob& b : connected_components(mk))
            for (const Point& q : b.pixels)
                p[static_cast<std::size_t>(q.y) * mk.width() + q.x] = b.label;
        return out;
    }, py::arg("mask"), "8-connected labels, 1..n in raster order of first pixel.");

    py::class_<HandSpec>(m, "HandSpec")
        .def(py::init<>())
        .def_property("palm_center",
                      [](const HandSpec& h) { return py::make_tuple(h.palm_center.x, h.palm_center.y); },
                      [](HandSpec& h, std::pair<double, double> c) { h.palm_center = {c.first, c.second}; })
        .def_readwrite("palm_radius", &HandSpec::palm_radius)
        .def_readwrite("finger_count", &HandSpec::finger_count)
        .def_readwrite("finger_lengths", &HandSpec::finger_lengths)
        .def_readwrite("finger_widths", &HandSpec::finger_widths)
        .def_readwrite("finger_angles_deg", &HandSpec::finger_angles_deg)
        .def_readwrite("orientation_deg", &HandSpec::orientation_deg)
        .def_readwrite("base_depth_cm", &HandSpec::base_depth_cm)
        .def_readwrite("tip_slope", &HandSpec::tip_slope);

    m.def("render_scene", [](const std::vector<HandSpec>& specs, int width, int height,
                             double background_cm, std::uint64_t seed, double dropout) {
        const RenderedScene s = render_scene(specs, width, height, background_cm, seed, dropout);
        py::list truths;
        for (const GroundTruth& t : s.truths)
            truths.append(truth_dict(t));
        return py::make_tuple(from_frame(s.frame), truths);
    }, py::arg("specs"), py::arg("width"), py::arg("height"), py::arg("background_depth_cm"),
       py::arg("seed") = 0, py::arg("dropout_rate") = 0.0,
       "Render up to two hands; returns (frame, [ground truth dict]).");

    m.def("generate_corpus", [](int count, std::uint64_t seed, double dropout_rate) {
        CorpusOptions o;
        o.count = count;
        o.seed = seed;
        o.dropout_rate = dropout_rate;
        return corpus_to_json(generate_corpus(o));
    }, py::arg("count") = 200, py::arg("seed") = 1, py::arg("dropout_rate") = 0.02,
       "Corpus description as JSON text.");
    m.def("render_corpus", [](const std::string& corpus_json) {
        const Corpus c = corpus_from_json(corpus_json);
        py::list frames;
        for (const SceneSpec& s : c.scenes)
            frames.append(from_frame(render(c, s).frame));
        return frames;
    }, py::arg("corpus_json"));
    m.def("run_benchmark", [](const std::string& corpus_json, const std::string& config_json) {
        const Corpus c = corpus_from_json(corpus_json);
        const PipelineConfig cfg = config_or_default(config_json);
        py::gil_scoped_release release;
        return run_benchmark(c, cfg).to_json();
    }, py::arg("corpus_json"), py::arg("config_json") = "", "Metrics as JSON text.");

    m.def("default_config", [] { return config_to_json(PipelineConfig{}); });
    m.def("run_pipeline", [](const std::vector<FrameArray>& arrays, const std::string& config_json) {
        std::vector<DepthFrame> frames;
        for (const FrameArray& a : arrays)
            frames.push_back(to_frame(a));
        const PipelineConfig cfg = config_or_default(config_json);
        std::vector<FrameOutput> out;
        {
            py::gil_scoped_release release;
            out = run_pipeline(frames, cfg);
        }
        py::list result;
        for (const FrameOutput& f : out)
            result.append(py::make_tuple(write_report(f.report), to_bytes(f.overlay), f.warnings));
        return result;
    }, py::arg("frames"), py::arg("config_json") = "",
       "Returns [(report_json, overlay_ppm_bytes, warnings)] in frame order.");
}
