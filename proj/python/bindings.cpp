#include "icc/canvas.hpp"
#include "icc/error.hpp"
#include "icc/gaze.hpp"
#include "icc/image_io.hpp"
#include "icc/metrics.hpp"
#include "icc/pipeline.hpp"

#include <nlohmann/json.hpp>
#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace icc;

namespace {

using ImageArray = py::array_t<std::uint8_t, py::array::c_style | py::array::forcecast>;
using PointList = std::vector<std::array<double, 2>>;

RasterImage to_image(const ImageArray& a) {
    if (a.ndim() != 3 || a.shape(2) != 3) throw InvalidParameter("image must be an H x W x 3 uint8 array");
    const int h = static_cast<int>(a.shape(0)), w = static_cast<int>(a.shape(1));
    RasterImage img(w, h);
    const auto* src = a.data();
    for (std::size_t i = 0; i < img.size(); ++i) img.data()[i] = {src[3 * i], src[3 * i + 1], src[3 * i + 2]};
    return img;
}

BinaryMask to_mask(const ImageArray& a) {
    if (a.ndim() != 2) throw InvalidParameter("mask must be an H x W array");
    BinaryMask m(static_cast<int>(a.shape(1)), static_cast<int>(a.shape(0)));
    const auto* src = a.data();
    for (std::size_t i = 0; i < m.size(); ++i) m.data()[i] = src[i] ? 1 : 0;
    return m;
}

py::array_t<std::uint8_t> from_image(const RasterImage& img) {
    py::array_t<std::uint8_t> a({img.height(), img.width(), 3});
    auto* dst = a.mutable_data();
    for (std::size_t i = 0; i < img.size(); ++i) {
        dst[3 * i] = img.data()[i].r;
        dst[3 * i + 1] = img.data()[i].g;
        dst[3 * i + 2] = img.data()[i].b;
    }
    return a;
}

py::array_t<std::uint8_t> from_mask(const BinaryMask& m) {
    py::array_t<std::uint8_t> a({m.height(), m.width()});
    std::copy(m.data().begin(), m.data().end(), a.mutable_data());
    return a;
}

std::vector<Point2> to_points(const PointList& pts) {
    std::vector<Point2> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back({p[0], p[1]});
    return out;
}

PointList from_points(const std::vector<Point2>& pts) {
    PointList out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back({p.x, p.y});
    return out;
}

py::array_t<double> people_array(const std::vector<PersonPose>& people) {
    py::array_t<double> a({static_cast<py::ssize_t>(people.size()), py::ssize_t{kBodyKeypoints}, py::ssize_t{3}});
    auto* dst = a.mutable_data();
    for (const auto& person : people)
        for (const auto& k : person.keypoints) {
            *dst++ = k.position.x;
            *dst++ = k.position.y;
            *dst++ = k.confidence;
        }
    return a;
}

std::vector<PersonPose> to_people(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 3 || a.shape(1) != kBodyKeypoints || a.shape(2) != 3)
        throw InvalidParameter("people must be an N x 25 x 3 array");
    std::vector<PersonPose> people;
    const auto* src = a.data();
    for (py::ssize_t n = 0; n < a.shape(0); ++n) {
        std::array<double, 3 * kBodyKeypoints> flat{};
        std::copy(src, src + flat.size(), flat.begin());
        src += flat.size();
        people.push_back(PersonPose::from_flat(flat));
    }
    return people;
}

PersonPose to_person(const py::array_t<double, py::array::c_style | py::array::forcecast>& a) {
    if (a.ndim() != 2 || a.shape(0) != kBodyKeypoints || a.shape(1) != 3)
        throw InvalidParameter("person must be a 25 x 3 array");
    std::array<double, 3 * kBodyKeypoints> flat{};
    std::copy(a.data(), a.data() + flat.size(), flat.begin());
    return PersonPose::from_flat(flat);
}

PipelineConfig config_from(const std::string& json_text) {
    if (json_text.empty()) return {};
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("config: ") + e.what());
    }
    return j.get<PipelineConfig>();
}

py::object optional_value(const std::optional<double>& v) { return v ? py::cast(*v) : py::none(); }

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Image composition canvas engine";
    m.attr("__version__") = "0.1.0";

    auto error = py::register_exception<Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<DegenerateGeometry>(m, "DegenerateGeometry", error);
    py::register_exception<InvalidParameter>(m, "InvalidParameter", error);
    py::register_exception<ParseError>(m, "ParseError", error);
    py::register_exception<SchemaError>(m, "SchemaError", error);
    py::register_exception<InpaintUnderconstrained>(m, "InpaintUnderconstrained", error);
    py::register_exception<NoForegroundEvidence>(m, "NoForegroundEvidence", error);
    py::register_exception<IOError>(m, "IOError", error);

    // geometry
    m.def("convex_hull", [](const PointList& pts) { return from_points(convex_hull(to_points(pts)).vertices()); },
          py::arg("points"));
    m.def(
        "clip_convex",
        [](const PointList& a, const PointList& b) -> std::optional<PointList> {
            const auto r = clip_convex(ConvexPolygon(to_points(a)), ConvexPolygon(to_points(b)));
            if (!r) return std::nullopt;
            return from_points(r->vertices());
        },
        py::arg("subject"), py::arg("clip"));
    m.def(
        "area_centroid",
        [](const PointList& poly) {
            const auto ac = area_centroid(ConvexPolygon(to_points(poly)));
            return py::make_tuple(ac.area, py::make_tuple(ac.centroid.x, ac.centroid.y));
        },
        py::arg("polygon"));
    m.def(
        "sector_polygon",
        [](std::array<double, 2> apex, double axis, double half_angle, double radius, double arc_step) {
            return from_points(sector_polygon({apex[0], apex[1]}, {axis}, half_angle, radius, arc_step).vertices());
        },
        py::arg("apex"), py::arg("axis"), py::arg("half_angle"), py::arg("radius"), py::arg("arc_step") = 5.0);
    m.def(
        "hausdorff", [](const PointList& a, const PointList& b) { return hausdorff(to_points(a), to_points(b)); },
        py::arg("a"), py::arg("b"));

    // poses and gaze
    m.def(
        "parse_keypoints", [](const std::string& doc) { return people_array(parse_keypoints(doc)); },
        py::arg("document"), "OpenPose JSON to an N x 25 x 3 array of (x, y, confidence).");
    m.def(
        "pose_line",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& person,
           double min_confidence) -> std::optional<PointList> {
            const auto tri = triangle_corners(to_person(person), min_confidence);
            if (!tri) return std::nullopt;
            const auto line = pose_line(*tri).line;
            return PointList{{line.a.x, line.a.y}, {line.b.x, line.b.y}};
        },
        py::arg("person"), py::arg("min_confidence") = 0.0);
    m.def(
        "gaze_vector",
        [](const py::array_t<double, py::array::c_style | py::array::forcecast>& person, double correction,
           double min_confidence) -> py::object {
            const auto ray = gaze_vector(to_person(person), correction, 0, min_confidence);
            if (!ray) return py::none();
            return py::make_tuple(py::make_tuple(ray->origin.x, ray->origin.y), ray->direction.degrees);
        },
        py::arg("person"), py::arg("correction") = 0.0, py::arg("min_confidence") = 0.0,
        "Neck position and direction in degrees, or None when a joint is missing.");
    m.def(
        "aggregate_slope",
        [](const std::vector<double>& directions) {
            std::vector<GazeRay> rays;
            for (double d : directions) rays.push_back({{0, 0}, {d}, 0});
            return aggregate_slope(rays).degrees;
        },
        py::arg("directions"));
    m.def(
        "intersect_cones",
        [](const std::vector<std::pair<std::array<double, 2>, double>>& rays, double opening, double radius,
           double arc_step, double min_area) {
            std::vector<GazeCone> cones;
            for (std::size_t i = 0; i < rays.size(); ++i) {
                const GazeRay ray{{rays[i].first[0], rays[i].first[1]}, normalize_direction({rays[i].second}),
                                  static_cast<int>(i)};
                cones.push_back(build_cone(ray, opening, radius, arc_step));
            }
            py::list out;
            for (const auto& region : intersect_cones(cones, min_area)) {
                py::dict d;
                d["centroid"] = py::make_tuple(region.centroid.x, region.centroid.y);
                d["area"] = region.area;
                d["pairs"] = region.contributing_pairs;
                py::list polys;
                for (const auto& p : region.polygons) polys.append(from_points(p.vertices()));
                d["polygons"] = polys;
                out.append(d);
            }
            return out;
        },
        py::arg("rays"), py::arg("opening") = 50.0, py::arg("radius") = 1e4, py::arg("arc_step") = 5.0,
        py::arg("min_area") = 0.0, "Action regions for ((x, y), direction) rays.");

    // imaging
    m.def(
        "median_filter", [](const ImageArray& img, int kernel) { return from_image(median_filter(to_image(img), kernel)); },
        py::arg("image"), py::arg("kernel"));
    m.def(
        "bilateral_filter",
        [](const ImageArray& img, int diameter, double sigma_color, double sigma_space) {
            return from_image(bilateral_filter(to_image(img), diameter, sigma_color, sigma_space));
        },
        py::arg("image"), py::arg("diameter") = 9, py::arg("sigma_color") = 75.0, py::arg("sigma_space") = 75.0);
    m.def(
        "inpaint",
        [](const ImageArray& img, const ImageArray& mask, int radius) {
            return from_image(inpaint_fmm(to_image(img), to_mask(mask), radius));
        },
        py::arg("image"), py::arg("mask"), py::arg("radius") = 3);
    m.def(
        "kmeans",
        [](const ImageArray& img, int k, std::uint64_t seed, int max_iters, double tol) {
            const auto r = kmeans_colors(to_image(img), k, seed, max_iters, tol);
            py::array_t<double> palette({static_cast<py::ssize_t>(r.palette.size()), py::ssize_t{3}});
            auto* p = palette.mutable_data();
            for (const auto& c : r.palette) p = std::copy(c.begin(), c.end(), p);
            const auto& lm = r.labels.labels;
            py::array_t<std::int32_t> labels({lm.height(), lm.width()});
            std::copy(lm.data().begin(), lm.data().end(), labels.mutable_data());
            return py::make_tuple(palette, labels, r.inertia_history);
        },
        py::arg("image"), py::arg("k") = 7, py::arg("seed") = 42, py::arg("max_iters") = 50, py::arg("tol") = 0.5,
        "Returns (palette, labels, inertia_history).");

    // pipeline and evaluation
    m.def(
        "run_pipeline",
        [](const ImageArray& img, const py::array_t<double, py::array::c_style | py::array::forcecast>& people,
           const std::string& config_json, const std::string& image_id) {
            const auto cfg = config_from(config_json);
            const auto image = to_image(img);
            const auto poses = to_people(people);
            PipelineOutput out;
            {
                py::gil_scoped_release release;
                out = run_pipeline(image, poses, cfg, image_id);
            }
            py::dict d;
            d["result"] = serialize_result(out.result);
            d["colored_icc"] = from_image(out.colored_icc);
            d["binary_icc"] = from_image(out.binary_icc);
            d["colored_canvas"] = from_image(out.colored_canvas);
            d["binary_canvas"] = from_mask(out.binary_canvas);
            d["inpaint_mask"] = out.inpaint_mask ? py::object(from_mask(*out.inpaint_mask)) : py::none();
            return d;
        },
        py::arg("image"), py::arg("people"), py::arg("config") = "", py::arg("image_id") = "image");
    m.def(
        "evaluate",
        [](const std::string& annotations, const std::string& result, double spacing) {
            const auto report = evaluate(parse_annotations(annotations), parse_result(result), spacing);
            py::dict d;
            d["sd_ar_expert"] = optional_value(report.sd_ar_expert);
            d["sd_ar_nonexpert"] = optional_value(report.sd_ar_nonexpert);
            d["l2_e_icc"] = optional_value(report.l2_e_icc);
            d["l2_ne_icc"] = optional_value(report.l2_ne_icc);
            d["l2_e_ne"] = optional_value(report.l2_e_ne);
            d["hd_all_icc"] = optional_value(report.hd_all_icc);
            d["ad_all_icc"] = optional_value(report.ad_all_icc);
            return d;
        },
        py::arg("annotations"), py::arg("result"), py::arg("spacing") = 1.0);
    m.def(
        "read_image", [](const std::string& path) { return from_image(read_image(path)); }, py::arg("path"));
}
